#pragma once

#include <gmpxx.h>

#include <string>

namespace hdp {

using Integer = mpz_class;
using Rational = mpq_class;

// C(n, k) = n (n-1) ... (n-k+1) / k! for any integer n; zero for k < 0.
Integer binomial(const Integer& n, long k);
Integer binomial(long n, long k);
Rational binomial(const Rational& r, long k);

Integer factorial(long n);

// (-1)!! = 0!! = 1. Throws DomainError below -1.
Integer double_factorial(long n);

Integer ipow(const Integer& base, unsigned long e);

inline std::string to_string(const Integer& z) { return z.get_str(); }
std::string to_string(const Rational& q);

// Throws IntegrityError if q is not an integer.
Integer require_integer(const Rational& q, const char* what);

}  // namespace hdp
