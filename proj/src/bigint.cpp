#include "hdpart/bigint.hpp"

#include "hdpart/errors.hpp"

namespace hdp {

namespace {

std::string join_missing(const std::string& table, const std::vector<std::string>& missing) {
  std::string s = "missing " + table + " entries:";
  for (std::size_t i = 0; i < missing.size() && i < 12; ++i) s += " " + missing[i];
  if (missing.size() > 12) s += " ... (" + std::to_string(missing.size()) + " total)";
  return s;
}

}  // namespace

MissingDataError::MissingDataError(std::string table, std::vector<std::string> missing)
    : Error(join_missing(table, missing)), table_(std::move(table)), missing_(std::move(missing)) {}

Integer binomial(const Integer& n, long k) {
  if (k < 0) return 0;
  // GMP follows the product rule for negative n as well.
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

Integer binomial(long n, long k) { return binomial(Integer(n), k); }

Rational binomial(const Rational& r, long k) {
  if (k < 0) return 0;
  Rational acc = 1;
  for (long i = 0; i < k; ++i) acc *= (r - i);
  Integer kf = factorial(k);
  acc /= kf;
  acc.canonicalize();
  return acc;
}

Integer factorial(long n) {
  if (n < 0) throw DomainError("factorial of negative number " + std::to_string(n));
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer double_factorial(long n) {
  if (n < -1) throw DomainError("double factorial below -1: " + std::to_string(n));
  if (n <= 0) return 1;
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer require_integer(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw IntegrityError(std::string(what) + " is not integral: " + to_string(q));
  return q.get_num();
}

}  // namespace hdp
