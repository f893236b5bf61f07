#pragma once

// Exact univariate arithmetic over Q: polynomials, rational functions and
// truncated power series in t.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdpart/bigint.hpp"

namespace hdp {

class PolynomialQ {
 public:
  PolynomialQ() = default;
  explicit PolynomialQ(std::vector<Rational> coeffs);
  PolynomialQ(std::initializer_list<Rational> coeffs) : PolynomialQ(std::vector<Rational>(coeffs)) {}
  static PolynomialQ constant(const Rational& c) { return PolynomialQ({c}); }
  static PolynomialQ monomial(const Rational& c, int degree);
  // 1 - c t^j
  static PolynomialQ one_minus(int j, const Rational& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](int i) const;  // zero outside the support
  int valuation() const;             // lowest nonzero degree, -1 for zero

  Rational eval(const Rational& t) const;

  PolynomialQ& operator+=(const PolynomialQ& o);
  PolynomialQ& operator-=(const PolynomialQ& o);
  PolynomialQ& operator*=(const Rational& s);
  friend PolynomialQ operator+(PolynomialQ a, const PolynomialQ& b) { return a += b; }
  friend PolynomialQ operator-(PolynomialQ a, const PolynomialQ& b) { return a -= b; }
  friend PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b);
  friend PolynomialQ operator*(PolynomialQ a, const Rational& s) { return a *= s; }
  PolynomialQ operator-() const;
  PolynomialQ pow(unsigned e) const;

  bool operator==(const PolynomialQ& o) const { return c_ == o.c_; }

 private:
  void normalize();
  std::vector<Rational> c_;
};

struct PolyDivision {
  PolynomialQ quotient;
  PolynomialQ remainder;
};
PolyDivision divmod(const PolynomialQ& a, const PolynomialQ& b);
PolynomialQ poly_gcd(PolynomialQ a, PolynomialQ b);  // monic

class RationalFunctionQ {
 public:
  RationalFunctionQ() : num_(), den_(PolynomialQ::constant(1)) {}
  RationalFunctionQ(PolynomialQ num, PolynomialQ den);  // den(0) != 0
  explicit RationalFunctionQ(PolynomialQ num) : num_(std::move(num)), den_(PolynomialQ::constant(1)) {}

  const PolynomialQ& num() const { return num_; }
  const PolynomialQ& den() const { return den_; }

  // Common factors removed, den(0) = 1.
  RationalFunctionQ reduced() const;

  friend RationalFunctionQ operator+(const RationalFunctionQ& a, const RationalFunctionQ& b);
  friend RationalFunctionQ operator-(const RationalFunctionQ& a, const RationalFunctionQ& b);
  friend RationalFunctionQ operator*(const RationalFunctionQ& a, const RationalFunctionQ& b);
  friend RationalFunctionQ operator/(const RationalFunctionQ& a, const RationalFunctionQ& b);
  RationalFunctionQ pow(unsigned e) const;

  // Cross-multiplication.
  bool operator==(const RationalFunctionQ& o) const;

 private:
  PolynomialQ num_;
  PolynomialQ den_;
};

class PowerSeriesQ {
 public:
  PowerSeriesQ() = default;
  // coeffs.size() must be order + 1; missing entries are zero-filled.
  PowerSeriesQ(std::vector<Rational> coeffs, int order);
  static PowerSeriesQ zero(int order) { return PowerSeriesQ({}, order); }
  static PowerSeriesQ one(int order) { return PowerSeriesQ({1}, order); }

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](int i) const;  // throws beyond the order
  Rational& at(int i);

  PowerSeriesQ truncated(int order) const;

  friend PowerSeriesQ operator+(const PowerSeriesQ& a, const PowerSeriesQ& b);
  friend PowerSeriesQ operator-(const PowerSeriesQ& a, const PowerSeriesQ& b);
  friend PowerSeriesQ operator*(const PowerSeriesQ& a, const PowerSeriesQ& b);
  friend PowerSeriesQ operator*(const PowerSeriesQ& a, const Rational& s);
  PowerSeriesQ shifted(int k) const;  // times t^k, same order
  PowerSeriesQ inverse() const;       // needs a nonzero constant term

  bool operator==(const PowerSeriesQ& o) const { return order_ == o.order_ && c_ == o.c_; }

  std::vector<Integer> integer_coeffs() const;  // throws IntegrityError if some coefficient is fractional

 private:
  std::vector<Rational> c_;
  int order_ = -1;
};

PowerSeriesQ series_of(const PolynomialQ& p, int order);
PowerSeriesQ series_of(const RationalFunctionQ& r, int order);

PowerSeriesQ borel(const PowerSeriesQ& s);
PowerSeriesQ inverse_borel(const PowerSeriesQ& s);

// (1 - 2t)^exponent with a half-integer exponent (denominator exactly 2).
struct HalfIntegerPower {
  Rational exponent;
  explicit HalfIntegerPower(Rational e);
};

// (1 + c t^j)^r by the generalized binomial series.
PowerSeriesQ binomial_series(const Rational& r, const Rational& c, int j, int order);

PowerSeriesQ expand_half_power(const PolynomialQ& p, const HalfIntegerPower& h, int order);

struct FitResult {
  std::optional<PolynomialQ> numerator;
  int offending_index = -1;  // first index above the bound with a nonzero coefficient
  bool ok() const { return numerator.has_value(); }
};

inline constexpr int kFitSlack = 3;

// Throws DomainError if the series is too short to leave kFitSlack
// verification coefficients.
FitResult fit_numerator(const PowerSeriesQ& s, const PolynomialQ& den, int deg_bound);

// prod_{m=1..M} (1 - t^m)^(-omega_m), omega[0] holding omega_1.
PowerSeriesQ euler_product(const std::vector<Rational>& omega, int order);
// The exponents omega_1..omega_order of a series with constant term 1.
std::vector<Rational> inverse_euler(const PowerSeriesQ& s);

PolynomialQ q_binomial(int a, int b);

// exp(g) for g with zero constant term.
PowerSeriesQ exp_series(const PowerSeriesQ& g);

// Text form: "c0 + c1*t + c2*t^2", rationals as p/q.
std::string render(const PolynomialQ& p);
std::string render(const RationalFunctionQ& r);
std::string render(const PowerSeriesQ& s);  // coefficient list "(a, b, c)"
// Reduced form with t^v pulled out of the numerator and the denominator
// written as a product of (1 - t^j) factors when it has that shape.
std::string render_factored(const RationalFunctionQ& r);

// Accepts sums, products, quotients and integer powers of rationals, t and
// parenthesized subexpressions.
RationalFunctionQ parse_rational_function(std::string_view text);
PolynomialQ parse_polynomial(std::string_view text);

}  // namespace hdp
