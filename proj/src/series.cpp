#include "hdpart/series.hpp"

#include <algorithm>

#include "hdpart/errors.hpp"

namespace hdp {

// ---- PolynomialQ

PolynomialQ::PolynomialQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& q : c_) q.canonicalize();
  normalize();
}

PolynomialQ PolynomialQ::monomial(const Rational& c, int degree) {
  if (degree < 0) throw DomainError("negative monomial degree");
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return PolynomialQ(std::move(v));
}

PolynomialQ PolynomialQ::one_minus(int j, const Rational& c) {
  if (j <= 0) throw DomainError("1 - c t^j needs j > 0");
  std::vector<Rational> v(static_cast<std::size_t>(j) + 1);
  v[0] = 1;
  v.back() = -c;
  return PolynomialQ(std::move(v));
}

void PolynomialQ::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational PolynomialQ::operator[](int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

int PolynomialQ::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

Rational PolynomialQ::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

PolynomialQ& PolynomialQ::operator+=(const PolynomialQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

PolynomialQ& PolynomialQ::operator-=(const PolynomialQ& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

PolynomialQ& PolynomialQ::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& q : c_) q *= s;
  return *this;
}

PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return PolynomialQ(std::move(v));
}

PolynomialQ PolynomialQ::operator-() const {
  PolynomialQ r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

PolynomialQ PolynomialQ::pow(unsigned e) const {
  PolynomialQ result = constant(1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

PolyDivision divmod(const PolynomialQ& a, const PolynomialQ& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  const Rational lead = b.coeffs().back();
  if (a.degree() < db) return {PolynomialQ{}, a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db) + 1);
  for (int i = a.degree(); i >= db; --i) {
    const Rational f = r[static_cast<std::size_t>(i)] / lead;
    q[static_cast<std::size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {PolynomialQ(std::move(q)), PolynomialQ(std::move(r))};
}

PolynomialQ poly_gcd(PolynomialQ a, PolynomialQ b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.coeffs().back());
}

// ---- RationalFunctionQ

RationalFunctionQ::RationalFunctionQ(PolynomialQ num, PolynomialQ den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_[0] == 0) throw DomainError("denominator vanishes at t = 0");
}

RationalFunctionQ RationalFunctionQ::reduced() const {
  if (num_.is_zero()) return RationalFunctionQ();
  const auto g = poly_gcd(num_, den_);
  auto n = divmod(num_, g).quotient;
  auto d = divmod(den_, g).quotient;
  const Rational s = Rational(1) / d[0];
  return RationalFunctionQ(n * s, d * s);
}

RationalFunctionQ operator+(const RationalFunctionQ& a, const RationalFunctionQ& b) {
  if (a.den_ == b.den_) return RationalFunctionQ(a.num_ + b.num_, a.den_);
  return RationalFunctionQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunctionQ operator-(const RationalFunctionQ& a, const RationalFunctionQ& b) {
  if (a.den_ == b.den_) return RationalFunctionQ(a.num_ - b.num_, a.den_);
  return RationalFunctionQ(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunctionQ operator*(const RationalFunctionQ& a, const RationalFunctionQ& b) {
  return RationalFunctionQ(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunctionQ operator/(const RationalFunctionQ& a, const RationalFunctionQ& b) {
  if (b.num_.is_zero()) throw DomainError("division by the zero rational function");
  // Move powers of t out of b's numerator first so the new denominator
  // stays invertible at 0.
  const int v = b.num_.valuation();
  PolynomialQ bn = b.num_;
  PolynomialQ an = a.num_;
  if (v > 0) {
    const int va = an.is_zero() ? v : an.valuation();
    if (va < v) throw DomainError("quotient has a pole at t = 0");
    std::vector<Rational> sa(an.coeffs().begin() + std::min<std::ptrdiff_t>(v, an.degree() + 1), an.coeffs().end());
    std::vector<Rational> sb(bn.coeffs().begin() + v, bn.coeffs().end());
    an = PolynomialQ(std::move(sa));
    bn = PolynomialQ(std::move(sb));
  }
  return RationalFunctionQ(an * b.den_, a.den_ * bn);
}

RationalFunctionQ RationalFunctionQ::pow(unsigned e) const { return RationalFunctionQ(num_.pow(e), den_.pow(e)); }

bool RationalFunctionQ::operator==(const RationalFunctionQ& o) const { return num_ * o.den_ == o.num_ * den_; }

// ---- PowerSeriesQ

PowerSeriesQ::PowerSeriesQ(std::vector<Rational> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
  if (order < 0) throw DomainError("series order must be nonnegative");
  if (static_cast<int>(c_.size()) > order + 1) throw DomainError("more coefficients than the stated order");
  c_.resize(static_cast<std::size_t>(order) + 1);
  for (auto& q : c_) q.canonicalize();
}

const Rational& PowerSeriesQ::operator[](int i) const {
  if (i < 0 || i > order_) throw DomainError("coefficient beyond the truncation order");
  return c_[static_cast<std::size_t>(i)];
}

Rational& PowerSeriesQ::at(int i) {
  if (i < 0 || i > order_) throw DomainError("coefficient beyond the truncation order");
  return c_[static_cast<std::size_t>(i)];
}

PowerSeriesQ PowerSeriesQ::truncated(int order) const {
  if (order > order_) throw DomainError("cannot extend a truncated series");
  return PowerSeriesQ(std::vector<Rational>(c_.begin(), c_.begin() + order + 1), order);
}

PowerSeriesQ operator+(const PowerSeriesQ& a, const PowerSeriesQ& b) {
  const int n = std::min(a.order_, b.order_);
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = a[i] + b[i];
  return PowerSeriesQ(std::move(v), n);
}

PowerSeriesQ operator-(const PowerSeriesQ& a, const PowerSeriesQ& b) {
  const int n = std::min(a.order_, b.order_);
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = a[i] - b[i];
  return PowerSeriesQ(std::move(v), n);
}

PowerSeriesQ operator*(const PowerSeriesQ& a, const PowerSeriesQ& b) {
  const int n = std::min(a.order_, b.order_);
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) v[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  }
  return PowerSeriesQ(std::move(v), n);
}

PowerSeriesQ operator*(const PowerSeriesQ& a, const Rational& s) {
  auto v = a.c_;
  for (auto& q : v) q *= s;
  return PowerSeriesQ(std::move(v), a.order_);
}

PowerSeriesQ PowerSeriesQ::shifted(int k) const {
  if (k < 0) throw DomainError("negative shift");
  std::vector<Rational> v(static_cast<std::size_t>(order_) + 1);
  for (int i = 0; i + k <= order_; ++i) v[static_cast<std::size_t>(i + k)] = c_[static_cast<std::size_t>(i)];
  return PowerSeriesQ(std::move(v), order_);
}

PowerSeriesQ PowerSeriesQ::inverse() const {
  if (c_.empty() || c_[0] == 0) throw DomainError("series has no inverse: zero constant term");
  std::vector<Rational> v(c_.size());
  const Rational inv0 = Rational(1) / c_[0];
  v[0] = inv0;
  for (int n = 1; n <= order_; ++n) {
    Rational acc = 0;
    for (int i = 1; i <= n; ++i) acc += c_[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(n - i)];
    v[static_cast<std::size_t>(n)] = -acc * inv0;
  }
  return PowerSeriesQ(std::move(v), order_);
}

std::vector<Integer> PowerSeriesQ::integer_coeffs() const {
  std::vector<Integer> out;
  out.reserve(c_.size());
  for (const auto& q : c_) out.push_back(require_integer(q, "series coefficient"));
  return out;
}

PowerSeriesQ series_of(const PolynomialQ& p, int order) {
  std::vector<Rational> v(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= std::min(order, p.degree()); ++i) v[static_cast<std::size_t>(i)] = p[i];
  return PowerSeriesQ(std::move(v), order);
}

PowerSeriesQ series_of(const RationalFunctionQ& r, int order) {
  const auto& den = r.den();
  if (den[0] == 0) throw DomainError("denominator vanishes at t = 0");
  // Long division in ascending powers.
  std::vector<Rational> v(static_cast<std::size_t>(order) + 1);
  const Rational inv0 = Rational(1) / den[0];
  const int dd = den.degree();
  for (int n = 0; n <= order; ++n) {
    Rational acc = r.num()[n];
    for (int i = 1; i <= std::min(n, dd); ++i) acc -= den[i] * v[static_cast<std::size_t>(n - i)];
    v[static_cast<std::size_t>(n)] = acc * inv0;
  }
  return PowerSeriesQ(std::move(v), order);
}

PowerSeriesQ borel(const PowerSeriesQ& s) {
  std::vector<Rational> v(s.coeffs());
  Integer f = 1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) f *= static_cast<unsigned long>(k);
    v[k] /= Rational(f);
  }
  return PowerSeriesQ(std::move(v), s.order());
}

PowerSeriesQ inverse_borel(const PowerSeriesQ& s) {
  std::vector<Rational> v(s.coeffs());
  Integer f = 1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) f *= static_cast<unsigned long>(k);
    v[k] *= Rational(f);
  }
  return PowerSeriesQ(std::move(v), s.order());
}

HalfIntegerPower::HalfIntegerPower(Rational e) : exponent(std::move(e)) {
  exponent.canonicalize();
  if (exponent.get_den() != 2) throw DomainError("exponent of (1 - 2t) must be a half-integer");
}

PowerSeriesQ binomial_series(const Rational& r, const Rational& c, int j, int order) {
  if (j <= 0) throw DomainError("binomial series needs a positive step");
  std::vector<Rational> v(static_cast<std::size_t>(order) + 1);
  Rational term = 1;  // C(r, i) c^i
  for (int i = 0; i * j <= order; ++i) {
    if (i > 0) term = term * (r - (i - 1)) / i * c;
    v[static_cast<std::size_t>(i * j)] = term;
  }
  return PowerSeriesQ(std::move(v), order);
}

PowerSeriesQ expand_half_power(const PolynomialQ& p, const HalfIntegerPower& h, int order) {
  return series_of(p, order) * binomial_series(h.exponent, -2, 1, order);
}

FitResult fit_numerator(const PowerSeriesQ& s, const PolynomialQ& den, int deg_bound) {
  if (deg_bound < 0) throw DomainError("negative numerator degree bound");
  if (s.order() < den.degree() + deg_bound + kFitSlack)
    throw DomainError("series too short to verify a numerator fit");
  const auto prod = s * series_of(den, s.order());
  FitResult out;
  for (int i = deg_bound + 1; i <= prod.order(); ++i) {
    if (prod[i] != 0) {
      out.offending_index = i;
      return out;
    }
  }
  out.numerator = PolynomialQ(std::vector<Rational>(prod.coeffs().begin(), prod.coeffs().begin() + deg_bound + 1));
  return out;
}

PowerSeriesQ euler_product(const std::vector<Rational>& omega, int order) {
  // log F = sum_m omega_m sum_k t^{mk}/k, so n f_n = sum_{i=1..n} sigma_i f_{n-i}
  // with sigma_i = sum_{m | i} m omega_m.
  std::vector<Rational> sigma(static_cast<std::size_t>(order) + 1);
  for (int m = 1; m <= order && m <= static_cast<int>(omega.size()); ++m) {
    const Rational w = omega[static_cast<std::size_t>(m - 1)] * m;
    if (w == 0) continue;
    for (int i = m; i <= order; i += m) sigma[static_cast<std::size_t>(i)] += w;
  }
  std::vector<Rational> f(static_cast<std::size_t>(order) + 1);
  f[0] = 1;
  for (int n = 1; n <= order; ++n) {
    Rational acc = 0;
    for (int i = 1; i <= n; ++i) acc += sigma[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(n - i)];
    f[static_cast<std::size_t>(n)] = acc / n;
  }
  return PowerSeriesQ(std::move(f), order);
}

std::vector<Rational> inverse_euler(const PowerSeriesQ& s) {
  if (s[0] != 1) throw DomainError("inverse Euler transform needs constant term 1");
  const int N = s.order();
  PowerSeriesQ cur = s;
  std::vector<Rational> omega(static_cast<std::size_t>(N));
  for (int m = 1; m <= N; ++m) {
    // cur = 1 + w t^m + ...; multiply by (1 - t^m)^w to clear degree m.
    const Rational w = cur[m];
    omega[static_cast<std::size_t>(m - 1)] = w;
    if (w != 0) cur = cur * binomial_series(w, -1, m, N);
  }
  return omega;
}

PolynomialQ q_binomial(int a, int b) {
  if (b < 0 || a < 0 || b > a) return {};
  // row[j] = [i, j]_q, built by q-Pascal: [i,j] = [i-1,j-1] + q^j [i-1,j].
  std::vector<PolynomialQ> row(static_cast<std::size_t>(b) + 1);
  row[0] = PolynomialQ::constant(1);
  for (int i = 1; i <= a; ++i) {
    for (int j = std::min(i, b); j >= 1; --j) {
      PolynomialQ shifted;
      const auto& prev = row[static_cast<std::size_t>(j)];
      if (!prev.is_zero()) {
        std::vector<Rational> v(static_cast<std::size_t>(j), Rational(0));
        v.insert(v.end(), prev.coeffs().begin(), prev.coeffs().end());
        shifted = PolynomialQ(std::move(v));
      }
      row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + shifted;
    }
  }
  return row[static_cast<std::size_t>(b)];
}

PowerSeriesQ exp_series(const PowerSeriesQ& g) {
  if (g[0] != 0) throw DomainError("exp needs a series without constant term");
  // f' = g' f, so n f_n = sum_{k=1..n} k g_k f_{n-k}.
  const int N = g.order();
  std::vector<Rational> f(static_cast<std::size_t>(N) + 1);
  f[0] = 1;
  for (int n = 1; n <= N; ++n) {
    Rational acc = 0;
    for (int k = 1; k <= n; ++k) acc += g[k] * k * f[static_cast<std::size_t>(n - k)];
    f[static_cast<std::size_t>(n)] = acc / n;
  }
  return PowerSeriesQ(std::move(f), N);
}

}  // namespace hdp
