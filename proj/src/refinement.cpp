#include "hdpart/refinement.hpp"

#include <mutex>

#include "hdpart/errors.hpp"

namespace hdp {

namespace {

int ceil_half(int x) { return (x + 1) / 2; }

// Collects every missing lookup so one error names them all.
class Lookup {
 public:
  explicit Lookup(const CountTable& t) : t_(t) {}
  Integer operator()(const Index& idx) {
    if (auto v = t_.find(idx)) return *v;
    missing_.push_back(index_label(t_.kind(), idx));
    return 0;
  }
  void finish() const {
    if (!missing_.empty()) throw MissingDataError(name(t_.kind()), missing_);
  }

 private:
  const CountTable& t_;
  std::vector<std::string> missing_;
};

Integer sign(long e) { return e % 2 == 0 ? 1 : -1; }

void check_arity(TableKind kind, const Index& idx) {
  const bool ok = kind == TableKind::ALPHA ? (idx.size() == 3 || idx.size() == 4) : idx.size() == 2;
  if (!ok) throw DomainError(std::string("wrong index arity for table ") + name(kind));
  for (int v : idx)
    if (v < 0) throw DomainError("negative index " + index_label(kind, idx));
}

// C(n, k) * (k-1)!! style helpers keep every term integral.
Integer cx_term(int x, int y) { return binomial(x, 2 * y) * double_factorial(2 * y - 1); }

}  // namespace

const char* name(TableKind k) {
  switch (k) {
    case TableKind::P: return "P";
    case TableKind::Y: return "Y";
    case TableKind::C: return "C";
    case TableKind::D: return "D";
    case TableKind::ALPHA: return "ALPHA";
  }
  return "?";
}

const char* name(Provenance p) {
  switch (p) {
    case Provenance::oracle: return "oracle";
    case Provenance::inversion: return "inversion";
    case Provenance::recurrence: return "recurrence";
    case Provenance::closed_form: return "closed-form";
    case Provenance::cache: return "cache";
    case Provenance::search: return "search";
    case Provenance::golden: return "golden";
  }
  return "?";
}

std::optional<TableKind> table_kind_from(std::string_view s) {
  for (auto k : {TableKind::P, TableKind::Y, TableKind::C, TableKind::D, TableKind::ALPHA})
    if (s == name(k)) return k;
  return std::nullopt;
}

std::optional<Provenance> provenance_from(std::string_view s) {
  for (auto p : {Provenance::oracle, Provenance::inversion, Provenance::recurrence, Provenance::closed_form,
                 Provenance::cache, Provenance::search, Provenance::golden})
    if (s == name(p)) return p;
  return std::nullopt;
}

std::string index_label(TableKind kind, const Index& idx) {
  std::string s = name(kind);
  s += "[";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + "]";
}

std::optional<Integer> boundary_value(TableKind kind, const Index& idx) {
  check_arity(kind, idx);
  switch (kind) {
    case TableKind::P: {
      const int n = idx[0], d = idx[1];
      if (d <= 1) return Integer(1);
      if (n == 0) return Integer(0);
      if (n == 1) return Integer(1);
      return std::nullopt;
    }
    case TableKind::Y: {
      const int k = idx[0], d = idx[1];
      if (d == 0) throw DomainError("Y needs d >= 1");
      if (k >= d) return Integer(0);
      if (k == 0) return Integer(d == 1 ? 1 : 0);
      return std::nullopt;
    }
    case TableKind::C: {
      const int k = idx[0], e = idx[1];
      if (k > 2 * e) return Integer(0);
      if (k == 0) return Integer(e == 0 ? 1 : 0);
      return std::nullopt;
    }
    case TableKind::D: {
      const int x = idx[0], e = idx[1];
      if (x > 2 * e - ceil_half(e)) throw DomainError("D index out of range: " + index_label(kind, idx));
      if (e == 0) return Integer(1);
      return std::nullopt;
    }
    case TableKind::ALPHA: {
      const int k = idx[0], q = idx[1], m = idx[2];
      if (k == 0 && q == 0 && m == 0) return idx.size() == 3 ? std::optional<Integer>(1) : std::optional<Integer>(0);
      if (m == 0 || q < k || k == 0 || q > k * (k + 1) / 2) return Integer(0);
      if (idx.size() == 4 && (idx[3] < 3 || idx[3] > m + 2)) return Integer(0);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

CountTable::CountTable(const CountTable& o) : kind_(o.kind_) {
  std::shared_lock lock(o.mu_);
  map_ = o.map_;
}

CountTable& CountTable::operator=(const CountTable& o) {
  if (this == &o) return *this;
  auto copy = o.snapshot();
  std::unique_lock lock(mu_);
  kind_ = o.kind_;
  map_ = std::move(copy);
  return *this;
}

std::optional<Integer> CountTable::find(const Index& idx) const {
  if (auto b = boundary_value(kind_, idx)) return b;
  std::shared_lock lock(mu_);
  auto it = map_.find(idx);
  if (it == map_.end()) return std::nullopt;
  return it->second.value;
}

Integer CountTable::at(const Index& idx) const {
  if (auto v = find(idx)) return *v;
  throw MissingDataError(name(kind_), {index_label(kind_, idx)});
}

std::optional<CountTable::Entry> CountTable::entry(const Index& idx) const {
  std::shared_lock lock(mu_);
  auto it = map_.find(idx);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void CountTable::insert(const Index& idx, const Integer& value, Provenance prov) {
  if (auto b = boundary_value(kind_, idx)) {
    if (*b != value)
      throw IntegrityError(index_label(kind_, idx) + " = " + value.get_str() + " contradicts the convention value " +
                           b->get_str());
    return;
  }
  std::unique_lock lock(mu_);
  auto [it, fresh] = map_.try_emplace(idx, Entry{value, prov});
  if (!fresh && it->second.value != value)
    throw IntegrityError(index_label(kind_, idx) + ": " + name(prov) + " gives " + value.get_str() + " but " +
                         name(it->second.provenance) + " gave " + it->second.value.get_str());
}

std::size_t CountTable::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

std::map<Index, CountTable::Entry> CountTable::snapshot() const {
  std::shared_lock lock(mu_);
  return map_;
}

// ---- inversions

Integer p_from_y(const CountTable& y, int n, int d) {
  if (n < 0 || d < 0) throw DomainError("negative index");
  if (d == 0) return 1;
  Lookup get(y);
  Integer sum = 0;
  for (int k = 0; k <= std::min(d - 1, n); ++k) sum += binomial(n, k) * get({k, d});
  get.finish();
  return sum;
}

Integer y_from_p(const CountTable& p, int n, int d) {
  if (n < 0 || d < 1) throw DomainError("y_d^n needs n >= 0 and d >= 1");
  Lookup get(p);
  Integer sum = 0;
  for (int j = 0; j <= n; ++j) sum += sign(n + j) * binomial(n, j) * get({j, d});
  get.finish();
  return sum;
}

Integer y_from_c(const CountTable& c, int k, int e) {
  if (k < 0 || e < 0) throw DomainError("negative index");
  Lookup get(c);
  Integer sum = 0;
  for (int x = 0; x <= std::min(2 * e, k); ++x) sum += binomial(k, x) * get({x, e});
  get.finish();
  return sum;
}

Integer c_from_y(const CountTable& y, int k, int e) {
  if (k < 0 || e < 0) throw DomainError("negative index");
  Lookup get(y);
  Integer sum = 0;
  for (int j = 0; j <= k; ++j) sum += sign(k + j) * binomial(k, j) * get({j, e + j + 1});
  get.finish();
  return sum;
}

Integer d_from_c(const CountTable& c, int x, int e) {
  if (e < 0 || x < 0 || x > 2 * e - ceil_half(e)) throw DomainError("d_e^x needs 0 <= x <= 2e - ceil(e/2)");
  Lookup get(c);
  Integer sum = 0;
  for (int y = 0; y <= x / 2; ++y) sum += sign(y) * cx_term(x, y) * get({x - 2 * y, e - y});
  get.finish();
  return sum;
}

Integer c_from_d(const CountTable& d, int x, int e) {
  if (x < 0 || e < 0 || x > 2 * e) throw DomainError("c_e^{2e-x} needs 0 <= x <= 2e");
  Lookup get(d);
  Integer sum = 0;
  for (int y = ceil_half(x); y <= std::min(e, 2 * x); ++y)
    sum += binomial(2 * e - x, 2 * y - x) * double_factorial(2 * e - 2 * y - 1) * get({2 * y - x, y});
  get.finish();
  return sum;
}

Integer y_recurrence(const CountTable& y, int e, int k) {
  if (e < 0 || k <= 2 * e) throw DomainError("the y recurrence applies for k > 2e");
  Lookup get(y);
  Integer sum = 0;
  for (int j = 0; j <= 2 * e; ++j)
    sum += sign(j) * binomial(k, j) * binomial(k - j - 1, 2 * e - j) * get({j, j + e + 1});
  get.finish();
  return sum;
}

Integer c_recurrence(const CountTable& c, int x, int e) {
  if (x < 0 || e <= 2 * x) throw DomainError("the c recurrence applies for e > 2x");
  Lookup get(c);
  Integer sum = 0;
  for (int z = ceil_half(x); z <= 2 * x; ++z)
    sum += sign(z) * binomial(2 * e - x, 2 * z - x) * binomial(e - z - 1, 2 * x - z) *
           double_factorial(2 * e - 2 * z - 1) * get({2 * z - x, z});
  get.finish();
  return sum;
}

// ---- closed values

Integer p_low_dimension(int n, int d) {
  if (n < 0 || d < 0) throw DomainError("negative index");
  if (d <= 1) return 1;
  if (n == 0) return 0;
  if (n == 1) return 1;
  if (n > 3) throw DomainError("no product formula above dimension 3");
  // d f_d = sum_i sigma(i) f_{d-i}, sigma(i) = sum_{m | i} m w_m with w_m = 1 or m.
  std::vector<Integer> sigma(static_cast<std::size_t>(d) + 1), f(static_cast<std::size_t>(d) + 1);
  for (int m = 1; m <= d; ++m) {
    const long w = n == 2 ? m : static_cast<long>(m) * m;
    for (int i = m; i <= d; i += m) sigma[static_cast<std::size_t>(i)] += w;
  }
  f[0] = 1;
  for (int k = 1; k <= d; ++k) {
    Integer acc = 0;
    for (int i = 1; i <= k; ++i) acc += sigma[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(k - i)];
    f[static_cast<std::size_t>(k)] = acc / k;
  }
  return f[static_cast<std::size_t>(d)];
}

std::optional<Integer> limit_values(TableKind kind, const Index& idx) {
  if (auto b = boundary_value(kind, idx)) return b;
  if (kind == TableKind::Y) {
    const int k = idx[0], d = idx[1];
    auto s = [](int j) { return binomial(j + 1, 2); };
    if (k == 1) return Integer(1);
    if (k == d - 1) return Integer(1);
    if (k == d - 2) return s(d - 2);
    if (k == d - 3) return binomial(s(d - 3), 2) + (d - 3);
    if (k == d - 4) {
      const Integer sv = s(d - 4);
      return binomial(sv, 3) + Integer(d - 4) * sv + 2 * binomial(d - 4, 2);
    }
    if (k == d - 5) {
      // Four cells above the linear part, counted by their shape.
      const Integer j = d - 5, sv = s(d - 5);
      return binomial(sv, 4) + j * (binomial(sv, 2) + 1) + 2 * binomial(j, 2) * (sv - 1) + binomial(Integer(j + 1), 3);
    }
    if (k == d - 6) {
      // sum_x C(d-6, x) c_5^x
      static const long c5[] = {0, 1, 18, 138, 706, 2508, 6441, 10395, 9660, 4725, 945};
      Integer acc = 0;
      for (int x = 0; x <= 10; ++x) acc += binomial(d - 6, x) * c5[x];
      return acc;
    }
    if (k == 2) return p_low_dimension(2, d) - 2;
    if (k == 3) return p_low_dimension(3, d) - 3 * (p_low_dimension(2, d) - 1);
    return std::nullopt;
  }
  if (kind == TableKind::C) {
    const int k = idx[0], e = idx[1];
    if (k == 1) return Integer(1);
    if (k == 2 * e) return double_factorial(2 * e - 1);
    if (k == 2 * e - 1) return Integer(e) * double_factorial(2 * e - 1);
    if (k == 2) return p_low_dimension(2, e + 3) - 4;
    return std::nullopt;
  }
  return std::nullopt;
}

// ---- Y_e

GammaCoefficients gamma_coefficients(int e, const std::vector<Integer>& seed) {
  if (e < 0) throw DomainError("negative e");
  GammaCoefficients g;
  g.e = e;
  if (e == 0) {
    g.gamma = {1};
    return g;
  }
  if (static_cast<int>(seed.size()) < 2 * e) throw DomainError("Y_e needs 2e seed values");
  for (int h = 0; h <= 2 * e - 1; ++h) {
    Integer s = 0;
    for (int j = 0; j <= h; ++j) s += sign(h + j) * binomial(2 * e + 1, h - j) * seed[static_cast<std::size_t>(j)];
    g.gamma.push_back(s);
  }
  Integer total = 0, weighted = 0;
  for (std::size_t i = 0; i < g.gamma.size(); ++i) {
    total += g.gamma[i];
    weighted += Integer(static_cast<long>(i) + 1) * g.gamma[i];
  }
  const Integer df = double_factorial(2 * e - 1);
  if (total != df || weighted != e * df)
    throw IntegrityError("gamma coefficients of Y_" + std::to_string(e) + " fail their sum identities (sum " +
                         total.get_str() + ", weighted " + weighted.get_str() + ")");
  return g;
}

RationalFunctionQ gen_Y(int e, const std::vector<Integer>& seed) {
  const auto g = gamma_coefficients(e, seed);
  std::vector<Rational> num(g.gamma.begin(), g.gamma.end());
  return RationalFunctionQ(PolynomialQ(num), PolynomialQ::one_minus(1).pow(static_cast<unsigned>(2 * e + 1)));
}

std::vector<Integer> y_seed(const CountTable& y, int e) {
  Lookup get(y);
  std::vector<Integer> out;
  for (int j = 0; j <= 2 * e - 1; ++j) out.push_back(get({j + 1, j + e + 2}));
  get.finish();
  return out;
}

// ---- C_x

int c_degree_bound(int x) { return 2 * x - ceil_half(x); }

int c_seed_length(int x) {
  if (x < 0) throw DomainError("negative x");
  if (x == 0) return 1;
  const int a = ceil_half(x);
  return x % 2 == 0 ? 3 * a : 3 * a - 1;
}

Rational c_denominator_exponent(int x) { return Rational(3, 2) + c_degree_bound(x); }

std::vector<Integer> c_diagonal(const CountTable& c, int x, int count) {
  if (x < 0) throw DomainError("negative x");
  Lookup get(c);
  std::vector<Integer> out;
  for (int i = 0; i < count; ++i) {
    const int e = ceil_half(x) + i;
    out.push_back(x % 2 == 0 ? get({2 * (e + 1) - x, e + 1}) : get({2 * e - x, e}));
  }
  get.finish();
  return out;
}

MuCoefficients mu_coefficients(int x, const std::vector<Integer>& diag) {
  const int need = c_seed_length(x);
  if (static_cast<int>(diag.size()) < need)
    throw DomainError("C_" + std::to_string(x) + " needs " + std::to_string(need) + " diagonal values");
  MuCoefficients out;
  out.x = x;
  if (x == 0) {
    out.mu = {Rational(diag[0])};
    return out;
  }
  const int a = ceil_half(x);
  if (x % 2 == 0) {
    const int top = 3 * a;
    for (int h = 0; h <= top; ++h) {
      Rational mu = 0;
      for (int z = 0; z <= std::min(h, top - 1); ++z) {
        Rational inner = 0;
        for (int y = z; y <= top - 1; ++y) {
          const Rational ratio = Rational(double_factorial(2 * y + 1), double_factorial(2 * y + 2));
          const Rational last = Rational(Integer(2 * y + 3) * (top - h), Integer(top - y)) - 1;
          inner += Rational(binomial(top - y, h - y) * binomial(y + 1, z + 1)) * ratio * last;
        }
        mu += Rational(sign(z + h) * ipow(2, static_cast<unsigned long>(h)) * diag[static_cast<std::size_t>(z)],
                       double_factorial(2 * z + 1)) *
              inner;
      }
      mu.canonicalize();
      out.mu.push_back(mu);
    }
  } else {
    const int top = 3 * a - 2;
    for (int h = 0; h <= top; ++h) {
      Rational mu = 0;
      for (int z = 0; z <= h; ++z) {
        Rational inner = 0;
        for (int y = z; y <= h; ++y)
          inner += Rational(binomial(top - y, h - y) * sign(h) * double_factorial(2 * y + 1) *
                                ipow(2, static_cast<unsigned long>(h - y)),
                            factorial(y - z));
        mu += Rational(sign(z) * diag[static_cast<std::size_t>(z)], double_factorial(2 * z + 1) * factorial(z)) * inner;
      }
      mu.canonicalize();
      out.mu.push_back(mu);
    }
  }
  return out;
}

CSeries gen_C(int x, const std::vector<Integer>& diag) {
  CSeries out;
  out.mu = mu_coefficients(x, diag);
  out.numerator = PolynomialQ(out.mu.mu);
  out.denominator_exponent = c_denominator_exponent(x);
  const int N = static_cast<int>(diag.size()) - 1;
  const auto expanded = expand_half_power(out.numerator, HalfIntegerPower(-out.denominator_exponent), N);
  const auto resummed = borel(PowerSeriesQ(std::vector<Rational>(diag.begin(), diag.end()), N));
  for (int i = 0; i <= N; ++i)
    if (expanded[i] != resummed[i])
      throw IntegrityError("Borel(C_" + std::to_string(x) + ") disagrees with its closed form at t^" +
                           std::to_string(i));
  out.verified_terms = std::max(0, N + 1 - c_seed_length(x));
  return out;
}

std::string render(const CSeries& s) {
  return "numerator: " + render(s.numerator) + "\ndenominator: (1 - 2*t)^(" + to_string(s.denominator_exponent) + ")";
}

}  // namespace hdp
