#include "hdpart/closed_forms.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hdpart/errors.hpp"

namespace hdp {

namespace {

// k-tuples with entries in [0, cap] summing to s, by inclusion-exclusion.
Integer bounded_tuples(int k, long s, long cap) {
  if (s < 0) return 0;
  if (k == 0) return s == 0 ? 1 : 0;
  Integer acc = 0;
  for (int j = 0; j <= k && s - j * (cap + 1) >= 0; ++j) {
    Integer term = binomial(k, j) * binomial(s - j * (cap + 1) + k - 1, k - 1);
    if (j % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

PolynomialQ geometric(int len) {  // 1 + t + ... + t^(len-1)
  std::vector<Rational> c(static_cast<std::size_t>(len), Rational(1));
  return PolynomialQ(std::move(c));
}

Integer set_partitions_into_triples(int i) {  // (3i)! / (6^i i!)
  return factorial(3L * i) / (ipow(6, static_cast<unsigned long>(i)) * factorial(i));
}

LinearPartition s_power(LinearPartition lambda, int i) {
  for (int j = 0; j < i; ++j) lambda = aux_s(lambda);
  return lambda;
}

}  // namespace

LinearPartition::LinearPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p <= 0) throw DomainError("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

LinearPartition LinearPartition::from_multiplicities(const std::map<int, int>& mult) {
  std::vector<int> parts;
  for (const auto& [v, a] : mult) {
    if (a < 0) throw DomainError("negative multiplicity");
    parts.insert(parts.end(), static_cast<std::size_t>(a), v);
  }
  return LinearPartition(std::move(parts));
}

std::map<int, int> LinearPartition::multiplicities() const {
  std::map<int, int> m;
  for (int p : parts_) ++m[p];
  return m;
}

int LinearPartition::size() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

Integer LinearPartition::automorphisms() const {
  Integer a = 1;
  for (const auto& [v, k] : multiplicities()) a *= factorial(k);
  return a;
}

std::vector<LinearPartition> partitions_of(int n) {
  if (n < 0) throw DomainError("negative partition size");
  std::vector<LinearPartition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rest, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Integer headstrong_count(int m, int n) {
  if (m < 0 || n < 1) throw DomainError("headstrong count needs m >= 0, n >= 1");
  Integer total = 0;
  for (int head = 0; head <= m; ++head) total += bounded_tuples(n - 1, m - head, head);
  return total;
}

bool is_headstrong(const std::vector<int>& tuple) {
  if (tuple.empty()) return false;
  for (int v : tuple)
    if (v < 0 || v > tuple.front()) return false;
  return true;
}

Integer headstrong_delta(int n, int m) {
  if (n < 1) throw DomainError("delta needs n >= 1");
  if (m < 0) return 0;
  if (n == 1) return m >= 1 ? 1 : 0;
  return m >= n - 1 ? headstrong_count(m - n + 1, n) : Integer(0);
}

RationalFunctionQ phi_rational(int n) {
  if (n < 1) throw DomainError("Phi needs n >= 1");
  // The alternating-sum form carries t^(n-2), which is t^(-1) at n = 1.
  if (n == 1) return RationalFunctionQ(PolynomialQ::monomial(1, 1), PolynomialQ::one_minus(1));
  RationalFunctionQ sum(PolynomialQ{});
  for (int k = 1; k <= n; ++k) {
    const Rational c = Rational(binomial(n - 1, k - 1)) * (k % 2 ? 1 : -1);
    sum = sum + RationalFunctionQ(PolynomialQ::monomial(c, k), PolynomialQ::one_minus(k));
  }
  const RationalFunctionQ pre(PolynomialQ::monomial(1, n - 2), PolynomialQ::one_minus(1).pow(static_cast<unsigned>(n - 1)));
  return (pre * sum).reduced();
}

PowerSeriesQ phi(int n, int order) {
  if (n < 1) throw DomainError("Phi needs n >= 1");
  PowerSeriesQ s = PowerSeriesQ::zero(order);
  if (n == 1) {
    for (int i = 1; i <= order; ++i) s.at(i) = 1;
  } else {
    for (int i = 1; i + n - 2 <= order; ++i) {
      const PolynomialQ term = PolynomialQ::monomial(1, i + n - 2) * geometric(i).pow(static_cast<unsigned>(n - 1));
      s = s + series_of(term, order);
    }
  }
  if (!(s == series_of(phi_rational(n), order)))
    throw IntegrityError("Phi_" + std::to_string(n) + " disagrees with its rational form");
  return s;
}

PowerSeriesQ psi(const LinearPartition& lambda, int order) {
  PowerSeriesQ s = PowerSeriesQ::one(order);
  for (int p : lambda.parts()) s = s * phi(p, order);
  return s;
}

PowerSeriesQ psi_nested(const LinearPartition& lambda, int order) {
  std::vector<Rational> c;
  for (int m = 0; m <= order; ++m) c.emplace_back(aux_mu(lambda, m));
  return PowerSeriesQ(std::move(c), order);
}

int aux_t(const LinearPartition& lambda) {
  return static_cast<int>(std::count(lambda.parts().begin(), lambda.parts().end(), 3));
}

LinearPartition aux_s(const LinearPartition& lambda) {
  auto parts = lambda.parts();
  auto it = std::find(parts.begin(), parts.end(), 3);
  if (it == parts.end()) throw DomainError("s(lambda) needs a part equal to 3");
  parts.erase(it);
  return LinearPartition(std::move(parts));
}

Integer aux_f(const LinearPartition& lambda) {
  Rational prod = 1;
  long rest = lambda.size();
  for (int p : lambda.parts()) {
    prod *= Rational(binomial(rest, p) * p);
    rest -= p;
  }
  prod /= Rational(lambda.automorphisms());
  return require_integer(prod, "f(lambda)");
}

LinearPartition aux_u(const LinearPartition& lambda) {
  if (lambda.empty()) return lambda;
  return LinearPartition(std::vector<int>(lambda.parts().begin() + 1, lambda.parts().end()));
}

int aux_r(const LinearPartition& lambda) {
  int r = 0;
  for (int p : lambda.parts()) r += std::max(p - 1, 1);
  return r;
}

Integer aux_mu(const LinearPartition& lambda, int m) {
  const auto& p = lambda.parts();
  const int s = lambda.length();
  if (s == 0) return m == 0 ? 1 : 0;
  if (m < aux_r(lambda)) return 0;
  // tail_r[j] = r(u^j(lambda)), the minimum weight of parts j..s-1.
  std::vector<int> tail_r(static_cast<std::size_t>(s) + 1, 0);
  for (int j = s - 1; j >= 0; --j) tail_r[static_cast<std::size_t>(j)] = tail_r[static_cast<std::size_t>(j) + 1] + std::max(p[static_cast<std::size_t>(j)] - 1, 1);
  std::function<Integer(int, int)> rec = [&](int j, int rest) -> Integer {
    const int part = p[static_cast<std::size_t>(j)];
    if (j == s - 1) return headstrong_delta(part, rest);
    Integer acc = 0;
    for (int i = 0; i <= rest - tail_r[static_cast<std::size_t>(j) + 1]; ++i) {
      Integer d = headstrong_delta(part, i);
      if (d != 0) acc += d * rec(j + 1, rest - i);
    }
    return acc;
  };
  return rec(0, m);
}

AuxValues aux(const LinearPartition& lambda) {
  AuxValues a;
  a.t_val = aux_t(lambda);
  if (a.t_val > 0) a.s_img = aux_s(lambda);
  a.f_val = aux_f(lambda);
  a.u_img = aux_u(lambda);
  a.r_val = aux_r(lambda);
  return a;
}

Integer hydral_count(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("hydral count needs n, m >= 1");
  Integer total = 0;
  for (const auto& lambda : partitions_of(n))
    for (int i = 0; i <= aux_t(lambda) && i <= m; ++i) {
      const auto sub = s_power(lambda, i);
      total += binomial(n, 3 * i) * set_partitions_into_triples(i) * aux_f(sub) * aux_mu(sub, m - i);
    }
  return total;
}

RationalFunctionQ hydral_series(int n) {
  if (n < 1) throw DomainError("hydral series needs n >= 1");
  RationalFunctionQ total(PolynomialQ{});
  for (const auto& lambda : partitions_of(n))
    for (int i = 0; i <= aux_t(lambda); ++i) {
      const auto sub = s_power(lambda, i);
      RationalFunctionQ term(PolynomialQ::monomial(Rational(binomial(n, 3 * i) * set_partitions_into_triples(i) * aux_f(sub)), i));
      for (int p : sub.parts()) term = term * phi_rational(p);
      total = total + term;
    }
  return total.reduced();
}

Integer compressed_count(int n, CompressedVariant v) {
  if (n < 1) throw DomainError("compressed counts need n >= 1");
  const Integer full = set_partitions_into_triples(n);
  switch (v) {
    case CompressedVariant::full: return full;
    case CompressedVariant::drop_one_compressed: {
      Rational q(Integer(3 * (n - 1)) * full, Integer(2));
      q.canonicalize();
      return require_integer(q, "compressed count");
    }
    case CompressedVariant::drop_one_anti: return 2 * full;
    case CompressedVariant::drop_two:
      return Integer(3 * n - 2) * Integer(3 * n - 2) * set_partitions_into_triples(n - 1);
  }
  return 0;
}

std::vector<int> compressed_type(int n, CompressedVariant v) {
  switch (v) {
    case CompressedVariant::full: return {3 * n, 3 * n, n, 3};
    case CompressedVariant::drop_one_compressed: return {3 * n - 1, 3 * n, n, 3};
    case CompressedVariant::drop_one_anti: return {3 * n - 1, 3 * n - 1, n, 3};
    case CompressedVariant::drop_two: return {3 * n - 2, 3 * n - 2, n, 3};
  }
  return {};
}

Integer exp_family(int n) {
  if (n < 0) throw DomainError("exp family needs n >= 0");
  Integer total = 0;
  for (int k = 0; k <= n; ++k) {
    // 0^0 = 1 covers n = 0.
    const Integer pw = (k == 0 && n > 0) ? Integer(0) : ipow(k, static_cast<unsigned long>(n - k));
    total += binomial(n, k) * pw;
  }
  return total;
}

std::vector<Integer> exp_family_series(int order) {
  std::vector<Rational> g(static_cast<std::size_t>(order) + 1, Rational(0));
  for (int n = 1; n <= order; ++n) g[static_cast<std::size_t>(n)] = Rational(Integer(1), factorial(n - 1));
  return inverse_borel(exp_series(PowerSeriesQ(std::move(g), order))).integer_coeffs();
}

}  // namespace hdp
