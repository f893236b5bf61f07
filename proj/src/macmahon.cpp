#include "hdpart/macmahon.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "hdpart/errors.hpp"

namespace hdp {

namespace {

std::string str(int v) { return std::to_string(v); }

// C(n,4) as a polynomial in n.
PolynomialQ choose4() {
  PolynomialQ p = PolynomialQ::constant(Rational(1, 24));
  for (int j = 0; j < 4; ++j) p = p * PolynomialQ({Rational(-j), Rational(1)});
  return p;
}

std::string in_n(std::string s) {
  std::replace(s.begin(), s.end(), 't', 'n');
  return s;
}

// y_d^k from the table, else from the closed values.
Integer y_value(const CountTable& y, int k, int d) {
  if (auto v = y.find({k, d})) return *v;
  if (auto v = limit_values(TableKind::Y, {k, d})) return *v;
  throw MissingDataError("Y", {index_label(TableKind::Y, {k, d})});
}

Integer p_via_y(const CountTable& y, int n, int d) {
  if (d <= 1) return 1;
  Integer acc = 0;
  for (int k = 0; k <= std::min(n, d); ++k) acc += binomial(n, k) * y_value(y, k, d);
  return acc;
}

bool is_triangular_from_two(const Integer& v, int& n_out) {
  // v = n(n+1)/2 iff 8v+1 is an odd square.
  Integer disc = 8 * v + 1;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
  if (r * r != disc) return false;
  Integer n = (r - 1) / 2;
  if (n < 2 || !n.fits_sint_p()) return false;
  n_out = static_cast<int>(n.get_si());
  return true;
}

}  // namespace

Integer omega_bar(int m, int n) {
  if (m < 1) throw DomainError("omega_bar needs m >= 1");
  return binomial(static_cast<long>(m) + n - 3, m - 1);
}

PowerSeriesQ pi_series(int n, int order) {
  if (n < 0 || order < 0) throw DomainError("pi series needs n, N >= 0");
  std::vector<Rational> w;
  for (int m = 1; m <= order; ++m) w.emplace_back(omega_bar(m, n));
  return euler_product(w, order);
}

std::vector<std::vector<Integer>> pi_values(int max_n, int max_d) {
  std::vector<std::vector<Integer>> rows;
  for (int n = 0; n <= max_n; ++n) rows.push_back(pi_series(n, max_d).integer_coeffs());
  return rows;
}

namespace {

Integer ybar_from(const std::vector<std::vector<Integer>>& pi, int d, int k) {
  Integer acc = 0;
  for (int j = 0; j <= k; ++j) {
    Integer term = binomial(k, j) * pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)];
    if ((k + j) % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

}  // namespace

Integer ybar(int d, int k) {
  if (d < 0 || k < 0) throw DomainError("ybar needs d, k >= 0");
  return ybar_from(pi_values(k, d), d, k);
}

std::vector<Integer> ybar_diagonal(int k, int count) {
  if (k < 1 || count < 0) throw DomainError("ybar diagonal needs k >= 1");
  const auto pi = pi_values(count, count + k + 1);
  std::vector<Integer> out;
  for (int i = 0; i < count; ++i) out.push_back(ybar_from(pi, i + k + 2, i + 1));
  return out;
}

std::vector<Integer> y_diagonal(const CountTable& y, int k, int count) {
  std::vector<Integer> out;
  for (int i = 0; i < count; ++i) out.push_back(y_value(y, i + 1, i + k + 2));
  return out;
}

std::vector<DiscrepancyRecord> discrepancy_table(int d_max, const CountTable& y) {
  std::vector<DiscrepancyRecord> out;
  if (d_max < 1) return out;
  const auto pi = pi_values(d_max, d_max);
  for (int d = 1; d <= d_max; ++d)
    for (int k = 0; k < d; ++k) {
      DiscrepancyRecord r;
      r.a = d;
      r.b = k;
      r.predicted = ybar_from(pi, d, k);
      r.actual = y_value(y, k, d);
      r.delta = r.predicted - r.actual;
      out.push_back(std::move(r));
    }
  return out;
}

std::vector<Integer> omega_exponents(int n, int max_m, const CountTable& y) {
  if (max_m < 1) return {};
  std::vector<Rational> p;
  for (int d = 0; d <= max_m; ++d) p.emplace_back(p_via_y(y, n, d));
  std::vector<Integer> out;
  for (const auto& w : inverse_euler(PowerSeriesQ(std::move(p), max_m))) out.push_back(require_integer(w, "Euler exponent"));
  return out;
}

Integer epsilon(int m, int n, const CountTable& y) {
  return omega_bar(m, n) - omega_exponents(n, m, y)[static_cast<std::size_t>(m - 1)];
}

PolynomialQ interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw DomainError("interpolation needs matching sample lists");
  PolynomialQ acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PolynomialQ basis = PolynomialQ::constant(1);
    Rational scale = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      if (xs[i] == xs[j]) throw DomainError("repeated interpolation node");
      basis = basis * PolynomialQ({-xs[j], Rational(1)});
      scale *= xs[i] - xs[j];
    }
    acc += basis * Rational(ys[i] / scale);
  }
  return acc;
}

const char* name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string render(const ConjectureReport& r) {
  std::ostringstream out;
  out << r.conjecture << " [" << r.range << "]: " << name(r.verdict);
  if (!r.summary.empty()) out << "\n  " << r.summary;
  if (!r.witness.empty()) out << "\n  reproduce: " << r.witness;
  out << "\n--- report\n";
  out << "conjecture=" << r.conjecture << "\n";
  out << "range=" << r.range << "\n";
  out << "verdict=" << name(r.verdict) << "\n";
  if (!r.witness.empty()) out << "witness=" << r.witness << "\n";
  for (const auto& [k, v] : r.evidence) out << k << "=" << v << "\n";
  out << "---\n";
  return out.str();
}

int andrews_degree_bound(int k) { return static_cast<int>((k + 4) * (k + 3) / 2) - 7 - k; }

PolynomialQ andrews_denominator(int k) {
  // The outer product needs i = k+1: already at k = 1 the diagonal is
  // 2^i + i, which has poles at 1 and 1/2.
  PolynomialQ den = PolynomialQ::constant(1);
  for (int i = 1; i <= k + 1; ++i)
    for (int j = 1; j <= i; ++j) den = den * PolynomialQ({Rational(1), Rational(-j)});
  return den;
}

ConjectureReport check_andrews(int k, const std::vector<Integer>& diagonal, const std::string& source) {
  if (k < 1) throw DomainError("Andrews check needs k >= 1");
  const int count = static_cast<int>(diagonal.size());
  ConjectureReport r;
  r.conjecture = "andrews-rationality";
  r.range = "k=" + str(k) + ",order=" + str(count - 1) + ",source=" + source;
  r.witness = "hdpart conjecture andrews --k " + str(k) + " --order " + str(count - 1);
  const int bound = andrews_degree_bound(k);
  const PolynomialQ den = andrews_denominator(k);
  r.evidence.emplace_back("degree_bound", str(bound));
  r.evidence.emplace_back("denominator_degree", str(den.degree()));

  for (int i = 0; i < count; ++i)
    if (diagonal[static_cast<std::size_t>(i)] < 0) {
      r.verdict = Verdict::fails;
      r.summary = "negative coefficient at i=" + str(i);
      r.evidence.emplace_back("negative_index", str(i));
      return r;
    }

  std::vector<Rational> c(diagonal.begin(), diagonal.end());
  FitResult fit;
  try {
    fit = fit_numerator(PowerSeriesQ(std::move(c), count - 1), den, bound);
  } catch (const DomainError&) {
    r.verdict = Verdict::inconclusive;
    r.summary = "series too short for the degree bound; raise --order";
    r.witness.clear();
    r.evidence.emplace_back("needed_terms", str(den.degree() + bound + kFitSlack + 1));
    return r;
  }
  if (!fit.ok()) {
    r.verdict = Verdict::fails;
    r.summary = "no numerator of degree <= " + str(bound) + "; first excess coefficient at t^" + str(fit.offending_index);
    r.evidence.emplace_back("offending_index", str(fit.offending_index));
    return r;
  }
  r.verdict = Verdict::holds;
  r.witness.clear();
  r.summary = "numerator of degree " + str(fit.numerator->degree()) + " over prod (1 - j t), coefficients nonnegative";
  r.evidence.emplace_back("numerator", render(*fit.numerator));
  return r;
}

ConjectureReport check_andrews(int k, int order) {
  if (order < 0) throw DomainError("order must be nonnegative");
  return check_andrews(k, ybar_diagonal(k, order + 1));
}

EpsilonFit epsilon_polynomial(int m, int samples, const CountTable& y) {
  if (m < 1 || samples < 1) throw DomainError("epsilon interpolation needs m, samples >= 1");
  std::vector<Rational> xs, ys;
  for (int n = 1; n <= samples; ++n) {
    xs.emplace_back(n);
    ys.emplace_back(epsilon(m, n, y));
  }
  EpsilonFit f;
  f.epsilon = interpolate(xs, ys);
  if (f.epsilon.degree() > m - 1)
    throw IntegrityError("epsilon_" + str(m) + " interpolates to degree " + str(f.epsilon.degree()) + " > " + str(m - 1));
  const auto div = divmod(f.epsilon, choose4());
  f.divisible = div.remainder.is_zero();
  if (f.divisible) f.quotient = div.quotient;
  return f;
}

ConjectureReport check_epsilon(int m, const CountTable& y) {
  ConjectureReport r;
  r.conjecture = "epsilon-divisibility";
  r.range = "m=" + str(m) + ",samples=1.." + str(m + 1);
  r.witness = "hdpart conjecture epsilon --m " + str(m);
  EpsilonFit f;
  try {
    f = epsilon_polynomial(m, m + 1, y);
    // Two further sample points must leave the polynomial unchanged.
    const auto wide = epsilon_polynomial(m, m + 3, y);
    if (!(wide.epsilon == f.epsilon)) throw IntegrityError("epsilon interpolation is not stable under extra samples");
  } catch (const MissingDataError& e) {
    r.verdict = Verdict::inconclusive;
    r.witness.clear();
    r.summary = std::string("missing counts: ") + e.what();
    return r;
  }
  r.evidence.emplace_back("epsilon", in_n(render(f.epsilon)));
  r.evidence.emplace_back("irreducible", "not checked");
  if (!f.divisible) {
    r.verdict = Verdict::fails;
    r.summary = "epsilon is not divisible by C(n,4)";
    return r;
  }
  r.evidence.emplace_back("quotient", in_n(render(f.quotient)));
  r.evidence.emplace_back("quotient_degree", str(f.quotient.degree()));
  r.evidence.emplace_back("degree_bound", str(m - 6));
  if (f.quotient.degree() > m - 6) {
    r.verdict = Verdict::fails;
    r.summary = "quotient degree " + str(f.quotient.degree()) + " exceeds " + str(m - 6);
    return r;
  }
  r.verdict = Verdict::holds;
  r.witness.clear();
  r.summary = f.epsilon.is_zero() ? "epsilon vanishes identically"
                                  : "epsilon = C(n,4) * r(n) with deg r = " + str(f.quotient.degree()) +
                                        "; divisibility and degree verified, irreducibility not checked";
  return r;
}

SparsityResult sparsity_search(int d_max, const Integer& bound, const CountTable& y) {
  if (d_max < 3) throw DomainError("sparsity search needs d_max >= 3");
  if (bound < 1) throw DomainError("value bound must be positive");

  // Rows d = 4..d_max, n >= 2, one thread per row.
  std::vector<std::vector<std::pair<Integer, int>>> rows(static_cast<std::size_t>(d_max) + 1);
  std::vector<std::exception_ptr> errors(rows.size());
  {
    std::vector<std::jthread> pool;
    for (int d = 4; d <= d_max; ++d)
      pool.emplace_back([&, d] {
        try {
          auto& row = rows[static_cast<std::size_t>(d)];
          for (int n = 2;; ++n) {
            Integer v = p_via_y(y, n, d);
            if (v > bound) break;
            row.emplace_back(std::move(v), n);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(d)] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::map<Integer, std::set<std::pair<int, int>>> index;
  for (int d = 4; d <= d_max; ++d)
    for (const auto& [v, n] : rows[static_cast<std::size_t>(d)]) index[v].insert({d, n});

  // Rows n = 2, 3 past d_max: these are the classical product series.
  for (int n = 2; n <= 3; ++n) {
    int order = 2 * d_max + 8;
    std::vector<Integer> c;
    for (;;) {
      c = pi_series(n, order).integer_coeffs();
      if (c.back() > bound) break;
      order *= 2;
    }
    for (int d = d_max + 1; d <= order && c[static_cast<std::size_t>(d)] <= bound; ++d)
      index[c[static_cast<std::size_t>(d)]].insert({d, n});
  }

  SparsityResult res;
  bool ok = true;
  for (auto& [v, hits] : index) {
    int n3 = 0;
    if (is_triangular_from_two(v, n3)) hits.insert({3, n3});
    std::set<int> ds;
    for (const auto& h : hits) ds.insert(h.first);
    if (ds.size() < 2) continue;
    Collision c{v, {hits.begin(), hits.end()}};
    for (const auto& [d, n] : c.hits)
      if (p_via_y(y, n, d) != v)
        throw IntegrityError("collision at " + to_string(v) + " does not re-verify at (d,n)=(" + str(d) + "," + str(n) + ")");
    if (std::count_if(c.hits.begin(), c.hits.end(), [](const auto& h) { return h.first > 3; }) > 1) ok = false;
    res.collisions.push_back(std::move(c));
  }

  auto& r = res.report;
  r.conjecture = "sparsity";
  r.range = "dmax=" + str(d_max) + ",bound=" + to_string(bound);
  r.verdict = ok ? Verdict::holds : Verdict::fails;
  if (!ok) r.witness = "hdpart conjecture sparsity --dmax " + str(d_max) + " --bound " + to_string(bound);
  r.summary = str(static_cast<int>(res.collisions.size())) + " collisions; " +
              (ok ? "each pairs d = 3 with one larger d" : "some collision avoids d = 3");
  std::ostringstream list;
  for (std::size_t i = 0; i < res.collisions.size(); ++i) {
    const auto& c = res.collisions[i];
    if (i) list << "; ";
    list << to_string(c.value) << ":";
    for (std::size_t j = 0; j < c.hits.size(); ++j)
      list << (j ? "=" : "") << "p_" << c.hits[j].first << "^" << c.hits[j].second;
  }
  r.evidence.emplace_back("collisions", list.str());
  return res;
}

}  // namespace hdp
