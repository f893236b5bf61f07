#include "doctest.h"

#include "hdpart/enumerate.hpp"
#include "hdpart/errors.hpp"
#include "hdpart/macmahon.hpp"
#include "hdpart/mpartition.hpp"
#include "hdpart/socle_reduction.hpp"
#include "oracle_tables.hpp"

using namespace hdp;

namespace {

const CountTable& y_table() {
  static const CountTable t = testing_tables::oracle_y(9);
  return t;
}

// c_4^x for x <= 8 through socle reduction over searched alpha values.
std::vector<Integer> c4_row() {
  CountTable alpha(TableKind::ALPHA);
  for (int a = 0; a <= 8; ++a)
    for (const auto& idx : alpha_indices_for(4, a))
      if (!alpha.find(idx)) alpha.insert(idx, hdp::alpha(idx[0], idx[1], idx[2]), Provenance::search);
  std::vector<Integer> row;
  for (int a = 0; a <= 8; ++a) row.push_back(c_total(4, a, alpha));
  return row;
}

}  // namespace

TEST_CASE("MacMahon's product") {
  const auto p2 = pi_series(2, 10).integer_coeffs();
  for (int d = 0; d <= 10; ++d) CHECK(p2[static_cast<std::size_t>(d)] == p_low_dimension(2, d));
  const auto p3 = pi_series(3, 12).integer_coeffs();
  CHECK(p3[3] == 6);
  CHECK(p3[4] == 13);
  CHECK(p3[5] == 24);
  for (int d = 0; d <= 12; ++d) CHECK(p3[static_cast<std::size_t>(d)] == p_low_dimension(3, d));
  // The polynomial extension gives 1/(1-t) and 1+t below dimension 2.
  const auto p1 = pi_series(1, 6).integer_coeffs();
  for (int d = 0; d <= 6; ++d) CHECK(p1[static_cast<std::size_t>(d)] == 1);
  const auto p0 = pi_series(0, 6).integer_coeffs();
  CHECK(p0[0] == 1);
  CHECK(p0[1] == 1);
  for (int d = 2; d <= 6; ++d) CHECK(p0[static_cast<std::size_t>(d)] == 0);
}

TEST_CASE("solid partitions part ways with the product at size 6") {
  const auto p4 = pi_series(4, 6).integer_coeffs();
  for (int d = 0; d <= 5; ++d) CHECK(p4[static_cast<std::size_t>(d)] == count_partitions(4, d));
  CHECK(p4[6] != count_partitions(4, 6));
}

TEST_CASE("ybar inversion") {
  for (int d = 2; d <= 10; ++d) CHECK(ybar(d, 1) == 1);
  CHECK(ybar(1, 1) == 0);
  // Forward relation: sum_k C(n,k) ybar_d^k = pi_d^n.
  const auto pi = pi_values(8, 12);
  for (int d = 0; d <= 12; ++d)
    for (int n = 0; n <= 8; ++n) {
      Integer acc = 0;
      for (int k = 0; k <= n; ++k) acc += binomial(n, k) * ybar(d, k);
      CHECK(acc == pi[static_cast<std::size_t>(n)][static_cast<std::size_t>(d)]);
    }
  // ybar_d^k = 0 for k >= d, like y.
  for (int d = 1; d <= 8; ++d) CHECK(ybar(d, d) == 0);
  const auto diag = ybar_diagonal(2, 5);
  for (int i = 0; i < 5; ++i) CHECK(diag[static_cast<std::size_t>(i)] == ybar(i + 4, i + 1));
}

TEST_CASE("discrepancy table") {
  const auto& y = y_table();
  const auto table = discrepancy_table(9, y);
  CHECK(table.size() == 45);
  bool first_at_six = false;
  for (const auto& r : table) {
    CAPTURE(r.a);
    CAPTURE(r.b);
    CHECK(r.delta == r.predicted - r.actual);
    CHECK(r.delta >= 0);
    if (r.a <= 5) CHECK(r.delta == 0);
    if (r.a == 6 && r.delta != 0) first_at_six = true;
  }
  CHECK(first_at_six);
  // sum_k C(n,k) e_d^k = pi_d^n - p_d^n.
  const auto pi = pi_values(6, 9);
  for (int d = 1; d <= 9; ++d)
    for (int n = 1; n <= 6; ++n) {
      Integer acc = 0;
      for (const auto& r : table)
        if (r.a == d) acc += binomial(n, r.b) * r.delta;
      CHECK(acc == pi[static_cast<std::size_t>(n)][static_cast<std::size_t>(d)] - p_from_y(y, n, d));
    }
}

TEST_CASE("Euler exponents and epsilon") {
  const auto& y = y_table();
  const auto w3 = omega_exponents(3, 9, y);
  for (int m = 1; m <= 9; ++m) CHECK(w3[static_cast<std::size_t>(m - 1)] == m);
  for (int m = 1; m <= 9; ++m) CHECK(epsilon(m, 3, y) == 0);
  for (int m = 1; m <= 9; ++m) CHECK(epsilon(m, 2, y) == 0);
  for (int n = 1; n <= 10; ++n)
    for (int m = 1; m <= 5; ++m) CHECK(epsilon(m, n, y) == 0);
  for (int n = 1; n <= 10; ++n) {
    const Integer e6 = epsilon(6, n, y);
    if (n < 4) CHECK(e6 == 0);
    else CHECK(e6 % binomial(n, 4) == 0);
  }
  CHECK(epsilon(6, 4, y) != 0);
}

TEST_CASE("interpolation") {
  const auto p = parse_polynomial("3 - 2*t + t^3/6");
  std::vector<Rational> xs, ys;
  for (int i = 0; i < 4; ++i) {
    xs.emplace_back(i * i - 2);
    ys.push_back(p.eval(xs.back()));
  }
  CHECK(interpolate(xs, ys) == p);
  xs.back() = xs.front();
  CHECK_THROWS_AS(interpolate(xs, ys), DomainError);
}

TEST_CASE("epsilon divisibility") {
  const auto& y = y_table();
  auto r5 = check_epsilon(5, y);
  CHECK(r5.verdict == Verdict::holds);
  CHECK(epsilon_polynomial(5, 6, y).epsilon.is_zero());
  for (int m = 6; m <= 9; ++m) {
    CAPTURE(m);
    const auto r = check_epsilon(m, y);
    CHECK(r.verdict == Verdict::holds);
    const auto f = epsilon_polynomial(m, m + 1, y);
    CHECK(f.divisible);
    CHECK(f.quotient.degree() >= 0);
    CHECK(f.quotient.degree() <= m - 6);
    CHECK(f.epsilon == epsilon_polynomial(m, m + 3, y).epsilon);
  }
  CHECK(epsilon_polynomial(6, 7, y).quotient.degree() == 0);
  const auto text = render(check_epsilon(6, y));
  CHECK(text.find("quotient_degree=0") != std::string::npos);
  CHECK(text.find("irreducible=not checked") != std::string::npos);
  // Beyond the table the check cannot run.
  CHECK(check_epsilon(12, y).verdict == Verdict::inconclusive);
}

TEST_CASE("Andrews rationality") {
  CHECK(andrews_degree_bound(1) == 2);
  CHECK(andrews_denominator(1) == parse_polynomial("(1 - t)^2*(1 - 2*t)"));
  CHECK(andrews_denominator(2).degree() == 6);
  // k = 1: the diagonal is 2^i + i.
  const auto d1 = ybar_diagonal(1, 12);
  for (int i = 0; i < 12; ++i) CHECK(d1[static_cast<std::size_t>(i)] == ipow(2, static_cast<unsigned long>(i)) + i);
  // The bound is sharp: one degree less does not fit.
  for (int k = 1; k <= 4; ++k) {
    const auto d = ybar_diagonal(k, 70);
    PowerSeriesQ s(std::vector<Rational>(d.begin(), d.end()), 69);
    CHECK(fit_numerator(s, andrews_denominator(k), andrews_degree_bound(k)).ok());
    CHECK_FALSE(fit_numerator(s, andrews_denominator(k), andrews_degree_bound(k) - 1).ok());
  }
  const auto r1 = check_andrews(1, 50);
  CHECK(r1.verdict == Verdict::holds);
  CHECK(r1.witness.empty());
  CHECK(check_andrews(2, 80).verdict == Verdict::holds);
  CHECK(check_andrews(3, 60).verdict == Verdict::holds);
  CHECK(check_andrews(4, 60).verdict == Verdict::holds);
  CHECK(check_andrews(3, 5).verdict == Verdict::inconclusive);
  // A negative coefficient is a failure with a witness.
  auto diag = ybar_diagonal(1, 20);
  diag[7] = -1;
  const auto bad = check_andrews(1, diag);
  CHECK(bad.verdict == Verdict::fails);
  CHECK_FALSE(bad.witness.empty());
}

TEST_CASE("the true y diagonal does not fit the Andrews family") {
  const auto c4 = c4_row();
  CHECK(c4[8] == double_factorial(7));
  CHECK(c4[7] == 4 * double_factorial(7));
  CHECK(c4[1] == 1);
  const int count = 60;
  std::vector<Integer> yd;
  for (int i = 0; i < count; ++i) {
    Integer acc = 0;
    for (int x = 0; x <= 8; ++x) acc += binomial(i + 1, x) * c4[static_cast<std::size_t>(x)];
    yd.push_back(acc);
  }
  // Spot check against brute force where it is cheap.
  const auto& y = y_table();
  for (int i = 0; i <= 3; ++i) CHECK(yd[static_cast<std::size_t>(i)] == y.at({i + 1, i + 6}));
  const auto control = check_andrews(4, yd, "y");
  CHECK(control.verdict == Verdict::fails);
  CHECK(check_andrews(4, ybar_diagonal(4, count)).verdict == Verdict::holds);
}

TEST_CASE("sparsity") {
  const auto& y = y_table();
  const auto res = sparsity_search(8, Integer(1000000), y);
  CHECK(res.report.verdict == Verdict::holds);
  std::vector<Integer> values;
  for (const auto& c : res.collisions) {
    values.push_back(c.value);
    CHECK(c.hits.front().first == 3);
    CHECK(c.hits.size() == 2);
  }
  for (long v : {15L, 45L, 105L, 120L, 231L, 2145L, 2485L})
    CHECK(std::find(values.begin(), values.end(), Integer(v)) != values.end());
  const auto has = [&](long v, int d, int n) {
    for (const auto& c : res.collisions)
      if (c.value == v)
        return std::find(c.hits.begin(), c.hits.end(), std::pair{d, n}) != c.hits.end();
    return false;
  };
  CHECK(has(15, 3, 5));
  CHECK(has(15, 7, 2));
  CHECK(has(45, 4, 5));
  CHECK(has(120, 5, 5));
  CHECK(has(2145, 8, 5));
  CHECK(has(2485, 13, 3));
  CHECK(has(231, 16, 2));
  // Ascending values, deterministic rendering.
  CHECK(std::is_sorted(values.begin(), values.end()));
  CHECK(render(res.report) == render(sparsity_search(8, Integer(1000000), y).report));
  CHECK(render(res.report).find("15:p_3^5=p_7^2") != std::string::npos);
}
