#include <random>
#include <thread>

#include "doctest.h"
#include "hdpart/errors.hpp"
#include "hdpart/refinement.hpp"
#include "oracle_tables.hpp"

using namespace hdp;

namespace {

const CountTable& P() {
  static const CountTable t = testing_tables::oracle_p(4, 8);
  return t;
}
const CountTable& Y() {
  static const CountTable t = testing_tables::oracle_y(9);
  return t;
}
const CountTable& C() {
  static const CountTable t = testing_tables::oracle_c(6);
  return t;
}

}  // namespace

TEST_CASE("table conventions and conflicts") {
  CountTable y(TableKind::Y);
  CHECK(y.find({3, 3}) == Integer(0));
  CHECK(y.find({0, 1}) == Integer(1));
  CHECK(y.find({0, 5}) == Integer(0));
  CHECK_FALSE(y.find({2, 4}).has_value());
  CHECK_THROWS_AS(y.insert({4, 2}, 7, Provenance::oracle), IntegrityError);
  y.insert({2, 4}, 3, Provenance::oracle);
  y.insert({2, 4}, 3, Provenance::inversion);
  CHECK(y.entry({2, 4})->provenance == Provenance::oracle);
  CHECK_THROWS_AS(y.insert({2, 4}, 4, Provenance::recurrence), IntegrityError);
  CHECK_THROWS_AS(y.find({1}), DomainError);

  CountTable c(TableKind::C);
  CHECK(c.find({0, 0}) == Integer(1));
  CHECK(c.find({0, 3}) == Integer(0));
  CHECK(c.find({7, 3}) == Integer(0));

  CountTable a(TableKind::ALPHA);
  CHECK(a.find({0, 0, 0}) == Integer(1));
  CHECK(a.find({2, 3, 0}) == Integer(0));
  CHECK(a.find({3, 2, 5}) == Integer(0));
  CHECK_THROWS_AS(CountTable(TableKind::D).find({4, 2}), DomainError);
}

TEST_CASE("missing data names every absent entry") {
  CountTable y(TableKind::Y);
  try {
    p_from_y(y, 5, 4);
    FAIL("expected an exception");
  } catch (const MissingDataError& e) {
    CHECK(e.table() == "Y");
    CHECK(e.missing() == std::vector<std::string>{"Y[1,4]", "Y[2,4]", "Y[3,4]"});
  }
}

TEST_CASE("concurrent readers and writers") {
  CountTable t(TableKind::P);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&t, w] {
      for (int d = 2; d < 200; ++d) {
        t.insert({2 + w % 2, d}, p_low_dimension(2 + w % 2, d), Provenance::closed_form);
        (void)t.find({2, d});
      }
    });
  for (auto& th : pool) th.join();
  CHECK(t.size() == 2 * 198);
}

TEST_CASE("p and y determine each other") {
  CountTable y(TableKind::Y);
  y.insert({1, 2}, 1, Provenance::oracle);
  for (int n = 0; n < 6; ++n) CHECK(p_from_y(y, n, 2) == n);
  y.insert({1, 3}, 1, Provenance::oracle);
  y.insert({2, 3}, 1, Provenance::oracle);
  CHECK(p_from_y(y, 5, 3) == 15);

  CHECK(y_from_p(P(), 2, 4) == 3);
  for (int d = 2; d <= 8; ++d) CHECK(y_from_p(P(), 1, d) == 1);
  for (int d = 2; d <= 5; ++d) CHECK(y_from_p(P(), d - 1, d) == 1);

  // Full round trip through the oracle.
  CountTable yy(TableKind::Y);
  for (int d = 1; d <= 8; ++d)
    for (int k = 0; k <= 4 && k < d; ++k) yy.insert({k, d}, y_from_p(P(), k, d), Provenance::inversion);
  for (int d = 1; d <= 8; ++d)
    for (int k = 0; k <= 4 && k < d; ++k) CHECK(yy.at({k, d}) == Y().at({k, d}));
  for (int d = 0; d <= 8; ++d)
    for (int n = 0; n <= 4; ++n) CHECK(p_from_y(Y(), n, d) == P().at({n, d}));
}

TEST_CASE("y and c determine each other") {
  CountTable c(TableKind::C);
  c.insert({1, 1}, 1, Provenance::oracle);
  c.insert({2, 1}, 1, Provenance::oracle);
  for (int k = 0; k < 8; ++k) CHECK(y_from_c(c, k, 1) == k + binomial(k, 2));
  CHECK(c_from_y(Y(), 2, 1) == 1);
  for (int e = 1; e <= 2; ++e) CHECK(c_from_y(Y(), 2 * e, e) == double_factorial(2 * e - 1));

  // p assembled from c through y agrees with brute force.
  CountTable y(TableKind::Y);
  for (int e = 0; e <= 6; ++e)
    for (int k = 0; k + e + 1 <= 8; ++k) y.insert({k, k + e + 1}, y_from_c(C(), k, e), Provenance::inversion);
  for (int d = 1; d <= 8; ++d)
    for (int n = 0; n <= 4; ++n) CHECK(p_from_y(y, n, d) == P().at({n, d}));
  for (int e = 0; e <= 4; ++e)
    for (int k = 0; k <= 2 * e && e + k + 1 <= 9; ++k) CHECK(c_from_y(Y(), k, e) == C().at({k, e}));
}

TEST_CASE("the d layer") {
  CountTable d(TableKind::D);
  for (int e = 0; e <= 6; ++e)
    for (int x = 0; x <= 2 * e - (e + 1) / 2; ++x) d.insert({x, e}, d_from_c(C(), x, e), Provenance::inversion);
  CHECK(d.find({0, 0}) == Integer(1));
  for (int e = 0; e <= 6; ++e)
    for (int x = 0; x <= 2 * e; ++x)
      if ((x + 1) / 2 <= e && e <= 2 * x) CHECK(c_from_d(d, x, e) == C().at({2 * e - x, e}));
  for (int e = 1; e <= 4; ++e) CHECK(c_from_d(d, 1, e) == e * double_factorial(2 * e - 1));
  const long expect[] = {1, 6, 45, 420};
  for (int e = 1; e <= 4; ++e) CHECK(c_from_d(d, 1, e) == expect[e - 1]);
  CHECK_THROWS_AS(d_from_c(C(), 5, 3), DomainError);

  // Random d tables survive d -> c -> d.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    CountTable rd(TableKind::D);
    for (int e = 1; e <= 5; ++e)
      for (int x = 1; x <= 2 * e - (e + 1) / 2; ++x) rd.insert({x, e}, static_cast<long>(rng() % 1000), Provenance::oracle);
    CountTable rc(TableKind::C);
    for (int e = 1; e <= 5; ++e) rd.insert({0, e}, 0, Provenance::oracle);  // forced by c_e^0 = 0
    for (int e = 1; e <= 5; ++e)
      for (int x = 0; x < 2 * e; ++x) rc.insert({2 * e - x, e}, c_from_d(rd, x, e), Provenance::inversion);
    for (int e = 1; e <= 5; ++e)
      for (int x = 0; x <= 2 * e - (e + 1) / 2; ++x) CHECK(d_from_c(rc, x, e) == rd.at({x, e}));
  }
}

TEST_CASE("recurrences extend the diagonals") {
  for (int k = 1; k < 12; ++k) CHECK(y_recurrence(Y(), 0, k) == 1);
  CHECK(y_recurrence(Y(), 1, 11) == 66);  // t^10 of 1/(1-t)^3
  for (int k = 3; k <= 7; ++k) CHECK(y_recurrence(Y(), 1, k) == Y().at({k, k + 2}));
  for (int k = 5; k <= 6; ++k) CHECK(y_recurrence(Y(), 2, k) == Y().at({k, k + 3}));
  CHECK_THROWS_AS(y_recurrence(Y(), 2, 4), DomainError);

  CHECK(c_recurrence(C(), 0, 4) == double_factorial(7));
  CHECK(c_recurrence(C(), 1, 5) == 4725);
  for (int e = 3; e <= 6; ++e) CHECK(c_recurrence(C(), 1, e) == C().at({2 * e - 1, e}));
  for (int e = 5; e <= 6; ++e) CHECK(c_recurrence(C(), 2, e) == C().at({2 * e - 2, e}));
  CHECK_THROWS_AS(c_recurrence(C(), 2, 4), DomainError);
}

TEST_CASE("closed values agree with brute force") {
  CHECK(*limit_values(TableKind::Y, {3, 5}) == 6);
  CHECK(*limit_values(TableKind::Y, {3, 6}) == 18);
  CHECK(*limit_values(TableKind::Y, {1, 7}) == 1);
  int checked = 0;
  for (int d = 1; d <= 9; ++d)
    for (int k = 0; k < d; ++k)
      if (auto v = limit_values(TableKind::Y, {k, d})) {
        CHECK_MESSAGE(*v == Y().at({k, d}), "y_" << d << "^" << k);
        ++checked;
      }
  CHECK(checked >= 40);
  for (int e = 0; e <= 6; ++e)
    for (int k = 0; k <= 2 * e; ++k)
      if (auto v = limit_values(TableKind::C, {k, e})) CHECK_MESSAGE(*v == C().at({k, e}), "c_" << e << "^" << k);
  CHECK_FALSE(limit_values(TableKind::C, {4, 4}).has_value());
}

TEST_CASE("two-variable identities") {
  for (int n = 2; n <= 8; ++n) CHECK(Y().at({2, n + 1}) == Integer(q_binomial(2 * n, n)[n + 1].get_num()));
  for (int n = 2; n <= 9; ++n) CHECK(Y().at({2, n}) == p_low_dimension(2, n) - 2);
  for (int n = 3; n <= 9; ++n) CHECK(Y().at({3, n}) == p_low_dimension(3, n) - 3 * (Y().at({2, n}) + 1));
  for (int n = 3; n <= 8; ++n) CHECK(C().at({2, n - 2}) == p_low_dimension(2, n + 1) - 4);
  const int plane[] = {1, 1, 3, 6, 13, 24, 48, 86, 160, 282};
  for (int d = 0; d < 10; ++d) CHECK(p_low_dimension(3, d) == plane[d]);
  CHECK(p_low_dimension(2, 100) == Integer("190569292"));
}

TEST_CASE("Y_e generating functions") {
  auto y1 = gen_Y(1, y_seed(Y(), 1));
  CHECK(y1 == RationalFunctionQ(PolynomialQ{1}, PolynomialQ::one_minus(1).pow(3)));
  auto g2 = gamma_coefficients(2, y_seed(Y(), 2));
  Integer sum = 0, weighted = 0;
  for (std::size_t i = 0; i < g2.gamma.size(); ++i) {
    sum += g2.gamma[i];
    weighted += Integer(static_cast<long>(i + 1)) * g2.gamma[i];
  }
  CHECK(sum == 3);
  CHECK(weighted == 6);
  for (int e = 1; e <= 2; ++e) {
    auto s = series_of(gen_Y(e, y_seed(Y(), e)), 2 * e + 5);
    for (int k = 0; k <= 6 && k + e + 2 <= 9; ++k) CHECK(s[k] == Rational(Y().at({k + 1, k + e + 2})));
  }
  auto bad = y_seed(Y(), 2);
  bad[1] += 1;
  CHECK_THROWS_AS(gamma_coefficients(2, bad), IntegrityError);
}

TEST_CASE("C_x Borel-resummed generating functions") {
  auto c0 = gen_C(0, c_diagonal(C(), 0, 6));
  CHECK(c0.numerator == PolynomialQ{1});
  CHECK(c0.denominator_exponent == Rational(3, 2));
  CHECK(c0.verified_terms == 5);

  for (int x = 1; x <= 3; ++x) {
    const int ce = (x + 1) / 2;
    const int avail = x % 2 == 0 ? 6 - ce : 7 - ce;  // diagonal entries with e <= 6
    auto diag = c_diagonal(C(), x, avail);
    auto cs = gen_C(x, diag);
    CHECK(cs.numerator.degree() <= c_degree_bound(x));
    CHECK(cs.verified_terms == avail - c_seed_length(x));
    auto back = inverse_borel(expand_half_power(cs.numerator, HalfIntegerPower(-cs.denominator_exponent), avail - 1));
    for (int i = 0; i < avail; ++i) CHECK(back[i] == Rational(diag[static_cast<std::size_t>(i)]));
    if (x % 2) CHECK(cs.mu.mu[0] == 1);
  }
  // Even x reads the shifted diagonal: mu_0 = c_{1+a}^2.
  auto c2 = gen_C(2, c_diagonal(C(), 2, 5));
  CHECK(c2.mu.mu[0] == Rational(C().at({2, 2})));
  CHECK(c_diagonal(C(), 2, 1)[0] == C().at({2, 2}));
  CHECK(c_diagonal(C(), 3, 1)[0] == C().at({1, 2}));

  auto diag = c_diagonal(C(), 2, 5);
  diag.back() += 1;
  CHECK_THROWS_AS(gen_C(2, diag), IntegrityError);
  CHECK(render(c0) == "numerator: 1\ndenominator: (1 - 2*t)^(3/2)");
}
