#include "doctest.h"

#include <fstream>

#include "hdpart/enumerate.hpp"
#include "hdpart/errors.hpp"
#include "hdpart/resolver.hpp"
#include "oracle_tables.hpp"

using namespace hdp;

namespace {

ResolverOptions search_only(unsigned threads = 1) {
  ResolverOptions o;
  o.closed_forms = false;
  o.threads = threads;
  return o;
}

PolynomialQ c6_fixture() {
  std::ifstream in(std::string(HDPART_DATA_DIR) + "/c6.txt");
  std::string line, text;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') text += line;
  return parse_polynomial(text);
}

}  // namespace

TEST_CASE("search-only pipeline equals brute force") {
  Resolver r(search_only());
  for (int d = 0; d <= 8; ++d)
    for (int n = 0; n <= 4; ++n) {
      CAPTURE(d);
      CAPTURE(n);
      CHECK(r.p(n, d) == count_partitions(n, d));
    }
  CHECK(r.search_nodes() > 0);
  // Nothing but boundary values and searched alpha entered the tables.
  for (const auto& [idx, e] : r.table(TableKind::ALPHA).snapshot()) CHECK(e.provenance == Provenance::search);
  for (const auto& [idx, e] : r.table(TableKind::Y).snapshot()) CHECK(e.provenance == Provenance::inversion);
}

TEST_CASE("closed values agree with the search in verify mode") {
  ResolverOptions o;
  o.verify = true;
  Resolver r(o);
  const auto oracle = testing_tables::oracle_y(8);
  for (int d = 1; d <= 8; ++d)
    for (int k = 0; k < d; ++k) CHECK(r.y(k, d) == oracle.at({k, d}));
  for (int n = 0; n <= 5; ++n) CHECK(r.p(n, 8) == p_from_y(oracle, n, 8));
  bool closed = false;
  for (const auto& [idx, e] : r.table(TableKind::Y).snapshot()) closed |= e.provenance == Provenance::closed_form;
  CHECK(closed);
}

TEST_CASE("c diagonals from the pipeline") {
  Resolver r(search_only());
  for (int e = 1; e <= 4; ++e) {
    CHECK(r.c(2 * e, e) == double_factorial(2 * e - 1));
    CHECK(r.c(2 * e - 1, e) == Integer(e) * double_factorial(2 * e - 1));
  }
  const auto oracle = testing_tables::oracle_c(3);
  for (int e = 0; e <= 3; ++e)
    for (int k = 0; k <= 2 * e; ++k) CHECK(r.c(k, e) == oracle.at({k, e}));
}

TEST_CASE("recurrences inside the resolver") {
  ResolverOptions o;
  o.verify = true;
  Resolver r(o);
  // y_{k+7}^k with k > 12 is extended from its first 13 values; verify mode
  // recomputes it from the c_6 row.
  const Integer v = r.y(13, 20);
  CHECK(r.table(TableKind::Y).entry({13, 20})->provenance == Provenance::recurrence);
  Resolver s(search_only());
  CHECK(s.y(13, 20) == v);
  // x = 1 diagonal at e = 5 from the recurrence: 5 * 9!!.
  Resolver plain;
  CHECK(plain.c(9, 5) == 4725);
}

TEST_CASE("H_d fits at bound d - 2") {
  Resolver fast;
  Resolver slow(search_only());
  for (int d = 1; d <= 10; ++d) {
    CAPTURE(d);
    const auto h = slow.H(d);
    CHECK(h.num().degree() <= std::max(d - 2, 0));
    CHECK(h.den() == PolynomialQ::one_minus(1).pow(static_cast<unsigned>(d)));
    CHECK(h == fast.H(d));
    if (d <= 3) CHECK(h.num() == PolynomialQ{1});
  }
  CHECK(render(slow.H(4).num()) == "1 + t - t^2");
  // Coefficients continue past the fitted range.
  const auto s = series_of(slow.H(6), 12);
  for (int n = 0; n <= 12; ++n) CHECK(s[n] == Rational(slow.p(n + 1, 6)));
}

TEST_CASE("c_6 from the socle reduction") {
  Resolver r(search_only());
  const auto diag = r.c_diagonal(6, c_seed_length(6) + 1);
  CHECK(diag.front() == r.c(2, 4));
  CHECK(diag.back() == r.c(20, 13));
  const auto cs = gen_C(6, diag);
  CHECK(cs.numerator == c6_fixture());
  CHECK(cs.denominator_exponent == Rational(21, 2));
  CHECK(cs.verified_terms == 1);
  CHECK(cs.numerator[0] == 11);
  CHECK(cs.numerator[1] == 475);
  CHECK(cs.numerator[2] == 6773);
}

TEST_CASE("thread count does not change values") {
  Resolver one(search_only(1)), four(search_only(4));
  for (int d = 1; d <= 9; ++d) CHECK(one.H(d) == four.H(d));
  CHECK(one.table(TableKind::ALPHA).snapshot().size() == four.table(TableKind::ALPHA).snapshot().size());
  for (const auto& [idx, e] : one.table(TableKind::ALPHA).snapshot())
    CHECK(four.table(TableKind::ALPHA).at(idx) == e.value);
}

TEST_CASE("resolver errors") {
  Resolver r;
  CHECK_THROWS_AS(r.p(-1, 3), DomainError);
  CHECK_THROWS_AS(r.H(0), DomainError);
  CHECK_THROWS_AS(r.table(TableKind::D), DomainError);
  ResolverOptions tight = search_only();
  tight.max_nodes = 5;
  Resolver small(tight);
  CHECK_THROWS_AS(small.p(4, 8), ResourceLimitError);
}
