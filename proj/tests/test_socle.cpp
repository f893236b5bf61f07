#include "doctest.h"

#include "hdpart/enumerate.hpp"
#include "hdpart/errors.hpp"
#include "hdpart/socle_reduction.hpp"
#include "oracle_tables.hpp"

using namespace hdp;

namespace {

// Every alpha_{q,m}^k with q + m <= max_e and k <= 2 max_e, from brute force.
const CountTable& alpha_table(int max_e) {
  static std::map<int, CountTable> cache;
  auto it = cache.find(max_e);
  if (it != cache.end()) return it->second;
  CountTable t(TableKind::ALPHA);
  for (int k = 1; k <= 2 * max_e; ++k)
    for (int q = k; q <= max_e && q <= k * (k + 1) / 2; ++q)
      for (int m = 1; q + m <= max_e; ++m) t.insert({k, q, m}, oracle_alpha(k, q, m), Provenance::oracle);
  return cache.emplace(max_e, std::move(t)).first->second;
}

}  // namespace

TEST_CASE("refined counts at a = 0 vanish") {
  const auto& alpha = alpha_table(3);
  for (int e = 0; e <= 3; ++e) CHECK(c_refined(e, 1, 1, 1, 0, alpha) == 0);
  CHECK(c_refined(3, 0, 0, 0, 0, alpha) == 0);
}

TEST_CASE("type (2,2,1) in three variables at e = 3 is empty") {
  CHECK(c_refined(3, 2, 2, 1, 3, alpha_table(3)) == 0);
}

TEST_CASE("c_1^2 comes from the empty M-part alone") {
  const auto& alpha = alpha_table(1);
  CHECK(c_refined(1, 0, 0, 0, 2, alpha) == 1);
  CHECK(c_total(1, 2, alpha) == 1);
}

TEST_CASE("small closed values") {
  const auto& alpha = alpha_table(5);
  CHECK(c_total(2, 4, alpha) == 3);
  for (int e = 1; e <= 5; ++e) CHECK(c_total(e, 1, alpha) == 1);
  CHECK(c_total(4, 2, alpha) == p_low_dimension(2, 7) - 4);
  CHECK(c_total(4, 2, alpha) == 11);
  CHECK(c_total(0, 0, alpha) == 1);
}

TEST_CASE("c_total matches brute force for e <= 5") {
  const auto& alpha = alpha_table(5);
  SocleReducer r(alpha);
  for (int e = 0; e <= 5; ++e)
    for (int a = 0; a <= 2 * e; ++a) {
      CAPTURE(e);
      CAPTURE(a);
      CHECK(r.total(e, a) == oracle_c(a, e));
    }
}

TEST_CASE("empty M-part counts partitions with all socle in degree 2") {
  const auto& alpha = alpha_table(4);
  for (int e = 1; e <= 4; ++e)
    for (int a = 1; a <= 2 * e; ++a) {
      ConstraintSpec s;
      s.size = 1 + a + e;
      s.embedding_dim = a;
      s.min_socle_degree = 2;
      s.tail_mass = 0;
      CAPTURE(e);
      CAPTURE(a);
      CHECK(c_refined(e, 0, 0, 0, a, alpha) == count_constrained(a, s));
    }
}

TEST_CASE("refined counts vanish where the quadric socle cannot reach every variable") {
  const auto& alpha = alpha_table(4);
  SocleReducer r(alpha);
  int checked = 0;
  for (int e = 1; e <= 4; ++e)
    for (int a = 1; a <= 2 * e; ++a)
      for (int k = 0; k <= a; ++k)
        for (int q = 0; q <= e; ++q)
          for (int m = 0; q + m <= e; ++m) {
            if (!socle_vanishes(e, k, q, m, a)) continue;
            if (!alpha.find({k, q, m})) continue;
            CAPTURE(e);
            CAPTURE(a);
            CAPTURE(k);
            CAPTURE(q);
            CAPTURE(m);
            CHECK(r.refined(e, k, q, m, a) == 0);
            ++checked;
          }
  CHECK(checked > 50);
}

TEST_CASE("refined counts vanish when q + m exceeds e") {
  const auto& alpha = alpha_table(3);
  CHECK(c_refined(2, 1, 1, 2, 3, alpha) == 0);
  CHECK(c_refined(1, 2, 2, 1, 2, alpha) == 0);
}

TEST_CASE("missing alpha entries are named") {
  CountTable empty(TableKind::ALPHA);
  try {
    c_refined(3, 2, 2, 1, 3, empty);
    FAIL("expected missing data");
  } catch (const MissingDataError& err) {
    CHECK(err.missing() == std::vector<std::string>{"ALPHA[2,2,1]"});
  }
  try {
    c_total(3, 3, empty);
    FAIL("expected missing data");
  } catch (const MissingDataError& err) {
    CHECK(err.missing().size() == alpha_indices_for(3, 3).size());
    CHECK(!err.missing().empty());
  }
}

TEST_CASE("threads do not change totals") {
  const auto& alpha = alpha_table(5);
  for (int a = 1; a <= 10; ++a) CHECK(c_total(5, a, alpha, 1) == c_total(5, a, alpha, 4));
}

TEST_CASE("the far diagonal only needs small alpha") {
  // c_e^{2e-6}: a - k <= 2(e - q - m) with q >= k forces q + 2m <= 6.
  for (int e = 4; e <= 12; ++e)
    for (auto& t : alpha_indices_for(e, 2 * e - 6)) CHECK(t[1] + 2 * t[2] <= 6);
}
