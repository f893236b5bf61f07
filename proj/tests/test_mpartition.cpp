#include "doctest.h"

#include <set>

#include "hdpart/enumerate.hpp"
#include "hdpart/errors.hpp"
#include "hdpart/mpartition.hpp"

using namespace hdp;

namespace {

std::vector<LatticePoint> pts(std::initializer_list<std::vector<int>> l) {
  std::vector<LatticePoint> out;
  for (const auto& c : l) out.emplace_back(c);
  return out;
}

AlphaOptions plain() {
  AlphaOptions o;
  o.use_orbits = false;
  o.macaulay = false;
  return o;
}

}  // namespace

TEST_CASE("M-stability of small quadric sets") {
  CHECK(m_stable(pts({{2, 0}}), 2));
  CHECK_FALSE(m_stable(pts({{1, 1}}), 2));
  CHECK(m_stable(pts({{2, 0}, {1, 1}}), 2));
  CHECK(m_stable(pts({{2, 0}, {0, 2}}), 2));
  CHECK_FALSE(m_stable(pts({{1, 1, 0}, {0, 1, 1}}), 3));
  CHECK_THROWS_AS(m_stable(pts({{1, 0}}), 2), DomainError);
}

TEST_CASE("orbit representatives of quadric sets") {
  auto r22 = orbit_reps(2, 2);
  REQUIRE(r22.size() == 2);
  std::uint64_t total = 0;
  std::set<std::vector<LatticePoint>> reps;
  for (const auto& o : r22) {
    total += o.orbit_size;
    reps.insert(o.rep);
    CHECK(o.support == 2);
  }
  CHECK(total == 3);
  CHECK(reps.count(canonical_orbit(pts({{2, 0}, {0, 2}}), 2).representative) == 1);
  CHECK(reps.count(canonical_orbit(pts({{2, 0}, {1, 1}}), 2).representative) == 1);

  auto r11 = orbit_reps(1, 1);
  REQUIRE(r11.size() == 1);
  CHECK(r11[0].orbit_size == 1);
  CHECK(r11[0].rep == pts({{2}}));

  // Orbit sizes add up to the number of M-stable subsets.
  for (int k = 1; k <= 4; ++k)
    for (int q = 1; q <= k * (k + 1) / 2; ++q) {
      std::uint64_t sum = 0;
      for (const auto& o : orbit_reps(k, q)) {
        CHECK(m_stable(o.rep, k));
        CHECK(o.rep.size() == static_cast<std::size_t>(q));
        CHECK(canonical_orbit(o.rep, k).representative == o.rep);
        sum += o.orbit_size;
      }
      std::uint64_t direct = 0;
      // Count directly over all q-subsets.
      std::vector<LatticePoint> quads;
      for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
          std::vector<int> c(static_cast<std::size_t>(k), 0);
          ++c[static_cast<std::size_t>(i)];
          ++c[static_cast<std::size_t>(j)];
          quads.emplace_back(c);
        }
      const int n = static_cast<int>(quads.size());
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != q) continue;
        std::vector<LatticePoint> U;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) U.push_back(quads[static_cast<std::size_t>(i)]);
        if (m_stable(U, k)) ++direct;
      }
      CAPTURE(k);
      CAPTURE(q);
      CHECK(sum == direct);
    }
}

TEST_CASE("bounding regions") {
  auto full = bounding_region(pts({{2, 0}, {1, 1}, {0, 2}}), 2, 3);
  CHECK(full.base.size() == 10);
  CHECK(full.max_degree == 3);

  auto half = bounding_region(pts({{2, 0}, {1, 1}}), 2, 3);
  std::vector<LatticePoint> cubics;
  for (const auto& p : half.base.points())
    if (p.deg() == 3) cubics.push_back(p);
  std::sort(cubics.begin(), cubics.end());
  CHECK(cubics == pts({{2, 1}, {3, 0}}));

  auto chain = bounding_region(pts({{2}}), 1, 5);
  CHECK(chain.base.size() == 6);
  CHECK(chain.base.length() == 5);

  CHECK_THROWS_AS(bounding_region(pts({{1, 1}}), 2, 3), DomainError);
  CHECK_THROWS_AS(bounding_region(pts({{2, 0}}), 2, 2), DomainError);
}

TEST_CASE("every point of the region has its quadric divisors in U") {
  for (const auto& o : orbit_reps(3, 4)) {
    auto r = bounding_region(o.rep, 3, 5);
    for (const auto& p : r.base.points()) {
      if (p.deg() < 2) continue;
      for (const auto& u : r.base.points())
        if (u.deg() == 2 && u.divides(p)) CHECK(std::binary_search(o.rep.begin(), o.rep.end(), u));
    }
  }
}

TEST_CASE("Macaulay bound") {
  // h(1) = 3 allows all 6 quadrics; 4 quadrics in degree 2 allow 5 cubics.
  CHECK(macaulay_bound(3, 1) == 6);
  CHECK(macaulay_bound(4, 2) == 5);
  CHECK(macaulay_bound(6, 2) == 10);
  CHECK(macaulay_bound(1, 5) == 1);
  CHECK(macaulay_bound(0, 3) == 0);
  CHECK(macaulay_bound(5, 3) == 6);
}

TEST_CASE("alpha conventions") {
  CHECK(alpha(0, 0, 0) == 1);
  CHECK(alpha(3, 2, 5) == 0);
  CHECK(alpha(2, 2, 0) == 0);
  CHECK(alpha(1, 1, 0) == 0);
  CHECK(alpha(1, 1, 3) == 1);
  CHECK(alpha(2, 2, 1) == 2);
  CHECK(alpha(2, 4, 2) == 0);
  CHECK(alpha_by_hilbert({1}) == 1);
  CHECK(alpha_by_hilbert({1, 2, 3}) == 0);
  CHECK_THROWS_AS(alpha_by_hilbert({2, 1}), DomainError);
}

TEST_CASE("alpha agrees with brute force for k <= 3, q <= 6, m <= 6") {
  for (int k = 1; k <= 3; ++k)
    for (int q = 0; q <= 6; ++q)
      for (int m = 0; m <= 6; ++m) {
        CAPTURE(k);
        CAPTURE(q);
        CAPTURE(m);
        const Integer want = oracle_alpha(k, q, m);
        CHECK(alpha(k, q, m) == want);
        CHECK(alpha(k, q, m, std::nullopt, plain()) == want);
      }
}

TEST_CASE("length and Hilbert refinements add up") {
  for (auto [k, q, m] : std::vector<std::array<int, 3>>{{2, 2, 4}, {3, 4, 5}, {3, 3, 6}, {2, 3, 5}}) {
    Integer by_length = 0;
    for (int l = 3; l <= m + 2; ++l) {
      const Integer a = alpha(k, q, m, l);
      CHECK(a == oracle_alpha(k, q, m, l));
      by_length += a;
      Integer by_h = 0;
      for (const auto& [h, c] : alpha_hilbert_breakdown(k, q, m, l)) {
        CHECK(c == alpha_by_hilbert(h));
        CHECK(c == oracle_alpha_hilbert(h));
        by_h += c;
      }
      CHECK(by_h == a);
    }
    CHECK(by_length == alpha(k, q, m));
  }
}

TEST_CASE("hydral partitions with constant Hilbert function") {
  // sum_k C(n,k) k^(n-k)
  const int want[] = {0, 1, 3, 10, 41};
  for (int n = 1; n <= 4; ++n)
    for (int s = 3; s <= 4; ++s) {
      std::vector<int> h{1};
      for (int i = 1; i <= s; ++i) h.push_back(n);
      CAPTURE(n);
      CAPTURE(s);
      CHECK(alpha_by_hilbert(h) == want[n]);
    }
}

TEST_CASE("pruning and orbit reduction never change counts") {
  for (auto [k, q, m] : std::vector<std::array<int, 3>>{{3, 4, 7}, {3, 5, 6}, {4, 4, 5}, {4, 6, 4}, {3, 6, 8}}) {
    CAPTURE(k);
    CAPTURE(q);
    CAPTURE(m);
    AlphaOptions a, b, c;
    b.macaulay = false;
    c.use_orbits = false;
    const auto ra = alpha_search({k, q, m, std::nullopt, std::nullopt}, a);
    const auto rb = alpha_search({k, q, m, std::nullopt, std::nullopt}, b);
    const auto rc = alpha_search({k, q, m, std::nullopt, std::nullopt}, c);
    CHECK(ra.value == rb.value);
    CHECK(ra.value == rc.value);
    CHECK(ra.nodes <= rb.nodes);
  }
}

TEST_CASE("threads do not change counts") {
  AlphaOptions one, many;
  many.threads = 4;
  for (int m = 1; m <= 8; ++m) CHECK(alpha(3, 4, m, std::nullopt, one) == alpha(3, 4, m, std::nullopt, many));
  CHECK(alpha_hilbert_breakdown(3, 5, 8, 5, one) == alpha_hilbert_breakdown(3, 5, 8, 5, many));
}

TEST_CASE("alpha_{4,m}^3 for m <= 13") {
  const long want[] = {0, 18, 51, 126, 252, 474, 801, 1302, 2001, 3000, 4344, 6183, 8595};
  for (int m = 1; m <= 13; ++m) CHECK(alpha(3, 4, m) == want[m - 1]);
}

TEST_CASE("alpha_{5,13}^3 and its length-4 part") {
  CHECK(alpha(3, 5, 13, 4) == 531);
  const auto split = alpha_hilbert_breakdown(3, 5, 13, 4);
  REQUIRE(split.size() == 2);
  CHECK(split.at({1, 3, 5, 7, 6}) == 504);
  CHECK(split.at({1, 3, 5, 6, 7}) == 27);
  CHECK(alpha_by_hilbert({1, 3, 5, 7, 6}) == 504);
  CHECK(alpha(3, 5, 13) == 43260);
}

TEST_CASE("node ceiling is reported") {
  AlphaOptions o;
  o.max_nodes = 50;
  CHECK_THROWS_AS(alpha(3, 4, 9, std::nullopt, o), ResourceLimitError);
}

TEST_CASE("an interrupted search resumes to the same count") {
  const AlphaQuery query{3, 4, 8, std::nullopt, std::nullopt};
  const Integer fresh = alpha_search(query).value;
  const auto total_tasks = alpha_search(query).tasks.size();
  REQUIRE(total_tasks > 3);
  for (std::size_t stop_after = 0; stop_after < total_tasks; ++stop_after) {
    std::map<std::string, Integer> done;
    AlphaOptions o;
    o.observer = [&](const AlphaTaskRecord& r) {
      if (done.size() == stop_after) throw std::runtime_error("interrupted");
      done[r.id] = r.count;
    };
    CHECK_THROWS(alpha_search(query, o));
    CHECK(done.size() == stop_after);
    AlphaOptions resume;
    resume.completed = done;
    const auto res = alpha_search(query, resume);
    CHECK(res.value == fresh);
    std::size_t resumed = 0;
    for (const auto& t : res.tasks) resumed += t.resumed;
    CHECK(resumed == stop_after);
  }
}

TEST_CASE("query ids are stable") {
  CHECK(query_id({3, 5, 13, std::nullopt, std::nullopt}) == "alpha:3,5,13");
  CHECK(query_id({3, 5, 13, 4, std::nullopt}) == "alpha:3,5,13,l=4");
  CHECK(query_id(AlphaQuery::from_hilbert({1, 3, 5, 7, 6})) == "alpha:3,5,13,l=4,h=1.3.5.7.6");
}
