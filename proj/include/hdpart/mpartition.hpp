#pragma once

// Counting M-partitions (socle in degrees >= 3) of type (k,q,m): one search
// per orbit of quadric layers U and per length l, inside the region of
// points whose quadric divisors all lie in U.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdpart/bigint.hpp"
#include "hdpart/lattice.hpp"

namespace hdp {

struct QuadricOrbit {
  int k = 0;
  std::vector<LatticePoint> rep;  // canonical representative, degree-2 points
  std::uint64_t orbit_size = 0;
  int support = 0;  // variables dividing some element of rep
};

// Every element of U divides a cubic whose quadric divisors all lie in U.
bool m_stable(const std::vector<LatticePoint>& U, int k);

// One representative per S_k-orbit of M-stable q-subsets of the quadrics in
// k variables, in a fixed order. Supports smaller than k are included.
std::vector<QuadricOrbit> orbit_reps(int k, int q);

struct BoundingRegion {
  Partition base;  // degrees <= 1, U, and the admissible points of degree 3..l
  std::vector<LatticePoint> degree2;
  int max_degree = 0;
};

BoundingRegion bounding_region(const std::vector<LatticePoint>& U, int k, int ell);

// Largest possible h(i+1) given h(i) = a.
long macaulay_bound(long a, int i);

struct AlphaQuery {
  int k = 0, q = 0, m = 0;
  std::optional<int> length;
  std::optional<std::vector<int>> hilbert;  // full target, h(0) = 1

  static AlphaQuery from_hilbert(const std::vector<int>& h);
};

// Stable key for caches and checkpoints.
std::string query_id(const AlphaQuery& query);

struct AlphaTaskRecord {
  std::string id;  // "r<rep>/l<length>"
  std::size_t rep_index = 0;
  int length = 0;
  std::uint64_t weight = 0;  // orbit size, or 1 without orbit reduction
  std::uint64_t nodes = 0;
  Integer count;  // partitions for this representative, unweighted
  bool resumed = false;
};

struct AlphaOptions {
  unsigned threads = 1;
  std::uint64_t max_nodes = 1'000'000'000ULL;
  bool use_orbits = true;
  bool macaulay = true;
  // Called once with every task id before any task runs.
  std::function<void(const std::vector<std::string>&)> on_plan;
  // Called once per finished task, serialized. Throwing aborts the search.
  std::function<void(const AlphaTaskRecord&)> observer;
  // Task id -> unweighted count from an earlier, interrupted run.
  std::map<std::string, Integer> completed;
};

struct AlphaResult {
  Integer value;
  std::uint64_t nodes = 0;
  std::vector<AlphaTaskRecord> tasks;  // sorted by id order of creation
  std::map<std::vector<int>, Integer> by_hilbert;  // filled when requested
};

AlphaResult alpha_search(const AlphaQuery& query, const AlphaOptions& opts = {}, bool split_by_hilbert = false);

Integer alpha(int k, int q, int m, std::optional<int> length = std::nullopt, const AlphaOptions& opts = {});
Integer alpha_by_hilbert(const std::vector<int>& h, const AlphaOptions& opts = {});
// alpha_{q,m,l}^k split by the Hilbert-Samuel function.
std::map<std::vector<int>, Integer> alpha_hilbert_breakdown(int k, int q, int m, int ell,
                                                            const AlphaOptions& opts = {});

}  // namespace hdp
