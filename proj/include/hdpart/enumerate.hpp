#pragma once

// Brute-force enumeration of partitions: the ground truth every other
// route is checked against.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hdpart/bigint.hpp"
#include "hdpart/lattice.hpp"

namespace hdp {

struct ConstraintSpec {
  int size = 0;
  std::optional<int> embedding_dim;
  std::optional<int> min_socle_degree;  // socle inside degrees >= this
  std::optional<std::vector<int>> hilbert_samuel;
  std::optional<int> quadric_count;
  std::optional<int> tail_mass;  // number of points of degree >= 3
  std::optional<int> length;
};

struct EnumerationOptions {
  unsigned threads = 1;
  std::uint64_t max_nodes = 1'000'000'000ULL;
};

Integer count_partitions(int n, int d, const EnumerationOptions& opts = {});
Integer count_constrained(int n, const ConstraintSpec& spec, const EnumerationOptions& opts = {});

// Sequential; the callback sees each partition once.
void for_each_partition(int n, const ConstraintSpec& spec, const std::function<void(const Partition&)>& visit,
                        const EnumerationOptions& opts = {});

// Oracle counts for the refined families.
Integer oracle_y(int k, int d, const EnumerationOptions& opts = {});  // y_d^k
Integer oracle_c(int k, int e, const EnumerationOptions& opts = {});  // c_e^k
Integer oracle_alpha(int k, int q, int m, std::optional<int> length = std::nullopt,
                     const EnumerationOptions& opts = {});
Integer oracle_alpha_hilbert(const std::vector<int>& h, const EnumerationOptions& opts = {});

}  // namespace hdp
