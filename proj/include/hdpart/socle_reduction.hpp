#pragma once

// c_e^a split by the M-partition type (k,q,m) of the part of a partition
// generated by its socle in degrees >= 3, and the recursion that computes
// each piece from alpha_{q,m}^k.

#include <array>
#include <map>
#include <mutex>
#include <vector>

#include "hdpart/bigint.hpp"
#include "hdpart/refinement.hpp"

namespace hdp {

// Every variable outside the M-part needs a quadric of the degree-2 socle,
// and a quadric touches at most two of them.
inline bool socle_vanishes(int e, int k, int q, int m, int a) { return a - k > 2 * (e - q - m); }

// ALPHA indices (k,q,m) that c_total(e, a) reads, excluding boundary values
// and triples that vanish.
std::vector<Index> alpha_indices_for(int e, int a);

class SocleReducer {
 public:
  explicit SocleReducer(const CountTable& alpha) : alpha_(alpha) {}

  // c_{e,(k,q,m)}^a. MissingDataError names ALPHA[k,q,m] when absent.
  Integer refined(int e, int k, int q, int m, int a);
  // c_e^a summed over triples; all missing alpha entries are reported at once.
  Integer total(int e, int a, unsigned threads = 1);

  std::size_t memo_size() const;

 private:
  Integer refined_locked(int e, int k, int q, int m, int a, const Integer& alpha);

  const CountTable& alpha_;
  mutable std::mutex mu_;
  std::map<std::array<int, 5>, Integer> memo_;
};

Integer c_refined(int e, int k, int q, int m, int a, const CountTable& alpha);
Integer c_total(int e, int a, const CountTable& alpha, unsigned threads = 1);

}  // namespace hdp
