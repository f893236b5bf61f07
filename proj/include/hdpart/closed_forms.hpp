#pragma once

// Exact formulas for special families of M-partitions: hydral partitions
// (as many quadrics as variables), their headstrong building blocks, the
// compressed and anti-compressed families with socle in degree 3, and the
// constant Hilbert function family.

#include <map>
#include <optional>
#include <vector>

#include "hdpart/bigint.hpp"
#include "hdpart/series.hpp"

namespace hdp {

// Integer partition lambda_1 >= ... >= lambda_s > 0.
class LinearPartition {
 public:
  LinearPartition() = default;
  explicit LinearPartition(std::vector<int> parts);  // any order; sorted on entry
  static LinearPartition from_multiplicities(const std::map<int, int>& mult);

  const std::vector<int>& parts() const { return parts_; }
  std::map<int, int> multiplicities() const;
  int size() const;  // sum of parts
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  Integer automorphisms() const;  // prod of multiplicity factorials

  bool operator==(const LinearPartition&) const = default;
  auto operator<=>(const LinearPartition&) const = default;

 private:
  std::vector<int> parts_;
};

std::vector<LinearPartition> partitions_of(int n);

// n-tuples of nonnegative integers with sum m whose first entry is maximal.
Integer headstrong_count(int m, int n);
bool is_headstrong(const std::vector<int>& tuple);

// delta_{n,m} from the headstrong counts.
Integer headstrong_delta(int n, int m);

// Phi_n to order N from its defining sum; checked against the closed form.
PowerSeriesQ phi(int n, int order);
// Phi_n as a rational function: t/(1-t) for n = 1, the alternating sum over
// 1/(1 - t^k) for n >= 2.
RationalFunctionQ phi_rational(int n);

// Psi_lambda = prod Phi_{lambda_i}, and the same series from the nested sums.
PowerSeriesQ psi(const LinearPartition& lambda, int order);
PowerSeriesQ psi_nested(const LinearPartition& lambda, int order);

int aux_t(const LinearPartition& lambda);
LinearPartition aux_s(const LinearPartition& lambda);  // DomainError without a part 3
Integer aux_f(const LinearPartition& lambda);           // IntegrityError if not integral
LinearPartition aux_u(const LinearPartition& lambda);
int aux_r(const LinearPartition& lambda);
Integer aux_mu(const LinearPartition& lambda, int m);

struct AuxValues {
  int t_val = 0;
  std::optional<LinearPartition> s_img;
  Integer f_val;
  LinearPartition u_img;
  int r_val = 0;
};
AuxValues aux(const LinearPartition& lambda);

// alpha_{n,m}^n.
Integer hydral_count(int n, int m);
RationalFunctionQ hydral_series(int n);

enum class CompressedVariant { full, drop_one_compressed, drop_one_anti, drop_two };
// alpha^{3n}_{3n,n,3}, alpha^{3n-1}_{3n,n,3}, alpha^{3n-1}_{3n-1,n,3}, alpha^{3n-2}_{3n-2,n,3}.
Integer compressed_count(int n, CompressedVariant v);
// (k, q, m, l) counted by compressed_count(n, v).
std::vector<int> compressed_type(int n, CompressedVariant v);

// alpha for h = (1, n, ..., n): sum_k C(n,k) k^(n-k).
Integer exp_family(int n);
// Inverse Borel coefficients of exp(t e^t) to the given order.
std::vector<Integer> exp_family_series(int order);

}  // namespace hdp
