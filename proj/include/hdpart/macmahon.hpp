#pragma once

// MacMahon's product and its gap to the true partition counts, and checkers
// for the three conjectures built on that gap and on repeated values.

#include <string>
#include <utility>
#include <vector>

#include "hdpart/bigint.hpp"
#include "hdpart/refinement.hpp"
#include "hdpart/series.hpp"

namespace hdp {

// C(m+n-3, m-1): the exponent of (1-t^m) in MacMahon's product, extended
// polynomially in n so that n = 0, 1 make sense.
Integer omega_bar(int m, int n);

// prod_{m>0} (1 - t^m)^(-omega_bar(m, n)) to order N.
PowerSeriesQ pi_series(int n, int order);

// pi_d^n for n <= max_n, d <= max_d, as rows indexed [n][d].
std::vector<std::vector<Integer>> pi_values(int max_n, int max_d);

// ybar_d^k = sum_j (-1)^(k+j) C(k,j) pi_d^j.
Integer ybar(int d, int k);
// ybar_{i+k+2}^{i+1} for i = 0..count-1.
std::vector<Integer> ybar_diagonal(int k, int count);
// y_{i+k+2}^{i+1} for i = 0..count-1 from a Y table.
std::vector<Integer> y_diagonal(const CountTable& y, int k, int count);

struct DiscrepancyRecord {
  enum class Kind { y_level, exponent_level } kind = Kind::y_level;
  int a = 0, b = 0;  // (d,k) or (m,n)
  Integer predicted;
  Integer actual;
  Integer delta;  // predicted - actual
};

// e_d^k = ybar_d^k - y_d^k for d <= d_max, 0 <= k <= d-1.
std::vector<DiscrepancyRecord> discrepancy_table(int d_max, const CountTable& y);

// omega_1..omega_M for sum_d p_d^n t^d, with p_d^n from the Y table.
std::vector<Integer> omega_exponents(int n, int max_m, const CountTable& y);
// eps_m^n = omega_bar - omega.
Integer epsilon(int m, int n, const CountTable& y);

// Lagrange interpolation through (xs[i], ys[i]).
PolynomialQ interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

enum class Verdict { holds, fails, inconclusive };
const char* name(Verdict v);

struct ConjectureReport {
  std::string conjecture;  // andrews-rationality, epsilon-divisibility, sparsity
  std::string range;
  Verdict verdict = Verdict::inconclusive;
  std::string summary;
  std::string witness;  // CLI call reproducing a failure
  std::vector<std::pair<std::string, std::string>> evidence;  // in output order
};

// Human summary followed by a key=value block.
std::string render(const ConjectureReport& r);

// Degree bound C(k+4,2) - 7 - k and denominator prod_{i<=k+1} prod_{j<=i} (1 - jt).
int andrews_degree_bound(int k);
PolynomialQ andrews_denominator(int k);

// Fits sum_i diagonal[i] t^i over the Andrews denominator.
ConjectureReport check_andrews(int k, const std::vector<Integer>& diagonal, const std::string& source = "ybar");
ConjectureReport check_andrews(int k, int order);

struct EpsilonFit {
  PolynomialQ epsilon;   // in the variable n
  PolynomialQ quotient;  // epsilon / C(n,4) when divisible
  bool divisible = false;
};

// Interpolates eps_m^n from n = 1..samples.
EpsilonFit epsilon_polynomial(int m, int samples, const CountTable& y);
ConjectureReport check_epsilon(int m, const CountTable& y);

struct Collision {
  Integer value;
  std::vector<std::pair<int, int>> hits;  // (d, n), d ascending
};

struct SparsityResult {
  std::vector<Collision> collisions;  // by value
  ConjectureReport report;
};

// Values p_d^n <= bound with n >= 2 for 4 <= d <= d_max (from the Y table),
// the rows n = 2, 3 for every d >= 4, and d = 3 tested as triangular numbers.
SparsityResult sparsity_search(int d_max, const Integer& bound, const CountTable& y);

}  // namespace hdp
