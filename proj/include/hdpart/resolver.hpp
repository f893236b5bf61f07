#pragma once

// Demand-driven evaluation of p, y, c and alpha.
//
// Route for a missing entry:
//   p_d^n      golden/cache, closed value (n <= 3), else sum_k C(n,k) y_d^k
//   y_d^k      closed value, else from the c_{d-k-1} row
//   c_e^a      closed value, else socle reduction over alpha
//   alpha      hydral closed form (q = k), else M-partition search
// With closed_forms off only boundary conventions are used, so every entry
// goes through the search. Verify mode computes each closed value a second
// time by that route and throws IntegrityError on disagreement.

#include <memory>
#include <optional>
#include <vector>

#include "hdpart/bigint.hpp"
#include "hdpart/cache.hpp"
#include "hdpart/mpartition.hpp"
#include "hdpart/refinement.hpp"
#include "hdpart/series.hpp"
#include "hdpart/socle_reduction.hpp"

namespace hdp {

struct ResolverOptions {
  unsigned threads = 1;
  bool closed_forms = true;
  bool verify = false;
  std::uint64_t max_nodes = 1'000'000'000ULL;
  Cache* cache = nullptr;  // read and written when set
};

class Resolver {
 public:
  explicit Resolver(ResolverOptions opts = {});

  Integer p(int n, int d);
  Integer y(int k, int d);
  Integer c(int k, int e);
  Integer alpha(int k, int q, int m);

  // Fills y_d^k for all k < d.
  void fill_y(int d);
  // sum_n p_d^n t^n = h_d(t) / (1 - t)^d with deg h_d <= d - 2.
  RationalFunctionQ H(int d);
  // c_e^{2e-x} for e = ceil(x/2) .. through `count` entries of the C_x diagonal.
  std::vector<Integer> c_diagonal(int x, int count);

  const CountTable& table(TableKind kind) const;
  const ResolverOptions& options() const { return opts_; }
  std::uint64_t search_nodes() const { return nodes_; }

 private:
  CountTable& mut(TableKind kind);
  std::optional<Integer> stored(TableKind kind, const Index& idx);
  void store(TableKind kind, const Index& idx, const Integer& v, Provenance prov);
  Integer y_pipeline(int k, int d);
  Integer c_pipeline(int k, int e);
  Integer alpha_search_value(int k, int q, int m);

  ResolverOptions opts_;
  CountTable p_{TableKind::P}, y_{TableKind::Y}, c_{TableKind::C}, alpha_{TableKind::ALPHA};
  std::unique_ptr<SocleReducer> reducer_;
  std::uint64_t nodes_ = 0;
};

}  // namespace hdp
