#include "hdpart/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "detail/augment.hpp"

namespace hdp {

namespace {

using detail::GradedPoset;

struct Universe {
  int n = 0;
  int max_deg = 0;
  std::vector<LatticePoint> points;  // sorted by (deg, lex)
  std::vector<std::vector<int>> lowers;
  GradedPoset poset;
};

void grow(int n, int i, long budget, int deg_left, std::vector<int>& cur, std::vector<LatticePoint>& out) {
  if (i == n) {
    out.emplace_back(cur);
    return;
  }
  for (int a = 0; a <= deg_left && (a + 1) <= budget; ++a) {
    cur[static_cast<std::size_t>(i)] = a;
    grow(n, i + 1, budget / (a + 1), deg_left - a, cur, out);
  }
  cur[static_cast<std::size_t>(i)] = 0;
}

// Every point that can sit in a partition of size d: its box has at most d cells.
Universe make_universe(int n, int d, int deg_cap) {
  Universe u;
  u.n = n;
  if (d <= 0) return u;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  grow(n, 0, d, deg_cap, cur, u.points);
  std::stable_sort(u.points.begin(), u.points.end(), [](const LatticePoint& a, const LatticePoint& b) {
    const int da = a.deg(), db = b.deg();
    return da != db ? da < db : a < b;
  });
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < u.points.size(); ++i) index.emplace(u.points[i].coords, static_cast<int>(i));

  const std::size_t np = u.points.size();
  u.lowers.assign(np, {});
  u.poset.degree.resize(np);
  u.poset.uppers.assign(np, {});
  u.poset.nlower.assign(np, 0);
  for (std::size_t i = 0; i < np; ++i) {
    const auto& p = u.points[i];
    u.poset.degree[i] = p.deg();
    u.max_deg = std::max(u.max_deg, u.poset.degree[i]);
    auto c = p.coords;
    for (int j = 0; j < n; ++j) {
      auto& cj = c[static_cast<std::size_t>(j)];
      if (cj > 0) {
        --cj;
        const int lo = index.at(c);
        u.lowers[i].push_back(lo);
        u.poset.uppers[static_cast<std::size_t>(lo)].push_back(static_cast<int>(i));
        ++cj;
      }
    }
    u.poset.nlower[i] = static_cast<int>(u.lowers[i].size());
    if (u.poset.nlower[i] == 0) u.poset.roots.push_back(static_cast<int>(i));
  }
  return u;
}

struct CountTally {
  std::uint64_t count = 0;
  CountTally& operator+=(const CountTally& o) {
    count += o.count;
    return *this;
  }
};

struct ConstraintPolicy {
  const Universe* u = nullptr;
  const ConstraintSpec* spec = nullptr;
  const std::function<void(const std::vector<int>&)>* visit = nullptr;

  std::vector<int> h;
  std::vector<int> up;
  std::vector<int> unc;
  std::vector<int> stack;
  int size = 0;
  int tail = 0;
  CountTally tally;

  ConstraintPolicy(const Universe& uni, const ConstraintSpec& s) : u(&uni), spec(&s) {
    const std::size_t layers = static_cast<std::size_t>(std::max(uni.max_deg, 3)) + 2;
    h.assign(layers, 0);
    unc.assign(layers, 0);
    up.assign(uni.points.size(), 0);
  }

  int deg(int p) const { return u->poset.degree[static_cast<std::size_t>(p)]; }
  int top() const { return stack.empty() ? -1 : deg(stack.back()); }

  void push(int p) {
    const int g = deg(p);
    stack.push_back(p);
    ++size;
    ++h[static_cast<std::size_t>(g)];
    if (g >= 3) ++tail;
    for (int l : u->lowers[static_cast<std::size_t>(p)])
      if (up[static_cast<std::size_t>(l)]++ == 0) --unc[static_cast<std::size_t>(g - 1)];
    ++unc[static_cast<std::size_t>(g)];
  }

  void pop(int p) {
    const int g = deg(p);
    --unc[static_cast<std::size_t>(g)];
    for (int l : u->lowers[static_cast<std::size_t>(p)])
      if (--up[static_cast<std::size_t>(l)] == 0) ++unc[static_cast<std::size_t>(g - 1)];
    if (g >= 3) --tail;
    --h[static_cast<std::size_t>(g)];
    --size;
    stack.pop_back();
  }

  // Cells still needed to cover the open socle layers, given each new point
  // of degree j covers at most min(j, n) points below it.
  long socle_need(int g) const {
    const int s = *spec->min_socle_degree;
    long need = 0;
    auto cover = [&](int below) -> long {
      if (below < 0 || below >= s) return 0;
      const int c = unc[static_cast<std::size_t>(below)];
      if (c == 0) return 0;
      const int cap = std::min(below + 1, u->n);
      if (cap <= 0 || below + 1 > u->max_deg) return 1L << 40;
      return (c + cap - 1) / cap;
    };
    need += cover(g - 1);
    need += cover(g);
    return need;
  }

  bool viable() const {
    const int d = spec->size;
    if (size > d) return false;
    const long remaining = d - size;
    const int g = top();
    if (spec->embedding_dim) {
      const int e = *spec->embedding_dim;
      if (g >= 2 ? h[1] != e : (h[1] > e || remaining < e - h[1])) return false;
    }
    if (spec->quadric_count) {
      const int q = *spec->quadric_count;
      if (g >= 3 ? h[2] != q : (h[2] > q || remaining < q - h[2])) return false;
    }
    if (spec->tail_mass && tail > *spec->tail_mass) return false;
    if (spec->length) {
      const int l = *spec->length;
      if (g > l || (g < l && remaining < l - std::max(g, 0))) return false;
    }
    if (spec->hilbert_samuel) {
      const auto& H = *spec->hilbert_samuel;
      if (g >= static_cast<int>(H.size())) return false;
      long deficit = 0;
      for (std::size_t i = 0; i < H.size(); ++i) {
        const int have = h[i];
        if (static_cast<int>(i) < g ? have != H[i] : have > H[i]) return false;
        deficit += H[i] - have;
      }
      if (deficit > remaining) return false;
    }
    if (spec->min_socle_degree) {
      const int s = *spec->min_socle_degree;
      for (int j = 0; j <= g - 2 && j < s; ++j)
        if (unc[static_cast<std::size_t>(j)] != 0) return false;
      if (socle_need(g) > remaining) return false;
    }
    return true;
  }

  bool full() const { return size == spec->size; }

  void accept() {
    const int g = top();
    if (spec->embedding_dim && h[1] != *spec->embedding_dim) return;
    if (spec->quadric_count && h[2] != *spec->quadric_count) return;
    if (spec->tail_mass && tail != *spec->tail_mass) return;
    if (spec->length && g != *spec->length) return;
    if (spec->hilbert_samuel) {
      const auto& H = *spec->hilbert_samuel;
      if (g + 1 != static_cast<int>(H.size())) return;
      for (std::size_t i = 0; i < H.size(); ++i)
        if (h[i] != H[i]) return;
    }
    if (spec->min_socle_degree) {
      for (int j = 0; j <= g && j < *spec->min_socle_degree; ++j)
        if (unc[static_cast<std::size_t>(j)] != 0) return;
    }
    ++tally.count;
    if (visit) (*visit)(stack);
  }
};

int degree_cap(const ConstraintSpec& spec) {
  int cap = std::max(spec.size - 1, 0);
  if (spec.length) cap = std::min(cap, *spec.length);
  if (spec.hilbert_samuel) cap = std::min(cap, static_cast<int>(spec.hilbert_samuel->size()) - 1);
  return std::max(cap, 0);
}

void check_spec(int n, const ConstraintSpec& spec) {
  if (n < 0) throw DomainError("negative dimension");
  if (spec.size < 0) throw DomainError("negative size");
}

}  // namespace

Integer count_constrained(int n, const ConstraintSpec& spec, const EnumerationOptions& opts) {
  check_spec(n, spec);
  const Universe u = make_universe(n, spec.size, degree_cap(spec));
  ConstraintPolicy proto(u, spec);
  detail::NodeBudget budget(opts.max_nodes);
  auto tally = detail::run_search(u.poset, proto, opts.threads, budget);
  return Integer(static_cast<unsigned long>(tally.count));
}

Integer count_partitions(int n, int d, const EnumerationOptions& opts) {
  ConstraintSpec spec;
  spec.size = d;
  return count_constrained(n, spec, opts);
}

void for_each_partition(int n, const ConstraintSpec& spec, const std::function<void(const Partition&)>& visit,
                        const EnumerationOptions& opts) {
  check_spec(n, spec);
  const Universe u = make_universe(n, spec.size, degree_cap(spec));
  std::function<void(const std::vector<int>&)> raw = [&](const std::vector<int>& idx) {
    std::vector<LatticePoint> pts;
    pts.reserve(idx.size());
    for (int i : idx) pts.push_back(u.points[static_cast<std::size_t>(i)]);
    visit(Partition::from_points(n, std::move(pts)));
  };
  ConstraintPolicy proto(u, spec);
  proto.visit = &raw;
  detail::NodeBudget budget(opts.max_nodes);
  detail::run_search(u.poset, proto, 1, budget);
}

Integer oracle_y(int k, int d, const EnumerationOptions& opts) {
  ConstraintSpec s;
  s.size = d;
  s.embedding_dim = k;
  return count_constrained(k, s, opts);
}

Integer oracle_c(int k, int e, const EnumerationOptions& opts) {
  // The single point in dimension 0 counts by convention (c_0^0 = 1).
  if (k == 0 && e == 0) return 1;
  ConstraintSpec s;
  s.size = 1 + k + e;
  s.embedding_dim = k;
  s.min_socle_degree = 2;
  return count_constrained(k, s, opts);
}

Integer oracle_alpha(int k, int q, int m, std::optional<int> length, const EnumerationOptions& opts) {
  if (k == 0 && q == 0 && m == 0) return 1;
  ConstraintSpec s;
  s.size = 1 + k + q + m;
  s.embedding_dim = k;
  s.quadric_count = q;
  s.tail_mass = m;
  s.min_socle_degree = 3;
  s.length = length;
  return count_constrained(k, s, opts);
}

Integer oracle_alpha_hilbert(const std::vector<int>& h, const EnumerationOptions& opts) {
  if (h.empty() || h[0] != 1) throw DomainError("Hilbert-Samuel function must start with 1");
  ConstraintSpec s;
  s.size = std::accumulate(h.begin(), h.end(), 0);
  s.hilbert_samuel = h;
  s.min_socle_degree = 3;
  const int k = h.size() > 1 ? h[1] : 0;
  return count_constrained(k, s, opts);
}

}  // namespace hdp
