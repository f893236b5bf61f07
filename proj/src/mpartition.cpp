#include "hdpart/mpartition.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "detail/augment.hpp"
#include "hdpart/errors.hpp"

namespace hdp {

namespace {

using Mask = std::uint64_t;
constexpr int kMaxVariables = 10;  // C(11,2) = 55 quadrics fit in a mask

void monomials(int k, int deg, int i, std::vector<int>& cur, std::vector<LatticePoint>& out) {
  if (i == k - 1) {
    cur[static_cast<std::size_t>(i)] = deg;
    out.emplace_back(cur);
    return;
  }
  for (int a = deg; a >= 0; --a) {
    cur[static_cast<std::size_t>(i)] = a;
    monomials(k, deg - a, i + 1, cur, out);
  }
}

std::vector<LatticePoint> monomials(int k, int deg) {
  std::vector<LatticePoint> out;
  if (k == 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  monomials(k, deg, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Degree-2 points below p.
std::vector<LatticePoint> quadric_divisors(const LatticePoint& p) {
  std::vector<LatticePoint> out;
  const int k = p.dim();
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      if (p.coords[ui] < 1 || p.coords[uj] < 1 || (i == j && p.coords[ui] < 2)) continue;
      std::vector<int> c(static_cast<std::size_t>(k), 0);
      ++c[ui];
      ++c[uj];
      out.emplace_back(std::move(c));
    }
  return out;
}

// Quadrics, cubics and the permutation action on quadric indices for one k.
struct QuadricFrame {
  int k = 0;
  std::vector<LatticePoint> quadrics;
  std::vector<Mask> cubic_divisors;           // per cubic, quadric mask
  std::vector<std::vector<int>> perm_images;  // per permutation, quadric -> quadric

  explicit QuadricFrame(int kk) : k(kk) {
    if (k < 0 || k > kMaxVariables) throw DomainError("quadric orbits need 0 <= k <= 10");
    quadrics = monomials(k, 2);
    auto index = [&](const LatticePoint& p) {
      return static_cast<int>(std::lower_bound(quadrics.begin(), quadrics.end(), p) - quadrics.begin());
    };
    for (const auto& c : monomials(k, 3)) {
      Mask m = 0;
      for (const auto& d : quadric_divisors(c)) m |= Mask{1} << index(d);
      cubic_divisors.push_back(m);
    }
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> img;
      for (const auto& p : quadrics) {
        std::vector<int> c(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = p.coords[static_cast<std::size_t>(i)];
        img.push_back(index(LatticePoint(std::move(c))));
      }
      perm_images.push_back(std::move(img));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  Mask mask_of(const std::vector<LatticePoint>& U) const {
    Mask m = 0;
    for (const auto& p : U) {
      auto it = std::lower_bound(quadrics.begin(), quadrics.end(), p);
      if (p.dim() != k || p.deg() != 2 || it == quadrics.end() || *it != p)
        throw DomainError("expected degree-2 points in " + std::to_string(k) + " variables");
      m |= Mask{1} << (it - quadrics.begin());
    }
    return m;
  }

  bool stable(Mask U) const {
    Mask certified = 0;
    for (Mask c : cubic_divisors)
      if ((c & ~U) == 0) certified |= c;
    return (U & ~certified) == 0;
  }

  Mask image(Mask U, const std::vector<int>& img) const {
    Mask out = 0;
    for (std::size_t i = 0; i < img.size(); ++i)
      if (U >> i & 1) out |= Mask{1} << img[i];
    return out;
  }

  bool canonical(Mask U) const {
    for (const auto& img : perm_images)
      if (image(U, img) < U) return false;
    return true;
  }

  std::vector<LatticePoint> points(Mask U) const {
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < quadrics.size(); ++i)
      if (U >> i & 1) out.push_back(quadrics[i]);
    return out;
  }
};

int support_of(const std::vector<LatticePoint>& U, int k) {
  int s = 0;
  for (int i = 0; i < k; ++i)
    for (const auto& p : U)
      if (p.coords[static_cast<std::size_t>(i)] > 0) {
        ++s;
        break;
      }
  return s;
}

// q-subsets of the quadrics, ascending as masks.
template <class F>
void for_each_subset(int n, int q, F&& f) {
  if (q < 0 || q > n) return;
  std::vector<int> idx(static_cast<std::size_t>(q));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Mask m = 0;
    for (int i : idx) m |= Mask{1} << i;
    f(m);
    int i = q - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - q + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < q; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Degree >= 3 part of the bounding region as a graded poset.
struct Region {
  int q = 0;
  int ell = 0;
  std::vector<LatticePoint> pts;  // sorted by (deg, lex)
  detail::GradedPoset poset;
  std::vector<long> layer;                  // region points per degree
  std::vector<std::vector<int>> covers;     // cubic -> quadric slots in U
  std::vector<int> last_cover;              // quadric slot -> largest covering cubic index
  std::vector<long> remaining_from;         // points with index >= i
};

Region make_region(const std::vector<LatticePoint>& U, int k, int ell) {
  Region r;
  r.q = static_cast<int>(U.size());
  r.ell = ell;
  r.layer.assign(static_cast<std::size_t>(ell) + 2, 0);
  for (int d = 3; d <= ell; ++d)
    for (const auto& p : monomials(k, d)) {
      bool ok = true;
      for (const auto& dq : quadric_divisors(p))
        if (!std::binary_search(U.begin(), U.end(), dq)) {
          ok = false;
          break;
        }
      if (ok) {
        r.pts.push_back(p);
        ++r.layer[static_cast<std::size_t>(d)];
      }
    }
  const std::size_t n = r.pts.size();
  r.poset.degree.resize(n);
  r.poset.uppers.assign(n, {});
  r.poset.nlower.assign(n, 0);
  r.covers.assign(n, {});
  r.last_cover.assign(U.size(), -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = r.pts[i];
    const int d = p.deg();
    r.poset.degree[i] = d;
    if (d == 3) {
      for (const auto& dq : quadric_divisors(p)) {
        const int slot = static_cast<int>(std::lower_bound(U.begin(), U.end(), dq) - U.begin());
        r.covers[i].push_back(slot);
        r.last_cover[static_cast<std::size_t>(slot)] = static_cast<int>(i);
      }
    } else {
      auto c = p.coords;
      for (auto& ci : c) {
        if (ci == 0) continue;
        --ci;
        auto it = std::lower_bound(r.pts.begin(), r.pts.begin() + static_cast<long>(i), LatticePoint(c),
                                   [](const LatticePoint& a, const LatticePoint& b) {
                                     return a.deg() != b.deg() ? a.deg() < b.deg() : a < b;
                                   });
        r.poset.uppers[static_cast<std::size_t>(it - r.pts.begin())].push_back(static_cast<int>(i));
        ++r.poset.nlower[i];
        ++ci;
      }
    }
    if (r.poset.nlower[i] == 0) r.poset.roots.push_back(static_cast<int>(i));
  }
  for (auto& u : r.poset.uppers) std::sort(u.begin(), u.end());
  r.remaining_from.assign(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) r.remaining_from[i] = r.remaining_from[i + 1] + 1;
  return r;
}

struct MTally {
  std::uint64_t count = 0;
  std::map<std::vector<int>, std::uint64_t> by_h;
  MTally& operator+=(const MTally& o) {
    count += o.count;
    for (const auto& [h, c] : o.by_h) by_h[h] += c;
    return *this;
  }
};

struct MPolicy {
  const Region* r = nullptr;
  int k = 0;
  int m = 0;
  const std::vector<int>* target = nullptr;
  bool macaulay = true;
  bool split = false;

  std::vector<int> h;
  std::vector<int> cover;
  std::vector<int> stack;
  int size = 0;
  int uncovered = 0;
  MTally tally;

  MPolicy(const Region& reg, int kk, int mm, const std::vector<int>* t, bool mac, bool sp)
      : r(&reg), k(kk), m(mm), target(t), macaulay(mac), split(sp) {
    h.assign(static_cast<std::size_t>(reg.ell) + 1, 0);
    cover.assign(static_cast<std::size_t>(reg.q), 0);
    uncovered = reg.q;
  }

  int deg(int p) const { return r->poset.degree[static_cast<std::size_t>(p)]; }

  void push(int p) {
    stack.push_back(p);
    ++size;
    ++h[static_cast<std::size_t>(deg(p))];
    for (int j : r->covers[static_cast<std::size_t>(p)])
      if (cover[static_cast<std::size_t>(j)]++ == 0) --uncovered;
  }

  void pop(int p) {
    for (int j : r->covers[static_cast<std::size_t>(p)])
      if (--cover[static_cast<std::size_t>(j)] == 0) ++uncovered;
    --h[static_cast<std::size_t>(deg(p))];
    --size;
    stack.pop_back();
  }

  long layer_count(int d) const { return d == 2 ? r->q : h[static_cast<std::size_t>(d)]; }

  // Upper bound on points that can still be added above the current top.
  long capacity(int g, int last) const {
    long room = r->remaining_from[static_cast<std::size_t>(last + 1)];
    if (!macaulay) return room;
    long total = 0;
    long cap = 0;
    if (g < 3) {
      cap = std::min(r->layer[3], macaulay_bound(r->q, 2));
      total = cap;
      g = 3;
    } else {
      cap = std::min(r->layer[static_cast<std::size_t>(g)], macaulay_bound(layer_count(g - 1), g - 1));
      total = cap - h[static_cast<std::size_t>(g)];
    }
    for (int j = g + 1; j <= r->ell; ++j) {
      cap = std::min(r->layer[static_cast<std::size_t>(j)], macaulay_bound(cap, j - 1));
      total += cap;
    }
    return std::min(room, total);
  }

  bool viable() const {
    if (size > m) return false;
    const int g = stack.empty() ? 2 : deg(stack.back());
    const int last = stack.empty() ? -1 : stack.back();
    const long remaining = m - size;
    if (remaining < r->ell - g) return false;
    if (uncovered) {
      if (g >= 4 || 3 * remaining < uncovered) return false;
      for (std::size_t j = 0; j < cover.size(); ++j)
        if (cover[j] == 0 && r->last_cover[j] <= last) return false;
    }
    if (target) {
      const auto& T = *target;
      for (int d = 3; d < g; ++d)
        if (h[static_cast<std::size_t>(d)] != T[static_cast<std::size_t>(d)]) return false;
      if (g >= 3 && h[static_cast<std::size_t>(g)] > T[static_cast<std::size_t>(g)]) return false;
    }
    return capacity(g, last) >= remaining;
  }

  bool full() const { return size == m; }

  void accept() {
    if (uncovered || stack.empty() || deg(stack.back()) != r->ell) return;
    if (target) {
      for (int d = 3; d <= r->ell; ++d)
        if (h[static_cast<std::size_t>(d)] != (*target)[static_cast<std::size_t>(d)]) return;
    }
    ++tally.count;
    if (split) {
      std::vector<int> key{1, k, r->q};
      key.insert(key.end(), h.begin() + 3, h.end());
      ++tally.by_h[key];
    }
  }
};

struct Task {
  std::size_t rep = 0;
  int ell = 0;
  std::string id;
};

}  // namespace

bool m_stable(const std::vector<LatticePoint>& U, int k) {
  QuadricFrame f(k);
  return f.stable(f.mask_of(U));
}

std::vector<QuadricOrbit> orbit_reps(int k, int q) {
  QuadricFrame f(k);
  std::vector<QuadricOrbit> out;
  for_each_subset(static_cast<int>(f.quadrics.size()), q, [&](Mask U) {
    if (!f.stable(U) || !f.canonical(U)) return;
    auto orb = canonical_orbit(f.points(U), k);
    QuadricOrbit o;
    o.k = k;
    o.rep = std::move(orb.representative);
    o.orbit_size = orb.orbit_size;
    o.support = support_of(o.rep, k);
    out.push_back(std::move(o));
  });
  return out;
}

BoundingRegion bounding_region(const std::vector<LatticePoint>& U, int k, int ell) {
  if (ell < 3) throw DomainError("bounding region needs length >= 3");
  if (!m_stable(U, k)) throw DomainError("quadric set is not M-stable");
  auto sorted = U;
  std::sort(sorted.begin(), sorted.end());
  const Region r = make_region(sorted, k, ell);
  std::vector<LatticePoint> pts = monomials(k, 0);
  if (pts.empty()) pts.emplace_back();
  for (auto& p : monomials(k, 1)) pts.push_back(p);
  for (auto& p : sorted) pts.push_back(p);
  for (auto& p : r.pts) pts.push_back(p);
  return {Partition::from_points(k, std::move(pts)), sorted, ell};
}

long macaulay_bound(long a, int i) {
  if (a <= 0) return 0;
  if (i <= 0) return a > 0 ? 1 : 0;
  constexpr long kCap = 1L << 40;
  auto C = [](long n, long r) -> long {
    if (r < 0 || n < r) return 0;
    long v = 1;
    for (long j = 1; j <= r; ++j) {
      v = v * (n - r + j) / j;
      if (v > kCap) return kCap;
    }
    return v;
  };
  long out = 0;
  for (int j = i; j >= 1 && a > 0; --j) {
    long n = j;
    while (C(n + 1, j) <= a) ++n;
    a -= C(n, j);
    out += C(n + 1, j + 1);
    if (out > kCap) return kCap;
  }
  return out;
}

AlphaQuery AlphaQuery::from_hilbert(const std::vector<int>& h) {
  auto t = h;
  while (t.size() > 1 && t.back() == 0) t.pop_back();
  if (t.empty() || t[0] != 1) throw DomainError("Hilbert-Samuel function must start with 1");
  for (int v : t)
    if (v < 0) throw DomainError("negative Hilbert-Samuel value");
  AlphaQuery a;
  a.k = t.size() > 1 ? t[1] : 0;
  a.q = t.size() > 2 ? t[2] : 0;
  for (std::size_t i = 3; i < t.size(); ++i) a.m += t[i];
  if (t.size() > 3) a.length = static_cast<int>(t.size()) - 1;
  a.hilbert = t;
  return a;
}

std::string query_id(const AlphaQuery& a) {
  std::string s = "alpha:" + std::to_string(a.k) + "," + std::to_string(a.q) + "," + std::to_string(a.m);
  if (a.length) s += ",l=" + std::to_string(*a.length);
  if (a.hilbert) {
    s += ",h=";
    for (std::size_t i = 0; i < a.hilbert->size(); ++i) s += (i ? "." : "") + std::to_string((*a.hilbert)[i]);
  }
  return s;
}

AlphaResult alpha_search(const AlphaQuery& query, const AlphaOptions& opts, bool split_by_hilbert) {
  const int k = query.k, q = query.q, m = query.m;
  if (k < 0 || q < 0 || m < 0) throw DomainError("negative alpha index");
  AlphaResult res;
  res.value = 0;
  if (query.hilbert && query.hilbert->size() <= 3) {
    // No points of degree >= 3: only the single point survives.
    if (query.hilbert->size() == 1) {
      res.value = 1;
      if (split_by_hilbert) res.by_hilbert[*query.hilbert] = 1;
    }
    return res;
  }
  if (k == 0 && q == 0 && m == 0 && !query.length) {
    res.value = 1;
    if (split_by_hilbert) res.by_hilbert[{1}] = 1;
    return res;
  }
  // Every quadric needs a cubic above it and a cubic has three quadric divisors.
  if (k == 0 || m == 0 || q < k || q > k * (k + 1) / 2 || q > 3 * m) return res;
  if (query.length && (*query.length < 3 || *query.length > m + 2)) return res;
  if (k > kMaxVariables) throw DomainError("alpha search supports k <= 10");

  std::vector<std::vector<LatticePoint>> reps;
  std::vector<std::uint64_t> weights;
  if (opts.use_orbits) {
    for (auto& o : orbit_reps(k, q))
      if (o.support == k) {
        reps.push_back(std::move(o.rep));
        weights.push_back(o.orbit_size);
      }
  } else {
    QuadricFrame f(k);
    for_each_subset(static_cast<int>(f.quadrics.size()), q, [&](Mask U) {
      if (!f.stable(U)) return;
      auto pts = f.points(U);
      if (support_of(pts, k) != k) return;
      reps.push_back(std::move(pts));
      weights.push_back(1);
    });
  }
  for (auto& r : reps) std::sort(r.begin(), r.end());

  std::vector<int> lengths;
  if (query.length) {
    lengths.push_back(*query.length);
  } else {
    for (int l = 3; l <= m + 2; ++l) lengths.push_back(l);
  }
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (int l : lengths) tasks.push_back({i, l, "r" + std::to_string(i) + "/l" + std::to_string(l)});

  if (opts.on_plan) {
    std::vector<std::string> ids;
    for (const auto& t : tasks) ids.push_back(t.id);
    opts.on_plan(ids);
  }

  std::vector<int> target;
  if (query.hilbert) {
    target = *query.hilbert;
    if (target[1] != k || target[2] != q) throw DomainError("Hilbert-Samuel target disagrees with (k,q)");
  }

  detail::NodeBudget budget(opts.max_nodes);
  std::vector<AlphaTaskRecord> records(tasks.size());
  std::vector<MTally> tallies(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex observer_mu;
  std::exception_ptr failure;

  auto work = [&] {
    for (std::size_t i; !stop && (i = next++) < tasks.size();) {
      const auto& t = tasks[i];
      auto& rec = records[i];
      rec.id = t.id;
      rec.rep_index = t.rep;
      rec.length = t.ell;
      rec.weight = weights[t.rep];
      try {
        if (auto it = opts.completed.find(t.id); it != opts.completed.end() && !split_by_hilbert) {
          rec.count = it->second;
          rec.resumed = true;
          continue;
        }
        const Region region = make_region(reps[t.rep], k, t.ell);
        MPolicy proto(region, k, m, query.hilbert ? &target : nullptr, opts.macaulay, split_by_hilbert);
        detail::Augmenter<MPolicy> aug(region.poset, proto, budget);
        if (proto.viable()) aug.run(region.poset.roots, -1);
        tallies[i] = aug.policy().tally;
        rec.nodes = aug.nodes();
        rec.count = Integer(static_cast<unsigned long>(tallies[i].count));
        if (opts.observer) {
          std::lock_guard lock(observer_mu);
          opts.observer(rec);
        }
      } catch (...) {
        std::lock_guard lock(observer_mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(tasks.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Integer w(static_cast<unsigned long>(records[i].weight));
    res.value += w * records[i].count;
    res.nodes += records[i].nodes;
    for (const auto& [h, c] : tallies[i].by_h) res.by_hilbert[h] += w * Integer(static_cast<unsigned long>(c));
  }
  res.tasks = std::move(records);
  return res;
}

Integer alpha(int k, int q, int m, std::optional<int> length, const AlphaOptions& opts) {
  AlphaQuery a{k, q, m, length, std::nullopt};
  return alpha_search(a, opts).value;
}

Integer alpha_by_hilbert(const std::vector<int>& h, const AlphaOptions& opts) {
  return alpha_search(AlphaQuery::from_hilbert(h), opts).value;
}

std::map<std::vector<int>, Integer> alpha_hilbert_breakdown(int k, int q, int m, int ell, const AlphaOptions& opts) {
  AlphaQuery a{k, q, m, ell, std::nullopt};
  return alpha_search(a, opts, true).by_hilbert;
}

}  // namespace hdp
