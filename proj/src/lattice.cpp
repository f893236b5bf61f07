#include "hdpart/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hdpart/errors.hpp"

namespace hdp {

LatticePoint::LatticePoint(std::vector<int> c) : coords(std::move(c)) {
  for (int v : coords)
    if (v < 0) throw DomainError("lattice point with negative coordinate");
}

int LatticePoint::deg() const { return std::accumulate(coords.begin(), coords.end(), 0); }

bool LatticePoint::divides(const LatticePoint& other) const {
  if (coords.size() != other.coords.size()) return false;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] > other.coords[i]) return false;
  return true;
}

std::string to_string(const LatticePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.coords[i]);
  }
  return s + ")";
}

namespace {

void check_dims(int n, const std::vector<LatticePoint>& points) {
  if (n < 0) throw DomainError("negative ambient dimension");
  for (const auto& p : points)
    if (p.dim() != n) throw DomainError("point " + to_string(p) + " not in dimension " + std::to_string(n));
}

void sort_unique(std::vector<LatticePoint>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Partition Partition::from_points(int n, std::vector<LatticePoint> points) {
  check_dims(n, points);
  sort_unique(points);
  Partition lambda(n);
  lambda.points_ = std::move(points);
  // Closed iff every p - e_i (when nonnegative) is present.
  for (const auto& p : lambda.points_) {
    LatticePoint q = p;
    for (int i = 0; i < n; ++i) {
      if (q.coords[i] == 0) continue;
      --q.coords[i];
      if (!lambda.contains(q)) throw DomainError("point set is not downward closed at " + to_string(p));
      ++q.coords[i];
    }
  }
  return lambda;
}

std::optional<int> Partition::length() const {
  if (points_.empty()) return std::nullopt;
  int l = 0;
  for (const auto& p : points_) l = std::max(l, p.deg());
  return l;
}

bool Partition::contains(const LatticePoint& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

AdmissibleSet AdmissibleSet::from_points(int n, std::vector<LatticePoint> points) {
  check_dims(n, points);
  sort_unique(points);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      if (i != j && points[i].divides(points[j]))
        throw DomainError("not an antichain: " + to_string(points[i]) + " <= " + to_string(points[j]));
  AdmissibleSet s(n);
  s.points_ = std::move(points);
  return s;
}

long HilbertSamuel::total() const { return std::accumulate(values.begin(), values.end(), 0L); }

Partition apolar_closure(int n, const std::vector<LatticePoint>& points) {
  check_dims(n, points);
  std::set<LatticePoint> out;
  for (const auto& a : points) {
    // Odometer over the box [0, a].
    LatticePoint y(std::vector<int>(n, 0));
    while (true) {
      out.insert(y);
      int i = 0;
      while (i < n && y.coords[i] == a.coords[i]) y.coords[i++] = 0;
      if (i == n) break;
      ++y.coords[i];
    }
  }
  Partition lambda(n);
  lambda.points_.assign(out.begin(), out.end());
  return lambda;
}

AdmissibleSet socle(const Partition& lambda) {
  const int n = lambda.ambient_dim();
  std::vector<LatticePoint> maximal;
  for (const auto& p : lambda.points()) {
    LatticePoint q = p;
    bool is_max = true;
    for (int i = 0; i < n && is_max; ++i) {
      ++q.coords[i];
      if (lambda.contains(q)) is_max = false;
      --q.coords[i];
    }
    if (is_max) maximal.push_back(p);
  }
  return AdmissibleSet::from_points(n, std::move(maximal));
}

HilbertSamuel hilbert_samuel(const Partition& lambda) {
  HilbertSamuel h;
  for (const auto& p : lambda.points()) {
    const auto d = static_cast<std::size_t>(p.deg());
    if (h.values.size() <= d) h.values.resize(d + 1, 0);
    ++h.values[d];
  }
  return h;
}

SocleType socle_type(const Partition& lambda) {
  SocleType e;
  auto len = lambda.length();
  if (!len) return e;
  e.values.assign(static_cast<std::size_t>(*len) + 1, 0);
  const auto soc = socle(lambda);
  for (const auto& p : soc.points()) ++e.values[static_cast<std::size_t>(p.deg())];
  return e;
}

int embedding_dimension(const Partition& lambda) { return hilbert_samuel(lambda).embedding_dim(); }

LatticePoint permute(const LatticePoint& p, const std::vector<int>& perm) {
  LatticePoint q;
  q.coords.resize(p.coords.size());
  for (std::size_t i = 0; i < perm.size(); ++i) q.coords[static_cast<std::size_t>(perm[i])] = p.coords[i];
  return q;
}

namespace {

void check_ceiling(int n, int ceiling) {
  if (n > ceiling)
    throw ResourceLimitError("permutation ceiling exceeded: n = " + std::to_string(n) + " > " +
                             std::to_string(ceiling));
}

std::vector<LatticePoint> image(const std::vector<LatticePoint>& pts, const std::vector<int>& perm) {
  std::vector<LatticePoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(permute(p, perm));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Orbit canonical_orbit(const std::vector<LatticePoint>& points, int n, int ceiling) {
  check_ceiling(n, ceiling);
  check_dims(n, points);
  std::vector<LatticePoint> base = points;
  sort_unique(base);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Orbit o;
  o.representative = base;
  std::uint64_t total = 0, stab = 0;
  do {
    auto img = image(base, perm);
    ++total;
    if (img == base) ++stab;
    if (img < o.representative) o.representative = std::move(img);
  } while (std::next_permutation(perm.begin(), perm.end()));
  o.orbit_size = total / stab;
  return o;
}

std::vector<std::vector<LatticePoint>> orbit_members(const std::vector<LatticePoint>& points, int n,
                                                     int ceiling) {
  check_ceiling(n, ceiling);
  check_dims(n, points);
  std::set<std::vector<LatticePoint>> seen;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    seen.insert(image(points, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {seen.begin(), seen.end()};
}

}  // namespace hdp
