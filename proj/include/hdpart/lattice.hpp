#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hdp {

struct LatticePoint {
  std::vector<int> coords;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<int> c);
  LatticePoint(std::initializer_list<int> c) : LatticePoint(std::vector<int>(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  int deg() const;
  // Componentwise <=, i.e. divisibility of the corresponding monomials.
  bool divides(const LatticePoint& other) const;

  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;
};

std::string to_string(const LatticePoint& p);

class Partition {
 public:
  explicit Partition(int n = 0) : n_(n) {}

  // Sorts and deduplicates; throws DomainError unless downward closed.
  static Partition from_points(int n, std::vector<LatticePoint> points);

  int ambient_dim() const { return n_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::optional<int> length() const;
  const std::vector<LatticePoint>& points() const { return points_; }
  bool contains(const LatticePoint& p) const;

  bool operator==(const Partition&) const = default;

 private:
  int n_;
  std::vector<LatticePoint> points_;

  friend Partition apolar_closure(int, const std::vector<LatticePoint>&);
};

// An antichain under the componentwise order.
class AdmissibleSet {
 public:
  explicit AdmissibleSet(int n = 0) : n_(n) {}
  static AdmissibleSet from_points(int n, std::vector<LatticePoint> points);

  int ambient_dim() const { return n_; }
  const std::vector<LatticePoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  bool operator==(const AdmissibleSet&) const = default;

 private:
  int n_;
  std::vector<LatticePoint> points_;
};

struct HilbertSamuel {
  std::vector<int> values;
  int embedding_dim() const { return values.size() > 1 ? values[1] : 0; }
  long total() const;
  bool operator==(const HilbertSamuel&) const = default;
};

struct SocleType {
  std::vector<int> values;
  bool operator==(const SocleType&) const = default;
};

Partition apolar_closure(int n, const std::vector<LatticePoint>& points);
inline Partition apolar_closure(const AdmissibleSet& s) { return apolar_closure(s.ambient_dim(), s.points()); }

AdmissibleSet socle(const Partition& lambda);
HilbertSamuel hilbert_samuel(const Partition& lambda);
SocleType socle_type(const Partition& lambda);
int embedding_dimension(const Partition& lambda);

struct Orbit {
  std::vector<LatticePoint> representative;
  std::uint64_t orbit_size = 0;
};

inline constexpr int kDefaultPermutationCeiling = 12;

// Least image (as a sorted point list) over all coordinate permutations.
Orbit canonical_orbit(const std::vector<LatticePoint>& points, int n,
                      int ceiling = kDefaultPermutationCeiling);

// Every distinct image of the set under coordinate permutations, sorted.
std::vector<std::vector<LatticePoint>> orbit_members(const std::vector<LatticePoint>& points, int n,
                                                     int ceiling = kDefaultPermutationCeiling);

LatticePoint permute(const LatticePoint& p, const std::vector<int>& perm);

}  // namespace hdp
