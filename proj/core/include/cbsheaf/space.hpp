#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cbsheaf {

/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<std::size_t>;

/// A finite topological space, stored through its minimal open
/// neighbourhoods U_x (the intersection of all opens containing x).
///
/// The opens are exactly the unions of the U_x, so the space is determined
/// by the preorder "y in U_x". The point order fixed at construction drives
/// every basis ordering downstream. Non-T0 spaces are allowed: points with
/// U_x = U_y form indiscrete clusters.
class FiniteSpace {
 public:
  FiniteSpace() = default;

  /// Builds a space from an explicit topology. `opens` must contain the empty
  /// set and the full set and be closed under pairwise union and intersection.
  static FiniteSpace from_open_sets(std::vector<std::string> points,
                                    const std::vector<std::vector<std::string>>& opens);
  /// Builds a space from U_x given per point (same order as `points`).
  static FiniteSpace from_min_nbhds(std::vector<std::string> points,
                                    const std::vector<std::vector<std::string>>& nbhds);
  static FiniteSpace from_min_nbhd_indices(std::vector<std::string> points,
                                           std::vector<PointSet> nbhds);

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] bool empty() const { return names_.empty(); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::string& name(std::size_t x) const { return names_.at(x); }
  [[nodiscard]] std::optional<std::size_t> find(const std::string& name) const;
  /// Throws Error("unknown point ...") for names not in the space.
  [[nodiscard]] std::size_t index_of(const std::string& name) const;
  [[nodiscard]] PointSet all_points() const;

  [[nodiscard]] const PointSet& min_nbhd(std::size_t x) const { return nbhd_.at(x); }
  /// y ∈ U_x: every open set containing x also contains y.
  [[nodiscard]] bool in_min_nbhd(std::size_t x, std::size_t y) const {
    return mask_[x * names_.size() + y] != 0;
  }
  /// Position of y inside min_nbhd(x), or nullopt.
  [[nodiscard]] std::optional<std::size_t> nbhd_position(std::size_t x, std::size_t y) const;

  /// Closure of {x}: all y with x in U_y.
  [[nodiscard]] PointSet closure(std::size_t x) const;
  [[nodiscard]] bool is_closed_point(std::size_t x) const;
  [[nodiscard]] bool is_open(const PointSet& set) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.names_ == b.names_ && a.nbhd_ == b.nbhd_;
  }

 private:
  FiniteSpace(std::vector<std::string> names, std::vector<PointSet> nbhds);

  std::vector<std::string> names_;
  std::vector<PointSet> nbhd_;
  std::vector<char> mask_;
};

// Standard spaces used throughout the tests and the model builder.
FiniteSpace empty_space();
/// Points p1..pn, every point open.
FiniteSpace discrete_space(std::size_t n);
/// Centre c (U_c = everything) with open leaves l1..lb: the finite shadow of
/// a convergent sequence.
FiniteSpace star_space(std::size_t leaves);
/// n points, only the trivial opens.
FiniteSpace indiscrete_space(std::size_t n);
/// Points a, b with opens {}, {a}, {a,b}.
FiniteSpace sierpinski_space();

/// Points of `subset` isolated in the subspace topology: U_x ∩ subset = {x}.
PointSet isolated_points(const FiniteSpace& s, const PointSet& subset);

/// X(0) ⊇ X(1) ⊇ ..., each level the previous minus its isolated points.
/// Recording stops at the first repeated level, so the last two levels are
/// equal.
struct CbFiltration {
  std::vector<PointSet> levels;

  /// Index of the first stable level.
  [[nodiscard]] std::size_t rank() const { return levels.size() - 2; }
  /// Level k, saturating at the stable level.
  [[nodiscard]] const PointSet& level(std::size_t k) const {
    return levels[k < levels.size() ? k : levels.size() - 1];
  }
  [[nodiscard]] const PointSet& stable() const { return levels.back(); }
};

CbFiltration cb_filtration(const FiniteSpace& s);
std::size_t cb_rank(const FiniteSpace& s);

struct CbDecomposition {
  PointSet scattered;
  PointSet hull;
};

CbDecomposition decompose(const FiniteSpace& s);
bool is_scattered(const FiniteSpace& s);

/// heights[x] = k iff x in X(k) \ X(k+1); nullopt for perfect-hull points.
struct HeightMap {
  std::vector<std::optional<std::size_t>> heights;

  [[nodiscard]] std::optional<std::size_t> operator[](std::size_t x) const { return heights.at(x); }
};

HeightMap heights(const FiniteSpace& s);
/// Throws Error("point in perfect hull") for points that are never removed.
std::size_t height(const FiniteSpace& s, std::size_t x);

/// Every point of height k >= 1 has at least two points of height k-1 in its
/// minimal neighbourhood.
bool is_branch_rich(const FiniteSpace& s);

/// Points (x,y) named "(x,y)", ordered lexicographically by (a-order, b-order);
/// U_(x,y) = U_x × U_y.
FiniteSpace product(const FiniteSpace& a, const FiniteSpace& b);
/// Points of a followed by points of b. Names are kept when the two name
/// sets are disjoint, otherwise suffixed with "#0" / "#1".
FiniteSpace disjoint_union(const FiniteSpace& a, const FiniteSpace& b);

}  // namespace cbsheaf
