#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cbsheaf/linear.hpp"
#include "cbsheaf/matrix.hpp"
#include "cbsheaf/space.hpp"

namespace cbsheaf {

using SpacePtr = std::shared_ptr<const FiniteSpace>;

/// Tag for constructors that skip the functoriality / naturality checks.
/// Only engine code that builds correct-by-construction data uses it.
struct Unchecked {};

/// A sheaf of finite-dimensional Q-vector spaces on a finite space.
///
/// On a finite space the stalk at x is the module of sections over U_x, so a
/// sheaf is the same thing as its stalks together with restriction maps
/// F_x -> F_y for every y in U_x, composing functorially. Sections over other
/// opens are derived (see `sections`).
class Sheaf {
 public:
  /// `res[x][k]` maps F_x to F_y for y = min_nbhd(x)[k]; the entry for y = x
  /// must be the identity. Throws Error when shapes or functoriality fail.
  Sheaf(SpacePtr base, std::vector<std::size_t> dims, std::vector<std::vector<RatMatrix>> res);
  Sheaf(Unchecked, SpacePtr base, std::vector<std::size_t> dims,
        std::vector<std::vector<RatMatrix>> res);

  [[nodiscard]] const FiniteSpace& base() const { return *base_; }
  [[nodiscard]] const SpacePtr& base_ptr() const { return base_; }
  [[nodiscard]] std::size_t stalk_dim(std::size_t x) const { return dims_.at(x); }
  [[nodiscard]] const std::vector<std::size_t>& stalk_dims() const { return dims_; }
  [[nodiscard]] std::size_t total_dim() const;
  [[nodiscard]] bool is_zero() const { return total_dim() == 0; }

  /// Restriction F_x -> F_y; throws Error unless y is in U_x.
  [[nodiscard]] const RatMatrix& res(std::size_t x, std::size_t y) const;
  /// All restrictions out of x, aligned with min_nbhd(x).
  [[nodiscard]] const std::vector<RatMatrix>& restrictions(std::size_t x) const { return res_.at(x); }

  /// Checks shapes, identities on the diagonal, and res_{y,z} res_{x,y} = res_{x,z}.
  void validate() const;

  friend bool operator==(const Sheaf& a, const Sheaf& b);

 private:
  SpacePtr base_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<RatMatrix>> res_;
};

using SheafPtr = std::shared_ptr<const Sheaf>;

/// A morphism of sheaves on the same base, given stalkwise.
class SheafMap {
 public:
  /// Throws Error on shape mismatch or when a naturality square fails.
  SheafMap(SheafPtr source, SheafPtr target, std::vector<RatMatrix> comps);
  SheafMap(Unchecked, SheafPtr source, SheafPtr target, std::vector<RatMatrix> comps);

  [[nodiscard]] const Sheaf& source() const { return *source_; }
  [[nodiscard]] const Sheaf& target() const { return *target_; }
  [[nodiscard]] const SheafPtr& source_ptr() const { return source_; }
  [[nodiscard]] const SheafPtr& target_ptr() const { return target_; }
  [[nodiscard]] const RatMatrix& comp(std::size_t x) const { return comps_.at(x); }
  [[nodiscard]] const std::vector<RatMatrix>& comps() const { return comps_; }

  /// Stalkwise injective / surjective.
  [[nodiscard]] bool is_mono() const;
  [[nodiscard]] bool is_epi() const;
  [[nodiscard]] bool is_zero() const;

  void validate() const;

 private:
  SheafPtr source_;
  SheafPtr target_;
  std::vector<RatMatrix> comps_;
};

/// g ∘ f.
SheafMap compose(const SheafMap& g, const SheafMap& f);
SheafMap identity_map(const SheafPtr& f);

Sheaf zero_sheaf(const SpacePtr& s);
/// cQ^d: every stalk Q^d, every restriction the identity.
Sheaf constant_sheaf(const SpacePtr& s, std::size_t d);
/// ι_x(Q^d): stalk Q^d on the closure of {x} (points y with x in U_y), zero elsewhere.
Sheaf skyscraper(const SpacePtr& s, std::size_t x, std::size_t d);
/// Stalk Q^d at x only, all restrictions zero.
Sheaf simple_sheaf(const SpacePtr& s, std::size_t x, std::size_t d);
/// Stalkwise direct sum; the stalk at x lists the summands in order.
Sheaf direct_sum(const SpacePtr& s, std::span<const Sheaf> summands);

/// F(U) as the space of compatible families (s_x)_{x in U} inside ⊕_{x in U} F_x.
/// Throws Error("not open") when U is not open.
Subspace sections(const Sheaf& f, const PointSet& u);

struct SheafKernel {
  SheafPtr sheaf;
  SheafMap inclusion;
};

struct SheafCokernel {
  SheafPtr sheaf;
  SheafMap projection;
  std::vector<Cokernel> stalks;
};

SheafKernel kernel(const SheafMap& f);
SheafCokernel cokernel(const SheafMap& f);

/// The vector space Hom(F, G). A morphism is vectorised by concatenating its
/// components in base point order, each row-major.
class HomSpace {
 public:
  HomSpace(SheafPtr source, SheafPtr target);

  [[nodiscard]] const Sheaf& source() const { return *source_; }
  [[nodiscard]] const Sheaf& target() const { return *target_; }
  [[nodiscard]] std::size_t dim() const { return basis_.cols(); }
  /// vector_size() x dim(); columns are vectorised basis morphisms.
  [[nodiscard]] const RatMatrix& basis() const { return basis_; }
  [[nodiscard]] std::size_t vector_size() const { return offsets_.back(); }
  [[nodiscard]] std::size_t offset(std::size_t x) const { return offsets_.at(x); }

  [[nodiscard]] SheafMap basis_map(std::size_t k) const;
  /// Interprets column `col` of `vectors` as a morphism (no naturality check).
  [[nodiscard]] SheafMap to_map(const RatMatrix& vectors, std::size_t col = 0) const;
  [[nodiscard]] RatMatrix vectorize(const SheafMap& f) const;
  /// Coordinates in `basis()` of the given vectorised morphisms (columns).
  /// Throws Error if some column is not a morphism.
  [[nodiscard]] RatMatrix coordinates(const RatMatrix& vectors) const;

 private:
  SheafPtr source_;
  SheafPtr target_;
  std::vector<std::size_t> offsets_;
  RatMatrix basis_;
};

HomSpace hom_sheaves(const SheafPtr& f, const SheafPtr& g);

/// Reproducible pseudo-random sheaf with stalk dimensions in [0, max_dim].
///
/// Points are visited cluster by cluster in order of increasing |U_x|. The
/// restrictions out of a cluster are a random map into the compatible
/// families over U_x minus the cluster, which makes functoriality automatic.
Sheaf random_sheaf(const SpacePtr& s, std::size_t max_dim, std::uint64_t seed);

}  // namespace cbsheaf
