#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cbsheaf/matrix.hpp"

namespace cbsheaf {

struct EliminationOptions {
  /// Matrices at or above this density are reduced with dense storage.
  double dense_threshold = 0.25;
};

struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;

  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form. The result is unique, so the sparse and dense
/// routes agree entry for entry; `rref` only picks which one runs.
RowEchelon rref(const RatMatrix& m, const EliminationOptions& options = {});
RowEchelon rref_sparse(const RatMatrix& m);
RowEchelon rref_dense(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// A subspace of Q^ambient_dim, spanned by the (independent) columns of basis.
struct Subspace {
  std::size_t ambient_dim = 0;
  RatMatrix basis;

  [[nodiscard]] std::size_t dim() const { return basis.cols(); }
};

Subspace kernel_basis(const RatMatrix& m);
/// Pivot columns of m, in order.
Subspace image_basis(const RatMatrix& m);

/// Cokernel of a matrix m : Q^c -> Q^r.
///
/// The representative quotient is the coordinate projection onto the
/// non-pivot coordinates of the row-reduced image basis: a vector is first
/// reduced against the image basis (clearing all pivot coordinates) and the
/// remaining coordinates are read off. `section` is the coordinate inclusion
/// back, so projection * section = I.
struct Cokernel {
  RatMatrix projection;  ///< dim x r, kernel exactly image(m)
  RatMatrix section;     ///< r x dim
  RatMatrix relations;   ///< r x rank(m), reduced basis of image(m)

  [[nodiscard]] std::size_t dim() const { return projection.rows(); }
  [[nodiscard]] std::size_t ambient_dim() const { return projection.cols(); }
};

Cokernel cokernel(const RatMatrix& m);

/// The unique g with g * from.projection = to.projection * f.
/// Throws NotWellDefined if f does not carry from's relations into to's.
RatMatrix induced_map(const RatMatrix& f, const Cokernel& from, const Cokernel& to);

/// Some X with a * X = b (free variables set to zero), or nullopt when the
/// system is inconsistent.
std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b);

}  // namespace cbsheaf
