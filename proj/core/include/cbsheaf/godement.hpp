#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cbsheaf/sheaf.hpp"
#include "cbsheaf/space.hpp"

namespace cbsheaf {

/// The serration sheaf C⁰(F). Its stalk at x is ⊕_{y ∈ U_x} F_y with the
/// factors in base point order; restricting to z ∈ U_x keeps the factors
/// indexed by U_z.
Sheaf c0(const Sheaf& f);

/// Offset of the F_y factor inside C⁰(F)_x. Requires y ∈ U_x.
std::size_t c0_factor_offset(const Sheaf& f, std::size_t x, std::size_t y);

/// The unit F -> C⁰(F), s ↦ (res_{x→y} s)_{y ∈ U_x}. Stalkwise injective
/// because the y = x component is s itself.
SheafMap serration_unit(const SheafPtr& f);

/// C⁰(F) ≅ ⊕_y ι_y(F_y), with the product assembled from independently
/// built skyscrapers and the isomorphism matched factor by factor.
struct SkyscraperDecomposition {
  SheafPtr product;
  SheafMap iso;  ///< C⁰(F) -> product
};

SkyscraperDecomposition skyscraper_decomposition(const SheafPtr& f, const SheafPtr& c0f);

/// F -> C⁰ -> C¹ -> ... with C^{k+1} = C⁰(coker δ_k).
struct GodementResolution {
  SheafPtr source;
  std::vector<SheafPtr> terms;         ///< C^0 .. C^{L-1}
  std::vector<SheafMap> deltas;        ///< deltas[0] = δ₀ : F -> C⁰, deltas[k] : C^{k-1} -> C^k
  std::vector<SheafCokernel> cokers;   ///< cokers[k] = coker δ_k, with its projection from C^k
  std::vector<SheafMap> coker_monos;   ///< coker_monos[k] = δ'_{k+1} : coker δ_k -> C^{k+1}
  bool terminated = false;             ///< the last cokernel is zero

  [[nodiscard]] std::size_t length() const { return terms.size(); }
  [[nodiscard]] const FiniteSpace& base() const { return source->base(); }
};

/// |points| + 2: enough for any scattered finite space.
std::size_t default_max_len(const FiniteSpace& s);

/// Builds terms until a cokernel vanishes or `max_len` terms exist.
/// Running out of room is reported through `terminated`, not as an error.
GodementResolution build_resolution(const SheafPtr& f, std::size_t max_len);

struct SupportReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;  ///< (k, x) with C^k_x ≠ 0, x ∉ X(k)
};

/// Every term C^k vanishes off X(k).
SupportReport check_support(const GodementResolution& r, const CbFiltration& filt);

struct NonvanishingReport {
  bool ok = true;
  std::vector<std::size_t> checked;   ///< branch-rich points of height ≥ 1
  std::vector<std::size_t> skipped;   ///< points of height ≥ 1 with fewer than two branches
  std::vector<std::pair<std::size_t, std::size_t>> violations;  ///< (k, x) with (coker δ_{k-1})_x = 0
};

/// For each point x of height k ≥ 1 having at least two points of height
/// k-1 in U_x, (coker δ_{k-1})_x ≠ 0. The resolution must come from a
/// constant sheaf of positive rank; throws Error otherwise.
NonvanishingReport coker_nonvanishing(const GodementResolution& r, const HeightMap& heights);

}  // namespace cbsheaf
