#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cbsheaf/godement.hpp"
#include "cbsheaf/sheaf.hpp"
#include "cbsheaf/verdict.hpp"

namespace cbsheaf {

/// Hom(T, C^•) for a test object T and a Godement resolution, with the
/// F term dropped.
struct ExtComplex {
  SheafPtr test;
  std::vector<HomSpace> homs;      ///< homs[k] = Hom(T, C^k)
  std::vector<std::size_t> degrees;
  /// alphas[k] = α_{k+1} : Hom(T, C^k) -> Hom(T, C^{k+1}), composition with
  /// δ_{k+1}, in the basis of each HomSpace. One fewer than the terms.
  std::vector<RatMatrix> alphas;
  bool terminated = false;
};

ExtComplex ext_complex(const SheafPtr& test, const GodementResolution& r);
/// ext_complex with T = ι_x(Q).
ExtComplex hom_into_resolution(std::size_t x, const GodementResolution& r);

struct ExtReport {
  std::map<std::size_t, std::size_t> ext_dims;
  bool terminated = false;
  std::size_t resolution_length = 0;

  /// Highest degree with a nonzero group, if any.
  [[nodiscard]] std::optional<std::size_t> top_degree() const;
};

/// Degrees whose Ext group is determined by the complex: all of them when the
/// resolution terminated, otherwise k with k + 1 < length.
std::size_t available_degrees(const ExtComplex& c);

/// Ext^k for k = 0..max_degree. Throws Error("insufficient resolution
/// length ...") when the complex does not determine every requested degree.
ExtReport ext_groups(const ExtComplex& c, std::size_t max_degree);
/// Every degree the complex determines.
ExtReport ext_groups(const ExtComplex& c);
/// Builds a resolution of F long enough for `max_degree` and reports
/// Ext^k(ι_x(Q), F).
ExtReport ext_groups(const SheafPtr& f, std::size_t x, std::size_t max_degree);

struct DimensionOptions {
  std::size_t max_len = 0;  ///< 0: default_max_len of the base
  std::size_t random_sheaves = 0;
  std::size_t random_max_dim = 2;
  std::uint64_t seed = 0;
};

/// A named test object or sheaf, as scanned for lower bounds.
struct NamedSheaf {
  std::string name;
  SheafPtr sheaf;
};

/// Skyscrapers "skyscraper:x" for every point, then simples "simple:x" for
/// every point of a singleton cluster.
std::vector<NamedSheaf> test_family(const SpacePtr& s);

/// Upper bound from the resolution length, lower bound from Ext against the
/// test family and the constant sheaf.
DimensionVerdict injective_dimension_bounds(const SheafPtr& f, const DimensionOptions& options = {},
                                            const std::string& name = "F");

/// sup ID(F) over all sheaves on s, bounded structurally when s is scattered
/// and from below by scanning cQ, skyscrapers, simples and seeded random
/// sheaves.
DimensionVerdict category_dimension(const SpacePtr& s, const DimensionOptions& options = {});

struct HomologycharDegree {
  std::size_t k = 0;
  std::size_t hom_dim = 0;     ///< dim Hom(ι_x Q, C^k)
  std::size_t factor_dim = 0;  ///< dim F_x for k = 0, dim (coker δ_{k-1})_x otherwise
  bool dims_match = false;
  bool evaluation_iso = false;  ///< evaluating at x onto the x-factor is bijective
  /// α_{k+1} agrees with the x-factor inclusion; nullopt for the last term.
  std::optional<bool> alpha_matches;
};

struct HomologycharReport {
  std::size_t point = 0;
  std::vector<HomologycharDegree> degrees;
  bool ok = true;
};

/// Compares Hom(ι_x Q, C^k) with the x-factor of C^k, which is F_x for k = 0
/// and (coker δ_{k-1})_x afterwards, in every degree of the resolution.
/// Throws Error unless {x} is closed.
HomologycharReport homologychar_check(const GodementResolution& r, std::size_t x);

}  // namespace cbsheaf
