#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace cbsheaf {

enum class VerdictKind { exact, bounds, infinite, conjectured_infinite, trivial_category };

std::string to_string(VerdictKind kind);

/// The test object that realised a lower bound: Ext^degree(test, sheaf) ≠ 0.
struct Witness {
  std::string sheaf;
  std::string test_object;
  std::size_t degree = 0;
};

/// An injective-dimension statement about a sheaf or a whole category.
struct DimensionVerdict {
  VerdictKind kind = VerdictKind::bounds;
  std::size_t lower = 0;
  std::optional<std::size_t> upper;  ///< nullopt: no upper bound known
  /// Theorem identifier for symbolic verdicts ("ID_CB", "ID_CB_infty",
  /// "Conject"); empty for computed ones.
  std::string citation;
  std::string provenance;
  std::optional<Witness> witness;

  /// The value for exact verdicts.
  [[nodiscard]] std::optional<std::size_t> exact() const {
    if (kind == VerdictKind::exact) return lower;
    return std::nullopt;
  }
};

std::string describe(const DimensionVerdict& v);

}  // namespace cbsheaf
