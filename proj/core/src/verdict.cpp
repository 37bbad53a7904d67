#include "cbsheaf/verdict.hpp"

namespace cbsheaf {

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::exact: return "exact";
    case VerdictKind::bounds: return "bounds";
    case VerdictKind::infinite: return "infinite";
    case VerdictKind::conjectured_infinite: return "conjectured_infinite";
    case VerdictKind::trivial_category: return "trivial_category";
  }
  return "unknown";
}

std::string describe(const DimensionVerdict& v) {
  std::string out;
  switch (v.kind) {
    case VerdictKind::exact:
      out = "exact " + std::to_string(v.lower);
      break;
    case VerdictKind::bounds:
      out = "bounds [" + std::to_string(v.lower) + ", " +
            (v.upper ? std::to_string(*v.upper) : std::string("unbounded")) + "]";
      break;
    default:
      out = to_string(v.kind);
  }
  if (!v.citation.empty()) out += " (" + v.citation + ")";
  return out;
}

}  // namespace cbsheaf
