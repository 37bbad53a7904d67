#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "cbsheaf/ext.hpp"
#include "cbsheaf/godement.hpp"
#include "cbsheaf/matrix.hpp"
#include "cbsheaf/profinite.hpp"
#include "cbsheaf/sheaf.hpp"
#include "cbsheaf/space.hpp"
#include "cbsheaf/verdict.hpp"

namespace cbsheaf {

using json = nlohmann::json;

/// Reads and parses a JSON file; throws Error with the path on failure.
json read_json_file(const std::filesystem::path& path);
/// Writes `doc.dump(2)` plus a newline.
void write_json_file(const std::filesystem::path& path, const json& doc);

/// Rows of "p/q" strings.
json matrix_to_json(const RatMatrix& m);
/// Accepts rational strings or integers; checks the shape.
RatMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

/// Accepts {"points", "opens"} or {"points", "min_nbhd"}.
FiniteSpace space_from_json(const json& j);
/// Always the min_nbhd form, points sorted by name.
json space_to_json(const FiniteSpace& s);

/// {"stalk_dims": {"x": n}, "res": {"x->y": rows}}. Missing points have
/// zero stalks, missing blocks are zero, x->x blocks must be identities.
Sheaf sheaf_from_json(const json& j, const SpacePtr& s);
json sheaf_to_json(const Sheaf& f);

json resolution_to_json(const GodementResolution& r);
json verdict_to_json(const DimensionVerdict& v);
json summary_to_json(const CbSummary& s);
json ext_report_to_json(const std::string& point, const std::string& sheaf_ref, const ExtReport& report,
                        const DimensionVerdict& verdict);

}  // namespace cbsheaf
