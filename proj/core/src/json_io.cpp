#include "cbsheaf/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "cbsheaf/error.hpp"
#include "cbsheaf/rational.hpp"

namespace cbsheaf {

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json matrix_to_json(const RatMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.to_dense()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

RatMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw Error("matrix: expected " + std::to_string(rows) + " rows");
  }
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw Error("matrix: row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& v = j[r][c];
      if (v.is_string()) {
        m.set(r, c, parse_rational(v.get<std::string>()));
      } else if (v.is_number_integer()) {
        m.set(r, c, Rational(std::to_string(v.get<long long>())));
      } else {
        throw Error("matrix: entries must be rational strings or integers");
      }
    }
  }
  return m;
}

namespace {

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error(what + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

FiniteSpace space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points")) throw Error("space: missing \"points\"");
  auto points = string_list(j.at("points"), "points");
  const bool has_opens = j.contains("opens");
  const bool has_nbhd = j.contains("min_nbhd");
  if (has_opens == has_nbhd) throw Error("space: give exactly one of \"opens\" and \"min_nbhd\"");
  if (has_opens) {
    if (!j.at("opens").is_array()) throw Error("opens must be an array");
    std::vector<std::vector<std::string>> opens;
    for (const auto& o : j.at("opens")) opens.push_back(string_list(o, "open set"));
    return FiniteSpace::from_open_sets(std::move(points), opens);
  }
  const json& nb = j.at("min_nbhd");
  if (!nb.is_object()) throw Error("min_nbhd must be an object");
  for (const auto& [key, value] : nb.items()) {
    if (std::find(points.begin(), points.end(), key) == points.end()) {
      throw Error("min_nbhd: unknown point " + key);
    }
  }
  std::vector<std::vector<std::string>> nbhds;
  for (const auto& p : points) {
    if (!nb.contains(p)) throw Error("min_nbhd: missing entry for " + p);
    nbhds.push_back(string_list(nb.at(p), "min_nbhd entry"));
  }
  return FiniteSpace::from_min_nbhds(std::move(points), nbhds);
}

json space_to_json(const FiniteSpace& s) {
  std::vector<std::string> points = s.names();
  std::sort(points.begin(), points.end());
  json nb = json::object();
  for (std::size_t x = 0; x < s.size(); ++x) {
    std::vector<std::string> u;
    for (auto y : s.min_nbhd(x)) u.push_back(s.name(y));
    std::sort(u.begin(), u.end());
    nb[s.name(x)] = u;
  }
  return json{{"points", points}, {"min_nbhd", nb}};
}

Sheaf sheaf_from_json(const json& j, const SpacePtr& s) {
  if (!j.is_object() || !j.contains("stalk_dims")) throw Error("sheaf: missing \"stalk_dims\"");
  std::vector<std::size_t> dims(s->size(), 0);
  const json& sd = j.at("stalk_dims");
  if (!sd.is_object()) throw Error("stalk_dims must be an object");
  for (const auto& [name, value] : sd.items()) {
    if (!value.is_number_unsigned()) throw Error("stalk_dims: " + name + " needs a natural number");
    dims[s->index_of(name)] = value.get<std::size_t>();
  }

  std::vector<std::vector<RatMatrix>> res(s->size());
  for (std::size_t x = 0; x < s->size(); ++x) {
    for (auto y : s->min_nbhd(x)) {
      res[x].push_back(x == y ? RatMatrix::identity(dims[x]) : RatMatrix(dims[y], dims[x]));
    }
  }
  if (j.contains("res")) {
    const json& rj = j.at("res");
    if (!rj.is_object()) throw Error("res must be an object");
    for (const auto& [key, value] : rj.items()) {
      const auto arrow = key.find("->");
      if (arrow == std::string::npos) throw Error("res: key " + key + " is not of the form x->y");
      const std::size_t x = s->index_of(key.substr(0, arrow));
      const std::size_t y = s->index_of(key.substr(arrow + 2));
      const auto pos = s->nbhd_position(x, y);
      if (!pos) throw Error("res: " + key + " but " + s->name(y) + " is not in U_" + s->name(x));
      RatMatrix m = matrix_from_json(value, dims[y], dims[x]);
      if (x == y && !(m == res[x][*pos])) throw Error("res: " + key + " must be the identity");
      res[x][*pos] = std::move(m);
    }
  }
  return Sheaf(s, std::move(dims), std::move(res));
}

json sheaf_to_json(const Sheaf& f) {
  const FiniteSpace& s = f.base();
  json dims = json::object();
  json res = json::object();
  for (std::size_t x = 0; x < s.size(); ++x) {
    dims[s.name(x)] = f.stalk_dim(x);
    const auto& nb = s.min_nbhd(x);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] == x || f.restrictions(x)[k].is_zero()) continue;
      res[s.name(x) + "->" + s.name(nb[k])] = matrix_to_json(f.restrictions(x)[k]);
    }
  }
  return json{{"stalk_dims", dims}, {"res", res}};
}

namespace {

json dims_json(const Sheaf& f) {
  json d = json::object();
  for (std::size_t x = 0; x < f.base().size(); ++x) d[f.base().name(x)] = f.stalk_dim(x);
  return d;
}

}  // namespace

json resolution_to_json(const GodementResolution& r) {
  const FiniteSpace& s = r.base();
  json terms = json::array();
  for (std::size_t k = 0; k < r.length(); ++k) {
    json delta = json::object();
    for (std::size_t x = 0; x < s.size(); ++x) delta[s.name(x)] = matrix_to_json(r.deltas[k].comp(x));
    terms.push_back(json{{"degree", k},
                         {"stalk_dims", dims_json(*r.terms[k])},
                         {"delta", delta},
                         {"coker_dims", dims_json(*r.cokers[k].sheaf)}});
  }
  return json{{"terminated", r.terminated},
              {"length", r.length()},
              {"source_dims", dims_json(*r.source)},
              {"terms", terms}};
}

json verdict_to_json(const DimensionVerdict& v) {
  json j{{"kind", to_string(v.kind)}, {"lower", v.lower}, {"provenance", v.provenance}};
  j["upper"] = v.upper ? json(*v.upper) : json(nullptr);
  j["citation"] = v.citation.empty() ? json(nullptr) : json(v.citation);
  if (v.exact()) j["value"] = *v.exact();
  if (v.witness) {
    j["witness"] = json{{"sheaf", v.witness->sheaf},
                        {"test_object", v.witness->test_object},
                        {"degree", v.witness->degree}};
  }
  return j;
}

json summary_to_json(const CbSummary& s) {
  return json{{"rank", s.rank.omega ? json("omega") : json(s.rank.value)},
              {"scattered", s.scattered},
              {"hull_nonempty", s.hull_nonempty},
              {"empty", s.empty}};
}

json ext_report_to_json(const std::string& point, const std::string& sheaf_ref, const ExtReport& report,
                        const DimensionVerdict& verdict) {
  json dims = json::object();
  for (const auto& [k, d] : report.ext_dims) dims[std::to_string(k)] = d;
  return json{{"point", point},
              {"sheaf", sheaf_ref},
              {"ext_dims", dims},
              {"terminated", report.terminated},
              {"resolution_length", report.resolution_length},
              {"verdict", verdict_to_json(verdict)}};
}

}  // namespace cbsheaf
