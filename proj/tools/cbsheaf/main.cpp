// cbsheaf: Cantor-Bendixson ranks, Godement resolutions and injective
// dimensions of sheaves of Q-vector spaces.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "cbsheaf/error.hpp"
#include "cbsheaf/ext.hpp"
#include "cbsheaf/godement.hpp"
#include "cbsheaf/json_io.hpp"
#include "cbsheaf/profinite.hpp"

using namespace cbsheaf;

namespace {

struct Options {
  std::string expr;
  std::string space;
  std::string sheaf = "constant";
  std::string point;
  std::string out;
  std::string format = "text";
  std::size_t branches = 2;
  std::size_t max_len = 0;
  std::optional<std::size_t> max_degree;
  std::uint64_t seed = 0;
  std::size_t random_sheaves = 0;
  bool surrogate = false;
};

bool json_output(const Options& o) { return o.format == "json"; }

std::string set_str(const FiniteSpace& s, const PointSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += s.name(set[i]);
  }
  return out + "}";
}

json names_json(const FiniteSpace& s, const PointSet& set) {
  json a = json::array();
  for (auto x : set) a.push_back(s.name(x));
  return a;
}

SpacePtr load_space(const Options& o) {
  if (o.space.empty()) throw Error("--space is required");
  return std::make_shared<const FiniteSpace>(space_from_json(read_json_file(o.space)));
}

SheafPtr load_sheaf(const SpacePtr& s, const std::string& ref) {
  if (ref == "constant") return std::make_shared<const Sheaf>(constant_sheaf(s, 1));
  if (ref.rfind("skyscraper:", 0) == 0) {
    return std::make_shared<const Sheaf>(skyscraper(s, s->index_of(ref.substr(11)), 1));
  }
  if (ref.rfind("simple:", 0) == 0) {
    return std::make_shared<const Sheaf>(simple_sheaf(s, s->index_of(ref.substr(7)), 1));
  }
  return std::make_shared<const Sheaf>(sheaf_from_json(read_json_file(ref), s));
}

void emit(const Options& o, const json& doc, const std::string& text) {
  if (!o.out.empty()) write_json_file(o.out, doc);
  if (json_output(o)) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

std::string verdict_text(const DimensionVerdict& v) {
  std::ostringstream os;
  os << "verdict: " << describe(v) << '\n';
  if (v.witness) {
    os << "witness: Ext^" << v.witness->degree << "(" << v.witness->test_object << ", "
       << v.witness->sheaf << ") != 0\n";
  }
  os << "provenance: " << v.provenance << '\n';
  return os.str();
}

json space_report(const FiniteSpace& s, std::ostringstream& os, bool with_levels) {
  const CbFiltration filt = cb_filtration(s);
  const CbDecomposition d = decompose(s);
  const HeightMap h = heights(s);
  json j{{"points", s.size()},
         {"rank", filt.rank()},
         {"scattered", names_json(s, d.scattered)},
         {"hull", names_json(s, d.hull)}};
  os << "points: " << s.size() << '\n' << "rank: " << filt.rank() << '\n';
  if (with_levels) {
    json levels = json::array();
    for (std::size_t k = 0; k < filt.levels.size(); ++k) {
      levels.push_back(names_json(s, filt.levels[k]));
      os << "X(" << k << "): " << set_str(s, filt.levels[k]) << '\n';
    }
    j["levels"] = levels;
  }
  os << "scattered part: " << set_str(s, d.scattered) << '\n'
     << "perfect hull: " << set_str(s, d.hull) << '\n';
  json hj = json::object();
  os << "heights:";
  for (std::size_t x = 0; x < s.size(); ++x) {
    hj[s.name(x)] = h[x] ? json(*h[x]) : json(nullptr);
    os << ' ' << s.name(x) << '=' << (h[x] ? std::to_string(*h[x]) : std::string("hull"));
  }
  os << '\n';
  j["heights"] = hj;
  return j;
}

std::string summary_text(const CbSummary& s) {
  std::ostringstream os;
  os << "rank: " << to_string(s.rank) << '\n'
     << "scattered: " << (s.scattered ? "yes" : "no") << '\n'
     << "perfect hull: " << (s.hull_nonempty ? "nonempty" : "empty") << '\n';
  return os.str();
}

void cmd_rank(const Options& o, bool levels) {
  if (!o.expr.empty() && !o.space.empty()) throw Error("give an expression or --space, not both");
  if (!o.expr.empty()) {
    const ExprPtr e = parse_expr(o.expr);
    const CbSummary s = cb_summary(*e);
    json j = summary_to_json(s);
    j["expr"] = print_expr(*e);
    emit(o, j, "expr: " + print_expr(*e) + "\n" + summary_text(s));
    return;
  }
  const SpacePtr s = load_space(o);
  std::ostringstream os;
  json j = space_report(*s, os, levels);
  emit(o, j, os.str());
}

void cmd_dim(const Options& o) {
  if (o.expr.empty()) throw Error("dim needs an expression");
  const ExprPtr e = parse_expr(o.expr);
  const DimensionVerdict v = dimension_verdict(*e);
  json j{{"expr", print_expr(*e)}, {"summary", summary_to_json(cb_summary(*e))},
         {"verdict", verdict_to_json(v)}};
  emit(o, j, "expr: " + print_expr(*e) + "\n" + verdict_text(v));
}

DimensionOptions dimension_options(const Options& o) {
  DimensionOptions d;
  d.max_len = o.max_len;
  d.random_sheaves = o.random_sheaves;
  d.seed = o.seed;
  return d;
}

void cmd_category_dim(const Options& o) {
  const SpacePtr s = load_space(o);
  const DimensionVerdict v = category_dimension(s, dimension_options(o));
  emit(o, json{{"verdict", verdict_to_json(v)}}, verdict_text(v));
}

void cmd_model(const Options& o) {
  if (o.expr.empty()) throw Error("model needs an expression");
  const ExprPtr e = parse_expr(o.expr);
  ModelOptions mo;
  mo.branches = o.branches;
  mo.surrogate = o.surrogate;
  const FiniteModel m = finite_model(*e, mo);
  const json j = space_to_json(m.space);
  if (!o.out.empty()) write_json_file(o.out, j);
  if (json_output(o)) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "expr: " << print_expr(*e) << '\n'
            << "points: " << m.space.size() << '\n'
            << "rank: " << cb_rank(m.space) << '\n';
  if (m.non_hausdorff) std::cout << "note: surrogate model, not Hausdorff\n";
  if (!o.out.empty()) std::cout << "written: " << o.out << '\n';
}

std::size_t resolution_limit(const Options& o, const FiniteSpace& s) {
  return o.max_len != 0 ? o.max_len : default_max_len(s);
}

std::string dims_text(const Sheaf& f) {
  std::string out;
  for (std::size_t x = 0; x < f.base().size(); ++x) {
    if (x) out += ' ';
    out += f.base().name(x) + '=' + std::to_string(f.stalk_dim(x));
  }
  return out;
}

void cmd_resolve(const Options& o) {
  const SpacePtr s = load_space(o);
  const SheafPtr f = load_sheaf(s, o.sheaf);
  const GodementResolution r = build_resolution(f, resolution_limit(o, *s));
  std::ostringstream os;
  os << "sheaf: " << o.sheaf << '\n';
  for (std::size_t k = 0; k < r.length(); ++k) {
    os << "C^" << k << ": " << dims_text(*r.terms[k]) << '\n'
       << "  coker: " << dims_text(*r.cokers[k].sheaf) << '\n';
  }
  os << "length: " << r.length() << '\n' << "terminated: " << (r.terminated ? "true" : "false") << '\n';
  json j = resolution_to_json(r);
  j["sheaf"] = o.sheaf;
  emit(o, j, os.str());
}

void cmd_ext(const Options& o) {
  const SpacePtr s = load_space(o);
  const SheafPtr f = load_sheaf(s, o.sheaf);
  if (o.point.empty()) throw Error("--point is required");
  const std::size_t x = s->index_of(o.point);

  // An explicit --max-len is honoured even when it is too short for
  // --max-degree; ext_groups then refuses instead of clipping.
  std::size_t len = resolution_limit(o, *s);
  if (o.max_degree && o.max_len == 0) len = std::max(len, *o.max_degree + 2);
  const GodementResolution r = build_resolution(f, len);
  const ExtComplex c = hom_into_resolution(x, r);
  const ExtReport report = o.max_degree ? ext_groups(c, *o.max_degree) : ext_groups(c);

  DimensionOptions d = dimension_options(o);
  d.max_len = len;
  const DimensionVerdict v = injective_dimension_bounds(f, d, o.sheaf);

  std::ostringstream os;
  os << "point: " << o.point << '\n' << "sheaf: " << o.sheaf << '\n';
  for (const auto& [k, dim] : report.ext_dims) os << "Ext^" << k << " = " << dim << '\n';
  if (!report.terminated) os << "resolution truncated at " << report.resolution_length << " terms\n";
  os << verdict_text(v);
  emit(o, ext_report_to_json(o.point, o.sheaf, report, v), os.str());
}

void cmd_check(const Options& o) {
  const SpacePtr s = load_space(o);
  const SheafPtr f = load_sheaf(s, o.sheaf);
  const GodementResolution r = build_resolution(f, resolution_limit(o, *s));
  std::ostringstream os;
  json j{{"sheaf", o.sheaf}, {"terminated", r.terminated}, {"length", r.length()}};

  const SupportReport support = check_support(r, cb_filtration(*s));
  os << "support: " << (support.ok ? "ok" : "FAIL") << " (" << support.checked << " stalks checked)\n";
  json sv = json::array();
  for (auto [k, x] : support.violations) {
    sv.push_back(json{{"degree", k}, {"point", s->name(x)}});
    os << "  C^" << k << " nonzero at " << s->name(x) << '\n';
  }
  j["support"] = json{{"ok", support.ok}, {"checked", support.checked}, {"violations", sv}};

  json hc = json::array();
  bool hc_ok = true;
  for (std::size_t x = 0; x < s->size(); ++x) {
    if (!s->is_closed_point(x)) continue;
    const HomologycharReport rep = homologychar_check(r, x);
    hc_ok = hc_ok && rep.ok;
    json degrees = json::array();
    for (const auto& d : rep.degrees) {
      degrees.push_back(json{{"k", d.k},
                             {"hom_dim", d.hom_dim},
                             {"factor_dim", d.factor_dim},
                             {"dims_match", d.dims_match},
                             {"evaluation_iso", d.evaluation_iso},
                             {"alpha_matches", d.alpha_matches ? json(*d.alpha_matches) : json(nullptr)}});
    }
    hc.push_back(json{{"point", s->name(x)}, {"ok", rep.ok}, {"degrees", degrees}});
    os << "homologychar " << s->name(x) << ": " << (rep.ok ? "ok" : "FAIL") << " dims";
    for (const auto& d : rep.degrees) os << ' ' << d.hom_dim << '/' << d.factor_dim;
    os << '\n';
  }
  j["homologychar"] = json{{"ok", hc_ok}, {"points", hc}};

  try {
    const NonvanishingReport nv = coker_nonvanishing(r, heights(*s));
    json viol = json::array();
    for (auto [k, x] : nv.violations) viol.push_back(json{{"height", k}, {"point", s->name(x)}});
    j["nonvanishing"] = json{{"ok", nv.ok},
                             {"checked", names_json(*s, nv.checked)},
                             {"skipped", names_json(*s, nv.skipped)},
                             {"violations", viol}};
    os << "nonvanishing: " << (nv.ok ? "ok" : "FAIL") << " (checked " << nv.checked.size()
       << ", skipped " << nv.skipped.size() << ")\n";
  } catch (const Error&) {
    j["nonvanishing"] = nullptr;
    os << "nonvanishing: not applicable (sheaf is not constant)\n";
  }
  emit(o, j, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cantor-Bendixson ranks and injective dimensions of sheaves on finite and profinite spaces"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out, "Also write the JSON report to this file");
  };
  auto add_space = [&](CLI::App* sub) { sub->add_option("--space", o.space, "Space file (JSON)"); };
  auto add_sheaf = [&](CLI::App* sub) {
    sub->add_option("--sheaf", o.sheaf, "constant | skyscraper:<pt> | simple:<pt> | <file>");
    sub->add_option("--max-len", o.max_len, "Maximum number of resolution terms (default |X| + 2)");
  };

  auto* rank = app.add_subcommand("rank", "Cantor-Bendixson rank of an expression or a space file");
  rank->add_option("expr", o.expr, "Space expression, e.g. \"P^3\"");
  add_space(rank);
  add_format(rank);

  auto* decomp = app.add_subcommand("decompose", "Scattered part and perfect hull");
  decomp->add_option("expr", o.expr, "Space expression");
  add_space(decomp);
  add_format(decomp);

  auto* dim = app.add_subcommand("dim", "Injective-dimension verdict for a space expression");
  dim->add_option("expr", o.expr, "Space expression")->required();
  add_format(dim);

  auto* cat = app.add_subcommand("category-dim", "Injective dimension of sheaves on a finite space");
  add_space(cat);
  cat->add_option("--max-len", o.max_len, "Maximum number of resolution terms");
  cat->add_option("--random", o.random_sheaves, "Number of seeded random sheaves to scan");
  cat->add_option("--seed", o.seed, "Seed for random sheaves");
  add_format(cat);

  auto* model = app.add_subcommand("model", "Finite model of a scattered expression");
  model->add_option("expr", o.expr, "Space expression")->required();
  model->add_option("--branches", o.branches, "Leaves per convergent sequence")->check(CLI::Range(2, 64));
  model->add_flag("--surrogate", o.surrogate, "Replace perfect pieces by indiscrete clusters");
  model->add_option("--out", o.out, "Write the model space file");
  model->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* resolve = app.add_subcommand("resolve", "Godement resolution of a sheaf");
  add_space(resolve);
  add_sheaf(resolve);
  add_format(resolve);

  auto* ext = app.add_subcommand("ext", "Ext groups against the skyscraper at a point");
  add_space(ext);
  add_sheaf(ext);
  ext->add_option("--point", o.point, "Point of the space")->required();
  ext->add_option("--max-degree", o.max_degree, "Highest degree to report");
  ext->add_option("--seed", o.seed, "Seed for random sheaves");
  add_format(ext);

  auto* check = app.add_subcommand("check", "Support, Homologychar and non-vanishing checks");
  add_space(check);
  add_sheaf(check);
  add_format(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*rank) cmd_rank(o, true);
    else if (*decomp) cmd_rank(o, false);
    else if (*dim) cmd_dim(o);
    else if (*cat) cmd_category_dim(o);
    else if (*model) cmd_model(o);
    else if (*resolve) cmd_resolve(o);
    else if (*ext) cmd_ext(o);
    else if (*check) cmd_check(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
