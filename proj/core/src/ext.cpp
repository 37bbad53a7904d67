#include "cbsheaf/ext.hpp"

#include <algorithm>

#include "cbsheaf/error.hpp"
#include "cbsheaf/linear.hpp"

namespace cbsheaf {

ExtComplex ext_complex(const SheafPtr& test, const GodementResolution& r) {
  ExtComplex c;
  c.test = test;
  c.terminated = r.terminated;
  for (const auto& term : r.terms) {
    c.homs.emplace_back(test, term);
    c.degrees.push_back(c.homs.back().dim());
  }
  for (std::size_t k = 0; k + 1 < r.length(); ++k) {
    const HomSpace& from = c.homs[k];
    const HomSpace& to = c.homs[k + 1];
    RatMatrix images(to.vector_size(), from.dim());
    for (std::size_t j = 0; j < from.dim(); ++j) {
      to.vectorize(compose(r.deltas[k + 1], from.basis_map(j))).paste_into(images, 0, j);
    }
    c.alphas.push_back(to.coordinates(images));
  }
  return c;
}

ExtComplex hom_into_resolution(std::size_t x, const GodementResolution& r) {
  const SpacePtr& s = r.source->base_ptr();
  if (x >= s->size()) throw Error("hom_into_resolution: point out of range");
  return ext_complex(std::make_shared<const Sheaf>(skyscraper(s, x, 1)), r);
}

std::optional<std::size_t> ExtReport::top_degree() const {
  for (auto it = ext_dims.rbegin(); it != ext_dims.rend(); ++it) {
    if (it->second != 0) return it->first;
  }
  return std::nullopt;
}

std::size_t available_degrees(const ExtComplex& c) {
  const std::size_t len = c.degrees.size();
  if (c.terminated) return len;
  return len == 0 ? 0 : len - 1;
}

ExtReport ext_groups(const ExtComplex& c, std::size_t max_degree) {
  const std::size_t len = c.degrees.size();
  if (!c.terminated && max_degree >= available_degrees(c)) {
    throw Error("insufficient resolution length: " + std::to_string(len) +
                " terms determine Ext only below degree " + std::to_string(available_degrees(c)) +
                ", requested degree " + std::to_string(max_degree));
  }
  std::vector<std::size_t> ranks;
  ranks.reserve(c.alphas.size());
  for (const auto& a : c.alphas) ranks.push_back(rank(a));

  ExtReport report;
  report.terminated = c.terminated;
  report.resolution_length = len;
  for (std::size_t k = 0; k <= max_degree; ++k) {
    if (k >= len) {
      report.ext_dims[k] = 0;
      continue;
    }
    std::size_t d = c.degrees[k];
    if (k < ranks.size()) d -= ranks[k];
    if (k >= 1) d -= ranks[k - 1];
    report.ext_dims[k] = d;
  }
  return report;
}

ExtReport ext_groups(const ExtComplex& c) {
  const std::size_t avail = available_degrees(c);
  if (avail == 0) {
    ExtReport empty;
    empty.terminated = c.terminated;
    empty.resolution_length = c.degrees.size();
    return empty;
  }
  return ext_groups(c, avail - 1);
}

ExtReport ext_groups(const SheafPtr& f, std::size_t x, std::size_t max_degree) {
  const std::size_t len = std::max(default_max_len(f->base()), max_degree + 2);
  const GodementResolution r = build_resolution(f, len);
  return ext_groups(hom_into_resolution(x, r), max_degree);
}

std::vector<NamedSheaf> test_family(const SpacePtr& s) {
  std::vector<NamedSheaf> out;
  for (std::size_t x = 0; x < s->size(); ++x) {
    out.push_back({"skyscraper:" + s->name(x), std::make_shared<const Sheaf>(skyscraper(s, x, 1))});
  }
  for (std::size_t x = 0; x < s->size(); ++x) {
    bool singleton = true;
    for (auto y : s->min_nbhd(x)) {
      if (y != x && s->in_min_nbhd(y, x)) singleton = false;
    }
    if (!singleton) continue;
    out.push_back({"simple:" + s->name(x), std::make_shared<const Sheaf>(simple_sheaf(s, x, 1))});
  }
  return out;
}

namespace {

struct ScanState {
  std::size_t lower = 0;
  std::optional<Witness> witness;
};

// Raises the lower bound from Ext^k(T, F) over the tests; returns true once
// `target` is reached.
bool scan(const NamedSheaf& f, const GodementResolution& r, const std::vector<NamedSheaf>& tests,
          std::optional<std::size_t> target, ScanState& state) {
  for (const auto& t : tests) {
    const auto top = ext_groups(ext_complex(t.sheaf, r)).top_degree();
    if (top && (!state.witness || *top > state.lower)) {
      state.lower = *top;
      state.witness = Witness{f.name, t.name, *top};
    }
    if (target && state.witness && state.lower >= *target) return true;
  }
  return false;
}

std::size_t resolution_limit(const FiniteSpace& s, const DimensionOptions& options) {
  return options.max_len != 0 ? options.max_len : default_max_len(s);
}

void settle(DimensionVerdict& v, const ScanState& state) {
  v.lower = state.lower;
  v.witness = state.witness;
  if (v.upper && state.lower > *v.upper) {
    throw Error("internal: lower bound " + std::to_string(state.lower) + " exceeds upper bound " +
                std::to_string(*v.upper));
  }
  v.kind = (v.upper && *v.upper == state.lower) ? VerdictKind::exact : VerdictKind::bounds;
}

}  // namespace

DimensionVerdict injective_dimension_bounds(const SheafPtr& f, const DimensionOptions& options,
                                            const std::string& name) {
  const SpacePtr& s = f->base_ptr();
  const GodementResolution r = build_resolution(f, resolution_limit(*s, options));

  DimensionVerdict v;
  if (r.terminated) {
    v.upper = r.length() - 1;
    v.provenance = "Godement resolution of length " + std::to_string(r.length() - 1);
  } else {
    v.provenance = "Godement resolution did not terminate within " + std::to_string(r.length()) +
                   " terms";
  }
  auto tests = test_family(s);
  tests.push_back({"constant", std::make_shared<const Sheaf>(constant_sheaf(s, 1))});
  ScanState state;
  scan({name, f}, r, tests, v.upper, state);
  settle(v, state);
  if (state.witness) {
    v.provenance += "; Ext^" + std::to_string(state.witness->degree) + "(" +
                    state.witness->test_object + ", " + name + ") != 0";
  }
  return v;
}

DimensionVerdict category_dimension(const SpacePtr& s, const DimensionOptions& options) {
  DimensionVerdict v;
  if (s->empty()) {
    v.kind = VerdictKind::trivial_category;
    v.provenance = "empty space: only the zero sheaf";
    return v;
  }
  const bool scattered = is_scattered(*s);
  if (scattered) {
    v.upper = cb_rank(*s) - 1;
    v.provenance = "upper bound rank - 1 from the support of the Godement terms";
  } else {
    v.provenance =
        "nonempty perfect hull: no finite upper bound is known (Conject predicts infinite "
        "dimension for finite rank with nonempty hull)";
  }

  auto tests = test_family(s);
  tests.push_back({"constant", std::make_shared<const Sheaf>(constant_sheaf(s, 1))});

  std::vector<NamedSheaf> candidates;
  candidates.push_back(tests.back());
  candidates.insert(candidates.end(), tests.begin(), tests.end() - 1);
  for (std::size_t i = 0; i < options.random_sheaves; ++i) {
    const std::uint64_t seed = options.seed + i;
    candidates.push_back({"random:" + std::to_string(seed),
                          std::make_shared<const Sheaf>(
                              random_sheaf(s, options.random_max_dim, seed))});
  }

  const std::size_t limit = resolution_limit(*s, options);
  ScanState state;
  for (const auto& f : candidates) {
    const GodementResolution r = build_resolution(f.sheaf, limit);
    if (scan(f, r, tests, v.upper, state)) break;
  }
  settle(v, state);
  if (state.witness) {
    v.provenance += "; lower bound from Ext^" + std::to_string(state.witness->degree) + "(" +
                    state.witness->test_object + ", " + state.witness->sheaf + ") != 0";
  }
  return v;
}

HomologycharReport homologychar_check(const GodementResolution& r, std::size_t x) {
  const FiniteSpace& s = r.base();
  if (x >= s.size() || !s.is_closed_point(x)) {
    throw Error("homologychar_check: {" + (x < s.size() ? s.name(x) : std::string("?")) +
                "} is not closed");
  }
  const ExtComplex c = hom_into_resolution(x, r);
  const std::size_t len = r.length();

  // E_k evaluates a morphism ι_x Q -> C^k at x and keeps the x-factor.
  std::vector<RatMatrix> evals;
  for (std::size_t k = 0; k < len; ++k) {
    const Sheaf& q = k == 0 ? *r.source : *r.cokers[k - 1].sheaf;
    const std::size_t offset = c0_factor_offset(q, x, x);
    const std::size_t width = q.stalk_dim(x);
    RatMatrix e(width, c.homs[k].dim());
    for (std::size_t j = 0; j < c.homs[k].dim(); ++j) {
      const RatMatrix col = c.homs[k].basis_map(j).comp(x);
      for (std::size_t i = 0; i < width; ++i) e.set(i, j, col.at(offset + i, 0));
    }
    evals.push_back(std::move(e));
  }

  HomologycharReport report;
  report.point = x;
  for (std::size_t k = 0; k < len; ++k) {
    HomologycharDegree d;
    d.k = k;
    d.hom_dim = c.degrees[k];
    d.factor_dim = evals[k].rows();
    d.dims_match = d.hom_dim == d.factor_dim;
    d.evaluation_iso = d.dims_match && rank(evals[k]) == d.hom_dim;
    if (k + 1 < len) {
      // J_k: include the x-factor into C^k_x, then project to (coker δ_k)_x.
      const Sheaf& q = k == 0 ? *r.source : *r.cokers[k - 1].sheaf;
      const std::size_t offset = c0_factor_offset(q, x, x);
      RatMatrix inclusion(r.terms[k]->stalk_dim(x), q.stalk_dim(x));
      for (std::size_t i = 0; i < q.stalk_dim(x); ++i) inclusion.set(offset + i, i, Rational(1));
      const RatMatrix j = r.cokers[k].projection.comp(x) * inclusion;
      d.alpha_matches = evals[k + 1] * c.alphas[k] == j * evals[k];
    }
    if (!d.dims_match || !d.evaluation_iso || d.alpha_matches == false) report.ok = false;
    report.degrees.push_back(d);
  }
  return report;
}

}  // namespace cbsheaf
