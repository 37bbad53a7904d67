#include "cbsheaf/godement.hpp"

#include <array>

#include "cbsheaf/error.hpp"

namespace cbsheaf {

std::size_t c0_factor_offset(const Sheaf& f, std::size_t x, std::size_t y) {
  std::size_t offset = 0;
  for (auto z : f.base().min_nbhd(x)) {
    if (z == y) return offset;
    offset += f.stalk_dim(z);
  }
  throw Error("c0_factor_offset: " + f.base().name(y) + " is not in U_" + f.base().name(x));
}

Sheaf c0(const Sheaf& f) {
  const FiniteSpace& s = f.base();
  std::vector<std::size_t> dims(s.size(), 0);
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (auto y : s.min_nbhd(x)) dims[x] += f.stalk_dim(y);
  }
  std::vector<std::vector<RatMatrix>> res(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (auto z : s.min_nbhd(x)) {
      RatMatrix m(dims[z], dims[x]);
      std::size_t row = 0;
      for (auto y : s.min_nbhd(z)) {
        const std::size_t col = c0_factor_offset(f, x, y);
        for (std::size_t i = 0; i < f.stalk_dim(y); ++i) m.set(row + i, col + i, Rational(1));
        row += f.stalk_dim(y);
      }
      res[x].push_back(std::move(m));
    }
  }
  return Sheaf(Unchecked{}, f.base_ptr(), std::move(dims), std::move(res));
}

SheafMap serration_unit(const SheafPtr& f) {
  auto target = std::make_shared<const Sheaf>(c0(*f));
  const FiniteSpace& s = f->base();
  std::vector<RatMatrix> comps;
  comps.reserve(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    comps.push_back(vstack(f->restrictions(x), f->stalk_dim(x)));
  }
  return SheafMap(Unchecked{}, f, std::move(target), std::move(comps));
}

SkyscraperDecomposition skyscraper_decomposition(const SheafPtr& f, const SheafPtr& c0f) {
  const SpacePtr& s = f->base_ptr();
  std::vector<Sheaf> summands;
  summands.reserve(s->size());
  for (std::size_t y = 0; y < s->size(); ++y) summands.push_back(skyscraper(s, y, f->stalk_dim(y)));
  auto product = std::make_shared<const Sheaf>(direct_sum(s, summands));

  std::vector<RatMatrix> comps;
  for (std::size_t x = 0; x < s->size(); ++x) {
    RatMatrix m(product->stalk_dim(x), c0f->stalk_dim(x));
    std::size_t summand_offset = 0;
    for (std::size_t y = 0; y < s->size(); ++y) {
      const std::size_t width = summands[y].stalk_dim(x);
      if (width > 0) {
        const std::size_t factor_offset = c0_factor_offset(*f, x, y);
        for (std::size_t i = 0; i < width; ++i) m.set(summand_offset + i, factor_offset + i, Rational(1));
      }
      summand_offset += width;
    }
    comps.push_back(std::move(m));
  }
  // Checked constructor: the naturality squares are the actual verification.
  SheafMap iso(c0f, product, std::move(comps));
  for (const auto& m : iso.comps()) {
    if (m.rows() != m.cols() || rank(m) != m.rows()) {
      throw Error("skyscraper decomposition: component is not invertible");
    }
  }
  return SkyscraperDecomposition{std::move(product), std::move(iso)};
}

std::size_t default_max_len(const FiniteSpace& s) { return s.size() + 2; }

GodementResolution build_resolution(const SheafPtr& f, std::size_t max_len) {
  if (max_len < 1) throw Error("build_resolution: max_len must be at least 1");
  GodementResolution r;
  r.source = f;
  SheafPtr current = f;
  while (true) {
    SheafMap unit = serration_unit(current);
    r.terms.push_back(unit.target_ptr());
    if (r.deltas.empty()) {
      r.deltas.push_back(unit);
    } else {
      r.deltas.push_back(compose(unit, r.cokers.back().projection));
      r.coker_monos.push_back(unit);
    }
    r.cokers.push_back(cokernel(r.deltas.back()));
    if (r.cokers.back().sheaf->is_zero()) {
      r.terminated = true;
      break;
    }
    if (r.terms.size() >= max_len) break;
    current = r.cokers.back().sheaf;
  }
  return r;
}

SupportReport check_support(const GodementResolution& r, const CbFiltration& filt) {
  SupportReport report;
  const FiniteSpace& s = r.base();
  for (std::size_t k = 0; k < r.length(); ++k) {
    std::vector<char> in_level(s.size(), 0);
    for (auto x : filt.level(k)) in_level[x] = 1;
    for (std::size_t x = 0; x < s.size(); ++x) {
      if (in_level[x]) continue;
      ++report.checked;
      if (r.terms[k]->stalk_dim(x) != 0) report.violations.emplace_back(k, x);
    }
  }
  report.ok = report.violations.empty();
  return report;
}

namespace {

bool is_constant(const Sheaf& f) {
  const auto& dims = f.stalk_dims();
  if (dims.empty()) return true;
  if (dims.front() == 0) return false;
  for (std::size_t x = 0; x < dims.size(); ++x) {
    if (dims[x] != dims.front()) return false;
    for (const auto& m : f.restrictions(x)) {
      if (!(m == RatMatrix::identity(dims.front()))) return false;
    }
  }
  return true;
}

}  // namespace

NonvanishingReport coker_nonvanishing(const GodementResolution& r, const HeightMap& heights) {
  if (!is_constant(*r.source)) {
    throw Error("coker_nonvanishing needs the resolution of a constant sheaf of positive rank");
  }
  const FiniteSpace& s = r.base();
  NonvanishingReport report;
  for (std::size_t x = 0; x < s.size(); ++x) {
    const auto h = heights[x];
    if (!h || *h == 0) continue;
    std::size_t branches = 0;
    for (auto y : s.min_nbhd(x)) {
      if (heights[y] && *heights[y] + 1 == *h) ++branches;
    }
    if (branches < 2) {
      report.skipped.push_back(x);
      continue;
    }
    report.checked.push_back(x);
    const std::size_t k = *h;
    if (k - 1 >= r.cokers.size() || r.cokers[k - 1].sheaf->stalk_dim(x) == 0) {
      report.violations.emplace_back(k, x);
    }
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace cbsheaf
