#include "cbsheaf/sheaf.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cbsheaf/error.hpp"

namespace cbsheaf {

namespace {

// Compatible families over u: (s_x)_{x in u} with res(x,y) s_x = s_y whenever
// y in U_x ∩ u. `res(x, y)` must be available for all such pairs.
template <class ResFn>
Subspace compatible_families(const FiniteSpace& s, const std::vector<std::size_t>& dims,
                             const PointSet& u, ResFn&& res) {
  std::vector<std::size_t> offset(s.size(), 0);
  std::vector<char> member(s.size(), 0);
  std::size_t total = 0;
  for (auto x : u) {
    offset[x] = total;
    member[x] = 1;
    total += dims[x];
  }
  std::size_t rows = 0;
  for (auto x : u) {
    for (auto y : s.min_nbhd(x)) {
      if (y != x && member[y]) rows += dims[y];
    }
  }
  RatMatrix constraints(rows, total);
  std::size_t r = 0;
  for (auto x : u) {
    for (auto y : s.min_nbhd(x)) {
      if (y == x || !member[y]) continue;
      const RatMatrix& m = res(x, y);
      for (std::size_t i = 0; i < dims[y]; ++i, ++r) {
        // res_{xy} s_x - s_y; the s_x and s_y column blocks are disjoint.
        std::vector<RatMatrix::Entry> lhs;
        for (const auto& e : m.row(i)) lhs.push_back({offset[x] + e.col, e.value});
        RatMatrix::Entry rhs{offset[y] + i, Rational(-1)};
        auto it = std::lower_bound(lhs.begin(), lhs.end(), rhs.col,
                                   [](const RatMatrix::Entry& e, std::size_t c) { return e.col < c; });
        lhs.insert(it, rhs);
        constraints.set_row(r, std::move(lhs));
      }
    }
  }
  return kernel_basis(constraints);
}

bool is_identity(const RatMatrix& m) { return m == RatMatrix::identity(m.rows()); }

}  // namespace

// ---------------------------------------------------------------- Sheaf

Sheaf::Sheaf(SpacePtr base, std::vector<std::size_t> dims, std::vector<std::vector<RatMatrix>> res)
    : base_(std::move(base)), dims_(std::move(dims)), res_(std::move(res)) {
  validate();
}

Sheaf::Sheaf(Unchecked, SpacePtr base, std::vector<std::size_t> dims,
             std::vector<std::vector<RatMatrix>> res)
    : base_(std::move(base)), dims_(std::move(dims)), res_(std::move(res)) {}

std::size_t Sheaf::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }

const RatMatrix& Sheaf::res(std::size_t x, std::size_t y) const {
  const auto pos = base_->nbhd_position(x, y);
  if (!pos) {
    throw Error("no restriction from " + base_->name(x) + " to " + base_->name(y) + ": not in U_" +
                base_->name(x));
  }
  return res_[x][*pos];
}

void Sheaf::validate() const {
  if (!base_) throw Error("sheaf without a base space");
  const FiniteSpace& s = *base_;
  if (dims_.size() != s.size() || res_.size() != s.size()) {
    throw Error("sheaf data does not match the number of points");
  }
  for (std::size_t x = 0; x < s.size(); ++x) {
    const auto& u = s.min_nbhd(x);
    if (res_[x].size() != u.size()) throw Error("missing restrictions out of " + s.name(x));
    for (std::size_t k = 0; k < u.size(); ++k) {
      const RatMatrix& m = res_[x][k];
      if (m.rows() != dims_[u[k]] || m.cols() != dims_[x]) {
        throw Error("restriction " + s.name(x) + "->" + s.name(u[k]) + " has the wrong shape");
      }
      if (u[k] == x && !is_identity(m)) {
        throw Error("restriction " + s.name(x) + "->" + s.name(x) + " is not the identity");
      }
    }
  }
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (auto y : s.min_nbhd(x)) {
      if (y == x) continue;
      for (auto z : s.min_nbhd(y)) {
        if (z == y) continue;
        if (!(res(y, z) * res(x, y) == res(x, z))) {
          throw Error("functoriality fails: " + s.name(x) + "->" + s.name(y) + "->" + s.name(z));
        }
      }
    }
  }
}

bool operator==(const Sheaf& a, const Sheaf& b) {
  if (&a == &b) return true;
  return (a.base_ == b.base_ || *a.base_ == *b.base_) && a.dims_ == b.dims_ && a.res_ == b.res_;
}

// ---------------------------------------------------------------- SheafMap

SheafMap::SheafMap(SheafPtr source, SheafPtr target, std::vector<RatMatrix> comps)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {
  validate();
}

SheafMap::SheafMap(Unchecked, SheafPtr source, SheafPtr target, std::vector<RatMatrix> comps)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {}

void SheafMap::validate() const {
  if (!source_ || !target_) throw Error("sheaf map without source or target");
  if (!(source_->base_ptr() == target_->base_ptr() || source_->base() == target_->base())) {
    throw Error("sheaf map between different base spaces");
  }
  const FiniteSpace& s = source_->base();
  if (comps_.size() != s.size()) throw Error("sheaf map needs one component per point");
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (comps_[x].rows() != target_->stalk_dim(x) || comps_[x].cols() != source_->stalk_dim(x)) {
      throw Error("sheaf map component at " + s.name(x) + " has the wrong shape");
    }
  }
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (auto y : s.min_nbhd(x)) {
      if (y == x) continue;
      if (!(target_->res(x, y) * comps_[x] == comps_[y] * source_->res(x, y))) {
        throw Error("naturality fails on " + s.name(x) + "->" + s.name(y));
      }
    }
  }
}

bool SheafMap::is_mono() const {
  for (const auto& m : comps_) {
    if (rank(m) != m.cols()) return false;
  }
  return true;
}

bool SheafMap::is_epi() const {
  for (const auto& m : comps_) {
    if (rank(m) != m.rows()) return false;
  }
  return true;
}

bool SheafMap::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const RatMatrix& m) { return m.is_zero(); });
}

SheafMap compose(const SheafMap& g, const SheafMap& f) {
  if (!(f.target() == g.source())) throw Error("compose: target of f is not the source of g");
  std::vector<RatMatrix> comps;
  comps.reserve(f.comps().size());
  for (std::size_t x = 0; x < f.comps().size(); ++x) comps.push_back(g.comp(x) * f.comp(x));
  return SheafMap(Unchecked{}, f.source_ptr(), g.target_ptr(), std::move(comps));
}

SheafMap identity_map(const SheafPtr& f) {
  std::vector<RatMatrix> comps;
  for (auto d : f->stalk_dims()) comps.push_back(RatMatrix::identity(d));
  return SheafMap(Unchecked{}, f, f, std::move(comps));
}

// ---------------------------------------------------------------- constructors

namespace {

// A sheaf whose restriction between two points is the identity when both
// stalks are "on" and zero otherwise. Valid whenever the on-set is closed
// under the relevant compositions (true for constant, skyscraper, simple).
Sheaf indicator_sheaf(const SpacePtr& s, const std::vector<char>& on, std::size_t d, bool connect) {
  std::vector<std::size_t> dims(s->size());
  for (std::size_t x = 0; x < s->size(); ++x) dims[x] = on[x] ? d : 0;
  std::vector<std::vector<RatMatrix>> res(s->size());
  for (std::size_t x = 0; x < s->size(); ++x) {
    for (auto y : s->min_nbhd(x)) {
      if (y == x) {
        res[x].push_back(RatMatrix::identity(dims[x]));
      } else if (connect && on[x] && on[y]) {
        res[x].push_back(RatMatrix::identity(d));
      } else {
        res[x].emplace_back(dims[y], dims[x]);
      }
    }
  }
  return Sheaf(s, std::move(dims), std::move(res));
}

}  // namespace

Sheaf zero_sheaf(const SpacePtr& s) { return constant_sheaf(s, 0); }

Sheaf constant_sheaf(const SpacePtr& s, std::size_t d) {
  return indicator_sheaf(s, std::vector<char>(s->size(), 1), d, true);
}

Sheaf skyscraper(const SpacePtr& s, std::size_t x, std::size_t d) {
  if (x >= s->size()) throw Error("skyscraper: unknown point index");
  std::vector<char> on(s->size(), 0);
  for (auto y : s->closure(x)) on[y] = 1;
  return indicator_sheaf(s, on, d, true);
}

Sheaf simple_sheaf(const SpacePtr& s, std::size_t x, std::size_t d) {
  if (x >= s->size()) throw Error("simple_sheaf: unknown point index");
  std::vector<char> on(s->size(), 0);
  on[x] = 1;
  // Cluster mates of x would need an isomorphism back to x; a one-point
  // support with zero maps only exists when x is alone in its cluster.
  for (auto y : s->min_nbhd(x)) {
    if (y != x && s->in_min_nbhd(y, x)) {
      throw Error("simple_sheaf: " + s->name(x) + " is not topologically distinguishable from " +
                  s->name(y));
    }
  }
  return indicator_sheaf(s, on, d, false);
}

Sheaf direct_sum(const SpacePtr& s, std::span<const Sheaf> summands) {
  std::vector<std::size_t> dims(s->size(), 0);
  for (const auto& f : summands) {
    for (std::size_t x = 0; x < s->size(); ++x) dims[x] += f.stalk_dim(x);
  }
  std::vector<std::vector<RatMatrix>> res(s->size());
  for (std::size_t x = 0; x < s->size(); ++x) {
    for (auto y : s->min_nbhd(x)) {
      RatMatrix m(dims[y], dims[x]);
      std::size_t ro = 0, co = 0;
      for (const auto& f : summands) {
        f.res(x, y).paste_into(m, ro, co);
        ro += f.stalk_dim(y);
        co += f.stalk_dim(x);
      }
      res[x].push_back(std::move(m));
    }
  }
  return Sheaf(s, std::move(dims), std::move(res));
}

Subspace sections(const Sheaf& f, const PointSet& u) {
  if (!f.base().is_open(u)) throw Error("not open: sections are only defined over open sets");
  return compatible_families(f.base(), f.stalk_dims(), u,
                             [&](std::size_t x, std::size_t y) -> const RatMatrix& { return f.res(x, y); });
}

// ---------------------------------------------------------------- kernel / cokernel

SheafKernel kernel(const SheafMap& f) {
  const FiniteSpace& s = f.source().base();
  std::vector<RatMatrix> incl(s.size());
  std::vector<std::size_t> dims(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    incl[x] = kernel_basis(f.comp(x)).basis;
    dims[x] = incl[x].cols();
  }
  std::vector<std::vector<RatMatrix>> res(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (auto y : s.min_nbhd(x)) {
      if (y == x) {
        res[x].push_back(RatMatrix::identity(dims[x]));
        continue;
      }
      auto r = solve(incl[y], f.source().res(x, y) * incl[x]);
      if (!r) throw NotWellDefined("kernel: restriction leaves the kernel at " + s.name(y));
      res[x].push_back(std::move(*r));
    }
  }
  auto k = std::make_shared<const Sheaf>(Unchecked{}, f.source().base_ptr(), std::move(dims), std::move(res));
  SheafMap inclusion(Unchecked{}, k, f.source_ptr(), std::move(incl));
  return SheafKernel{std::move(k), std::move(inclusion)};
}

SheafCokernel cokernel(const SheafMap& f) {
  const FiniteSpace& s = f.target().base();
  std::vector<Cokernel> stalks;
  std::vector<std::size_t> dims(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    stalks.push_back(cokernel(f.comp(x)));
    dims[x] = stalks.back().dim();
  }
  std::vector<std::vector<RatMatrix>> res(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (auto y : s.min_nbhd(x)) {
      if (y == x) {
        res[x].push_back(RatMatrix::identity(dims[x]));
      } else {
        res[x].push_back(induced_map(f.target().res(x, y), stalks[x], stalks[y]));
      }
    }
  }
  auto q = std::make_shared<const Sheaf>(Unchecked{}, f.target().base_ptr(), std::move(dims), std::move(res));
  std::vector<RatMatrix> proj;
  for (const auto& c : stalks) proj.push_back(c.projection);
  SheafMap projection(Unchecked{}, f.target_ptr(), q, std::move(proj));
  return SheafCokernel{std::move(q), std::move(projection), std::move(stalks)};
}

// ---------------------------------------------------------------- Hom

HomSpace::HomSpace(SheafPtr source, SheafPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  const FiniteSpace& s = source_->base();
  if (!(source_->base_ptr() == target_->base_ptr() || s == target_->base())) {
    throw Error("Hom between sheaves on different spaces");
  }
  const auto& fd = source_->stalk_dims();
  const auto& gd = target_->stalk_dims();
  offsets_.assign(s.size() + 1, 0);
  for (std::size_t x = 0; x < s.size(); ++x) offsets_[x + 1] = offsets_[x] + gd[x] * fd[x];

  // Naturality rows: (G.res_{xy} φ_x - φ_y F.res_{xy})_{ij} = 0.
  std::size_t rows = 0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (auto y : s.min_nbhd(x)) {
      if (y != x) rows += gd[y] * fd[x];
    }
  }
  RatMatrix constraints(rows, vector_size());
  std::size_t r = 0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (auto y : s.min_nbhd(x)) {
      if (y == x || gd[y] * fd[x] == 0) continue;
      const RatMatrix& gres = target_->res(x, y);
      const RatMatrix fres_t = source_->res(x, y).transpose();
      for (std::size_t i = 0; i < gd[y]; ++i) {
        for (std::size_t j = 0; j < fd[x]; ++j, ++r) {
          RatMatrix::Row row;
          for (const auto& e : gres.row(i)) row.push_back({offsets_[x] + e.col * fd[x] + j, e.value});
          for (const auto& e : fres_t.row(j)) row.push_back({offsets_[y] + i * fd[y] + e.col, Rational(-e.value)});
          std::sort(row.begin(), row.end(),
                    [](const RatMatrix::Entry& a, const RatMatrix::Entry& b) { return a.col < b.col; });
          constraints.set_row(r, std::move(row));
        }
      }
    }
  }
  basis_ = kernel_basis(constraints).basis;
}

SheafMap HomSpace::to_map(const RatMatrix& vectors, std::size_t col) const {
  const auto& fd = source_->stalk_dims();
  const auto& gd = target_->stalk_dims();
  std::vector<RatMatrix> comps;
  for (std::size_t x = 0; x < fd.size(); ++x) comps.emplace_back(gd[x], fd[x]);
  std::size_t x = 0;
  for (std::size_t r = 0; r < vectors.rows(); ++r) {
    const Rational v = vectors.at(r, col);
    if (v == 0) continue;
    while (offsets_[x + 1] <= r) ++x;
    const std::size_t local = r - offsets_[x];
    comps[x].set(local / fd[x], local % fd[x], v);
  }
  return SheafMap(Unchecked{}, source_, target_, std::move(comps));
}

SheafMap HomSpace::basis_map(std::size_t k) const { return to_map(basis_, k); }

RatMatrix HomSpace::vectorize(const SheafMap& f) const {
  RatMatrix v(vector_size(), 1);
  const auto& fd = source_->stalk_dims();
  for (std::size_t x = 0; x < fd.size(); ++x) {
    const RatMatrix& m = f.comp(x);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (const auto& e : m.row(i)) v.set(offsets_[x] + i * fd[x] + e.col, 0, e.value);
    }
  }
  return v;
}

RatMatrix HomSpace::coordinates(const RatMatrix& vectors) const {
  auto c = solve(basis_, vectors);
  if (!c) throw Error("vector is not a morphism of sheaves");
  return std::move(*c);
}

HomSpace hom_sheaves(const SheafPtr& f, const SheafPtr& g) { return HomSpace(f, g); }

// ---------------------------------------------------------------- random

Sheaf random_sheaf(const SpacePtr& s, std::size_t max_dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = s->size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s->min_nbhd(a).size() < s->min_nbhd(b).size();
  });

  std::vector<std::size_t> dims(n, 0);
  std::vector<std::vector<RatMatrix>> res(n);
  std::vector<char> done(n, 0);
  auto lookup = [&](std::size_t x, std::size_t y) -> const RatMatrix& {
    return res[x][*s->nbhd_position(x, y)];
  };

  for (auto x : order) {
    if (done[x]) continue;
    PointSet cluster, below;
    for (auto y : s->min_nbhd(x)) (s->in_min_nbhd(y, x) ? cluster : below).push_back(y);
    const std::size_t d = static_cast<std::size_t>(rng() % (max_dim + 1));

    const Subspace families = compatible_families(*s, dims, below, lookup);
    RatMatrix coeffs(families.dim(), d);
    for (std::size_t i = 0; i < families.dim(); ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        coeffs.set(i, j, Rational(static_cast<long>(rng() % 5) - 2));
      }
    }
    const RatMatrix into_below = families.basis * coeffs;

    std::vector<std::size_t> block_start(n, 0);
    std::size_t offset = 0;
    for (auto y : below) {
      block_start[y] = offset;
      offset += dims[y];
    }
    for (auto m : cluster) {
      dims[m] = d;
      res[m].clear();
      for (auto y : s->min_nbhd(m)) {
        if (s->in_min_nbhd(y, m)) {
          res[m].push_back(RatMatrix::identity(d));
        } else {
          std::vector<std::size_t> rows(dims[y]);
          std::iota(rows.begin(), rows.end(), block_start[y]);
          res[m].push_back(into_below.select_rows(rows));
        }
      }
      done[m] = 1;
    }
  }
  return Sheaf(s, std::move(dims), std::move(res));
}

}  // namespace cbsheaf
