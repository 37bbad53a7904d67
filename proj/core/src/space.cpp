#include "cbsheaf/space.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "cbsheaf/error.hpp"

namespace cbsheaf {

namespace {

void require_unique_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error("empty point identifier");
    if (!seen.insert(n).second) throw Error("duplicate point \"" + n + "\"");
  }
}

std::string describe(const std::vector<std::string>& names, const std::vector<char>& mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    if (!first) out += ",";
    out += names[i];
    first = false;
  }
  return out + "}";
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<std::string> names, std::vector<PointSet> nbhds)
    : names_(std::move(names)), nbhd_(std::move(nbhds)), mask_(names_.size() * names_.size(), 0) {
  const std::size_t n = names_.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y : nbhd_[x]) mask_[x * n + y] = 1;
  }
}

FiniteSpace FiniteSpace::from_open_sets(std::vector<std::string> points,
                                        const std::vector<std::vector<std::string>>& opens) {
  require_unique_names(points);
  const std::size_t n = points.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(points[i], i);

  std::set<std::vector<char>> topology;
  for (const auto& open : opens) {
    std::vector<char> mask(n, 0);
    for (const auto& name : open) {
      auto it = index.find(name);
      if (it == index.end()) throw Error("unknown point \"" + name + "\" in open set");
      mask[it->second] = 1;
    }
    topology.insert(std::move(mask));
  }
  const std::vector<char> none(n, 0);
  const std::vector<char> all(n, 1);
  if (!topology.contains(none)) throw Error("not a topology: the empty set is not open");
  if (!topology.contains(all)) throw Error("not a topology: the full set is not open");

  const std::vector<std::vector<char>> list(topology.begin(), topology.end());
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      std::vector<char> uni(n), inter(n);
      for (std::size_t k = 0; k < n; ++k) {
        uni[k] = list[i][k] | list[j][k];
        inter[k] = list[i][k] & list[j][k];
      }
      if (!topology.contains(uni) || !topology.contains(inter)) {
        throw Error("not a topology: " + describe(points, list[i]) + " and " +
                    describe(points, list[j]) + " are not closed under " +
                    (topology.contains(uni) ? "intersection" : "union"));
      }
    }
  }

  std::vector<PointSet> nbhds(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<char> meet(n, 1);
    for (const auto& open : list) {
      if (!open[x]) continue;
      for (std::size_t k = 0; k < n; ++k) meet[k] &= open[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (meet[k]) nbhds[x].push_back(k);
    }
  }
  return FiniteSpace(std::move(points), std::move(nbhds));
}

FiniteSpace FiniteSpace::from_min_nbhds(std::vector<std::string> points,
                                        const std::vector<std::vector<std::string>>& nbhds) {
  require_unique_names(points);
  if (nbhds.size() != points.size()) throw Error("one minimal neighbourhood per point is required");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], i);
  std::vector<PointSet> sets(points.size());
  for (std::size_t x = 0; x < points.size(); ++x) {
    for (const auto& name : nbhds[x]) {
      auto it = index.find(name);
      if (it == index.end()) throw Error("unknown point \"" + name + "\" in minimal neighbourhood");
      sets[x].push_back(it->second);
    }
  }
  return from_min_nbhd_indices(std::move(points), std::move(sets));
}

FiniteSpace FiniteSpace::from_min_nbhd_indices(std::vector<std::string> points,
                                               std::vector<PointSet> nbhds) {
  require_unique_names(points);
  const std::size_t n = points.size();
  if (nbhds.size() != n) throw Error("one minimal neighbourhood per point is required");
  for (auto& u : nbhds) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    if (!u.empty() && u.back() >= n) throw Error("unknown point index in minimal neighbourhood");
  }
  FiniteSpace s(std::move(points), std::move(nbhds));
  for (std::size_t x = 0; x < n; ++x) {
    if (!s.in_min_nbhd(x, x)) {
      throw Error("not a topology: " + s.name(x) + " is missing from its own minimal neighbourhood");
    }
    for (auto y : s.nbhd_[x]) {
      for (auto z : s.nbhd_[y]) {
        if (!s.in_min_nbhd(x, z)) {
          throw Error("not a topology: " + s.name(z) + " lies in U_" + s.name(y) + " and " +
                      s.name(y) + " lies in U_" + s.name(x) + ", but " + s.name(z) +
                      " is not in U_" + s.name(x));
        }
      }
    }
  }
  return s;
}

std::optional<std::size_t> FiniteSpace::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t FiniteSpace::index_of(const std::string& name) const {
  if (auto x = find(name)) return *x;
  throw Error("unknown point \"" + name + "\"");
}

PointSet FiniteSpace::all_points() const {
  PointSet all(size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

std::optional<std::size_t> FiniteSpace::nbhd_position(std::size_t x, std::size_t y) const {
  const auto& u = nbhd_.at(x);
  auto it = std::lower_bound(u.begin(), u.end(), y);
  if (it == u.end() || *it != y) return std::nullopt;
  return static_cast<std::size_t>(it - u.begin());
}

PointSet FiniteSpace::closure(std::size_t x) const {
  PointSet out;
  for (std::size_t y = 0; y < size(); ++y) {
    if (in_min_nbhd(y, x)) out.push_back(y);
  }
  return out;
}

bool FiniteSpace::is_closed_point(std::size_t x) const { return closure(x) == PointSet{x}; }

bool FiniteSpace::is_open(const PointSet& set) const {
  std::vector<char> member(size(), 0);
  for (auto x : set) {
    if (x >= size()) return false;
    member[x] = 1;
  }
  for (auto x : set) {
    for (auto y : nbhd_[x]) {
      if (!member[y]) return false;
    }
  }
  return true;
}

FiniteSpace empty_space() { return FiniteSpace{}; }

FiniteSpace discrete_space(std::size_t n) {
  std::vector<std::string> names;
  std::vector<PointSet> nbhds;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("p" + std::to_string(i + 1));
    nbhds.push_back({i});
  }
  return FiniteSpace::from_min_nbhd_indices(std::move(names), std::move(nbhds));
}

FiniteSpace star_space(std::size_t leaves) {
  std::vector<std::string> names{"c"};
  std::vector<PointSet> nbhds(1);
  for (std::size_t i = 0; i <= leaves; ++i) nbhds[0].push_back(i);
  for (std::size_t i = 1; i <= leaves; ++i) {
    names.push_back("l" + std::to_string(i));
    nbhds.push_back({i});
  }
  return FiniteSpace::from_min_nbhd_indices(std::move(names), std::move(nbhds));
}

FiniteSpace indiscrete_space(std::size_t n) {
  std::vector<std::string> names;
  PointSet all;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(n == 2 ? std::string(1, static_cast<char>('a' + i)) : "q" + std::to_string(i + 1));
    all.push_back(i);
  }
  return FiniteSpace::from_min_nbhd_indices(std::move(names), std::vector<PointSet>(n, all));
}

FiniteSpace sierpinski_space() {
  return FiniteSpace::from_min_nbhd_indices({"a", "b"}, {{0}, {0, 1}});
}

PointSet isolated_points(const FiniteSpace& s, const PointSet& subset) {
  std::vector<char> member(s.size(), 0);
  for (auto x : subset) member.at(x) = 1;
  PointSet out;
  for (auto x : subset) {
    const auto& u = s.min_nbhd(x);
    const bool alone = std::none_of(u.begin(), u.end(),
                                    [&](std::size_t y) { return y != x && member[y]; });
    if (alone) out.push_back(x);
  }
  return out;
}

CbFiltration cb_filtration(const FiniteSpace& s) {
  CbFiltration f;
  f.levels.push_back(s.all_points());
  while (true) {
    const PointSet& current = f.levels.back();
    const PointSet isolated = isolated_points(s, current);
    PointSet next;
    std::set_difference(current.begin(), current.end(), isolated.begin(), isolated.end(),
                        std::back_inserter(next));
    const bool stable = next == current;
    f.levels.push_back(std::move(next));
    if (stable) break;
  }
  return f;
}

std::size_t cb_rank(const FiniteSpace& s) { return cb_filtration(s).rank(); }

CbDecomposition decompose(const FiniteSpace& s) {
  const CbFiltration f = cb_filtration(s);
  CbDecomposition d;
  d.hull = f.stable();
  const PointSet all = s.all_points();
  std::set_difference(all.begin(), all.end(), d.hull.begin(), d.hull.end(),
                      std::back_inserter(d.scattered));
  return d;
}

bool is_scattered(const FiniteSpace& s) { return cb_filtration(s).stable().empty(); }

HeightMap heights(const FiniteSpace& s) {
  const CbFiltration f = cb_filtration(s);
  HeightMap h{std::vector<std::optional<std::size_t>>(s.size())};
  for (std::size_t k = 0; k + 1 < f.levels.size(); ++k) {
    PointSet removed;
    std::set_difference(f.levels[k].begin(), f.levels[k].end(), f.levels[k + 1].begin(),
                        f.levels[k + 1].end(), std::back_inserter(removed));
    for (auto x : removed) h.heights[x] = k;
  }
  return h;
}

std::size_t height(const FiniteSpace& s, std::size_t x) {
  if (x >= s.size()) throw Error("unknown point index " + std::to_string(x));
  if (auto h = heights(s)[x]) return *h;
  throw Error("point in perfect hull: " + s.name(x) + " has no height");
}

bool is_branch_rich(const FiniteSpace& s) {
  const HeightMap h = heights(s);
  for (std::size_t x = 0; x < s.size(); ++x) {
    const auto hx = h[x];
    if (!hx || *hx == 0) continue;
    std::size_t branches = 0;
    for (auto y : s.min_nbhd(x)) {
      if (h[y] && *h[y] + 1 == *hx) ++branches;
    }
    if (branches < 2) return false;
  }
  return true;
}

FiniteSpace product(const FiniteSpace& a, const FiniteSpace& b) {
  const std::size_t nb = b.size();
  std::vector<std::string> names;
  std::vector<PointSet> nbhds;
  names.reserve(a.size() * nb);
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < nb; ++y) {
      names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
      PointSet u;
      for (auto xx : a.min_nbhd(x)) {
        for (auto yy : b.min_nbhd(y)) u.push_back(xx * nb + yy);
      }
      nbhds.push_back(std::move(u));
    }
  }
  return FiniteSpace::from_min_nbhd_indices(std::move(names), std::move(nbhds));
}

FiniteSpace disjoint_union(const FiniteSpace& a, const FiniteSpace& b) {
  std::set<std::string> left(a.names().begin(), a.names().end());
  const bool clash = std::any_of(b.names().begin(), b.names().end(),
                                 [&](const std::string& n) { return left.contains(n); });
  std::vector<std::string> names;
  std::vector<PointSet> nbhds;
  for (std::size_t x = 0; x < a.size(); ++x) {
    names.push_back(clash ? a.name(x) + "#0" : a.name(x));
    nbhds.push_back(a.min_nbhd(x));
  }
  const std::size_t offset = a.size();
  for (std::size_t y = 0; y < b.size(); ++y) {
    names.push_back(clash ? b.name(y) + "#1" : b.name(y));
    PointSet u;
    for (auto z : b.min_nbhd(y)) u.push_back(z + offset);
    nbhds.push_back(std::move(u));
  }
  FiniteSpace result = FiniteSpace::from_min_nbhd_indices(std::move(names), std::move(nbhds));
  if (cb_rank(result) != std::max(cb_rank(a), cb_rank(b))) {
    throw std::logic_error("disjoint_union: rank of union differs from the max of the ranks");
  }
  return result;
}

}  // namespace cbsheaf
