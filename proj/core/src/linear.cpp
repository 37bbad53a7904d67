#include "cbsheaf/linear.hpp"

#include <algorithm>
#include <array>

#include "cbsheaf/error.hpp"

namespace cbsheaf {

namespace {

// Scratch row for sparse elimination: dense values plus the list of touched
// columns, so extraction costs O(touched log touched) instead of O(cols).
class Accumulator {
 public:
  explicit Accumulator(std::size_t cols) : values_(cols), marked_(cols, 0) {}

  void load(std::span<const RatMatrix::Entry> row) {
    for (const auto& e : row) {
      touch(e.col);
      values_[e.col] = e.value;
    }
  }

  const Rational& operator[](std::size_t c) const { return values_[c]; }

  void axpy(const Rational& factor, const RatMatrix::Row& row) {
    for (const auto& e : row) {
      touch(e.col);
      values_[e.col] -= factor * e.value;
    }
  }

  RatMatrix::Row extract() {
    std::sort(touched_.begin(), touched_.end());
    RatMatrix::Row out;
    for (auto c : touched_) {
      if (values_[c] != 0) out.push_back({c, values_[c]});
      values_[c] = 0;
      marked_[c] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  void touch(std::size_t c) {
    if (!marked_[c]) {
      marked_[c] = 1;
      touched_.push_back(c);
      values_[c] = 0;
    }
  }

  std::vector<Rational> values_;
  std::vector<char> marked_;
  std::vector<std::size_t> touched_;
};

const Rational* entry_at(const RatMatrix::Row& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const RatMatrix::Entry& e, std::size_t col) { return e.col < col; });
  return (it != row.end() && it->col == c) ? &it->value : nullptr;
}

RatMatrix::Row subtract_multiple(const RatMatrix::Row& x, const Rational& f, const RatMatrix::Row& y) {
  RatMatrix::Row out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].col < x[i].col) {
      out.push_back({y[j].col, Rational(-f * y[j].value)});
      ++j;
    } else {
      Rational v = x[i].value - f * y[j].value;
      if (v != 0) out.push_back({x[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

RowEchelon assemble(std::size_t rows, std::size_t cols,
                    std::vector<std::pair<std::size_t, RatMatrix::Row>> pivot_rows) {
  std::sort(pivot_rows.begin(), pivot_rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  RowEchelon result{RatMatrix(rows, cols), {}};
  for (std::size_t i = 0; i < pivot_rows.size(); ++i) {
    result.pivots.push_back(pivot_rows[i].first);
    result.reduced.set_row(i, std::move(pivot_rows[i].second));
  }
  return result;
}

}  // namespace

RowEchelon rref_sparse(const RatMatrix& m) {
  // Pivot rows are kept fully reduced against each other at all times, so a
  // single pass over the pivots reduces an incoming row completely.
  std::vector<std::pair<std::size_t, RatMatrix::Row>> pivots;
  Accumulator acc(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).empty()) continue;
    acc.load(m.row(r));
    for (const auto& [col, prow] : pivots) {
      if (acc[col] != 0) {
        const Rational f = acc[col];
        acc.axpy(f, prow);
      }
    }
    RatMatrix::Row v = acc.extract();
    if (v.empty()) continue;
    const Rational lead = v.front().value;
    if (lead != 1) {
      for (auto& e : v) e.value /= lead;
    }
    const std::size_t lead_col = v.front().col;
    for (auto& [col, prow] : pivots) {
      if (const Rational* f = entry_at(prow, lead_col)) {
        const Rational factor = *f;
        prow = subtract_multiple(prow, factor, v);
      }
    }
    pivots.emplace_back(lead_col, std::move(v));
    if (pivots.size() == m.cols()) break;
  }
  return assemble(m.rows(), m.cols(), std::move(pivots));
}

RowEchelon rref_dense(const RatMatrix& m) {
  auto a = m.to_dense();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols && lead_row < rows; ++c) {
    std::size_t p = lead_row;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[lead_row]);
    const Rational inv = 1 / a[lead_row][c];
    for (std::size_t j = c; j < cols; ++j) a[lead_row][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead_row || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (a[lead_row][j] != 0) a[i][j] -= f * a[lead_row][j];
      }
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return RowEchelon{RatMatrix::from_rows(a, cols), std::move(pivots)};
}

RowEchelon rref(const RatMatrix& m, const EliminationOptions& options) {
  if (m.rows() > 0 && m.cols() > 0 && m.density() >= options.dense_threshold) {
    return rref_dense(m);
  }
  return rref_sparse(m);
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank(); }

Subspace kernel_basis(const RatMatrix& m) {
  const RowEchelon e = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  RatMatrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis.set(f, k, Rational(1));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      const Rational v = e.reduced.at(i, f);
      if (v != 0) basis.set(e.pivots[i], k, -v);
    }
  }
  return Subspace{m.cols(), std::move(basis)};
}

Subspace image_basis(const RatMatrix& m) {
  const RowEchelon e = rref(m);
  return Subspace{m.rows(), m.select_cols(e.pivots)};
}

Cokernel cokernel(const RatMatrix& m) {
  const std::size_t ambient = m.rows();
  const RowEchelon e = rref(m.transpose());
  std::vector<char> is_pivot(ambient, 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> complement;
  for (std::size_t c = 0; c < ambient; ++c) {
    if (!is_pivot[c]) complement.push_back(c);
  }
  std::vector<std::size_t> position(ambient, 0);
  for (std::size_t a = 0; a < complement.size(); ++a) position[complement[a]] = a;

  // q(v) = (v - sum_i v[p_i] r_i) restricted to the complement coordinates.
  Cokernel result{RatMatrix(complement.size(), ambient), RatMatrix(ambient, complement.size()),
                  RatMatrix(ambient, e.rank())};
  for (std::size_t a = 0; a < complement.size(); ++a) {
    result.projection.set(a, complement[a], Rational(1));
    result.section.set(complement[a], a, Rational(1));
  }
  for (std::size_t i = 0; i < e.rank(); ++i) {
    for (const auto& entry : e.reduced.row(i)) {
      result.relations.set(entry.col, i, entry.value);
      if (!is_pivot[entry.col]) {
        result.projection.set(position[entry.col], e.pivots[i], -entry.value);
      }
    }
  }
  return result;
}

RatMatrix induced_map(const RatMatrix& f, const Cokernel& from, const Cokernel& to) {
  if (f.cols() != from.ambient_dim() || f.rows() != to.ambient_dim()) {
    throw NotWellDefined("induced_map: shape mismatch");
  }
  const RatMatrix carried = to.projection * f;
  if (!(carried * from.relations).is_zero()) {
    throw NotWellDefined("induced_map: map does not preserve the quotient relations");
  }
  return carried * from.section;
}

std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
  const std::array<RatMatrix, 2> blocks{a, b};
  const RowEchelon e = rref(hstack(blocks, a.rows()));
  RatMatrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < e.rank(); ++i) {
    const std::size_t p = e.pivots[i];
    if (p >= a.cols()) return std::nullopt;
    for (const auto& entry : e.reduced.row(i)) {
      if (entry.col >= a.cols()) x.set(p, entry.col - a.cols(), entry.value);
    }
  }
  return x;
}

}  // namespace cbsheaf
