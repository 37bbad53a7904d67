#include "cbsheaf/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace cbsheaf {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Rational(1)});
  return m;
}

RatMatrix RatMatrix::from_dense(std::size_t rows, std::size_t cols,
                                const std::vector<Rational>& row_major) {
  if (row_major.size() != rows * cols) {
    throw std::invalid_argument("from_dense: data size does not match shape");
  }
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Rational& v = row_major[r * cols + c];
      if (v != 0) m.data_[r].push_back({c, v});
    }
  }
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows,
                               std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != 0) m.data_[r].push_back({c, rows[r][c]});
    }
  }
  return m;
}

std::size_t RatMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

double RatMatrix::density() const {
  const std::size_t cells = rows_ * cols_;
  return cells == 0 ? 0.0 : static_cast<double>(nnz()) / static_cast<double>(cells);
}

namespace {

template <typename RowT>
auto find_col(RowT& row, std::size_t c) {
  return std::lower_bound(row.begin(), row.end(), c,
                          [](const RatMatrix::Entry& e, std::size_t col) { return e.col < col; });
}

}  // namespace

Rational RatMatrix::at(std::size_t r, std::size_t c) const {
  assert(r < rows_ && c < cols_);
  const auto& row = data_[r];
  auto it = find_col(row, c);
  return (it != row.end() && it->col == c) ? it->value : Rational(0);
}

void RatMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("RatMatrix::set");
  auto& row = data_[r];
  auto it = find_col(row, c);
  const bool present = it != row.end() && it->col == c;
  if (value == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->value = value;
  } else {
    row.insert(it, Entry{c, value});
  }
}

void RatMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("RatMatrix::add");
  if (value == 0) return;
  auto& row = data_[r];
  auto it = find_col(row, c);
  if (it != row.end() && it->col == c) {
    it->value += value;
    if (it->value == 0) row.erase(it);
  } else {
    row.insert(it, Entry{c, value});
  }
}

void RatMatrix::set_row(std::size_t r, Row row) {
  if (r >= rows_) throw std::out_of_range("RatMatrix::set_row");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i].col >= cols_ || row[i].value == 0 || (i > 0 && row[i - 1].col >= row[i].col)) {
      throw std::invalid_argument("RatMatrix::set_row: unsorted, zero or out-of-range entry");
    }
  }
  data_[r] = std::move(row);
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) t.data_[e.col].push_back({r, e.value});
  }
  return t;
}

std::vector<std::vector<Rational>> RatMatrix::to_dense() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) d[r][e.col] = e.value;
  }
  return d;
}

RatMatrix RatMatrix::select_rows(std::span<const std::size_t> rows) const {
  RatMatrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) m.data_[i] = data_.at(rows[i]);
  return m;
}

RatMatrix RatMatrix::select_cols(std::span<const std::size_t> cols) const {
  std::vector<std::size_t> position(cols_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw std::out_of_range("RatMatrix::select_cols");
    position[cols[j]] = j;
  }
  // A column may be selected more than once; fall back to set() in that case.
  std::vector<std::size_t> seen(cols_, 0);
  bool repeated = false;
  for (auto c : cols) repeated |= (++seen[c] > 1);

  RatMatrix m(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    if (repeated) {
      for (std::size_t j = 0; j < cols.size(); ++j) m.set(r, j, at(r, cols[j]));
      continue;
    }
    Row out;
    for (const auto& e : data_[r]) {
      if (position[e.col] < cols.size()) out.push_back({position[e.col], e.value});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    m.data_[r] = std::move(out);
  }
  return m;
}

void RatMatrix::paste_into(RatMatrix& target, std::size_t row_offset,
                           std::size_t col_offset) const {
  if (row_offset + rows_ > target.rows_ || col_offset + cols_ > target.cols_) {
    throw std::out_of_range("RatMatrix::paste_into");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) target.set(row_offset + r, col_offset + e.col, e.value);
  }
}

RatMatrix& RatMatrix::operator*=(const Rational& s) {
  if (s == 0) {
    for (auto& row : data_) row.clear();
    return *this;
  }
  for (auto& row : data_) {
    for (auto& e : row) e.value *= s;
  }
  return *this;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  RatMatrix c(a.rows_, b.cols_);
  std::vector<Rational> acc(b.cols_);
  std::vector<char> touched(b.cols_, 0);
  std::vector<std::size_t> cols_touched;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    cols_touched.clear();
    for (const auto& ea : a.data_[i]) {
      for (const auto& eb : b.data_[ea.col]) {
        if (!touched[eb.col]) {
          touched[eb.col] = 1;
          cols_touched.push_back(eb.col);
          acc[eb.col] = ea.value * eb.value;
        } else {
          acc[eb.col] += ea.value * eb.value;
        }
      }
    }
    std::sort(cols_touched.begin(), cols_touched.end());
    auto& out = c.data_[i];
    for (auto col : cols_touched) {
      if (acc[col] != 0) out.push_back({col, acc[col]});
      touched[col] = 0;
    }
  }
  return c;
}

namespace {

RatMatrix::Row merge_rows(const RatMatrix::Row& x, const RatMatrix::Row& y, int sign) {
  RatMatrix::Row out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].col < x[i].col) {
      out.push_back({y[j].col, sign > 0 ? y[j].value : Rational(-y[j].value)});
      ++j;
    } else {
      Rational v = sign > 0 ? Rational(x[i].value + y[j].value) : Rational(x[i].value - y[j].value);
      if (v != 0) out.push_back({x[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  RatMatrix c(a.rows_, a.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) c.data_[r] = merge_rows(a.data_[r], b.data_[r], +1);
  return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  RatMatrix c(a.rows_, a.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) c.data_[r] = merge_rows(a.data_[r], b.data_[r], -1);
  return c;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    const auto& x = a.data_[r];
    const auto& y = b.data_[r];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].col != y[i].col || x[i].value != y[i].value) return false;
    }
  }
  return true;
}

RatMatrix hstack(std::span<const RatMatrix> blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw std::invalid_argument("hstack: row count mismatch");
    cols += b.cols();
  }
  RatMatrix m(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    b.paste_into(m, 0, offset);
    offset += b.cols();
  }
  return m;
}

RatMatrix vstack(std::span<const RatMatrix> blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column count mismatch");
    rows += b.rows();
  }
  RatMatrix m(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      m.set_row(offset + r, RatMatrix::Row(b.row(r).begin(), b.row(r).end()));
    }
    offset += b.rows();
  }
  return m;
}

}  // namespace cbsheaf
