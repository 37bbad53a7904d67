#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cbsheaf/rational.hpp"

namespace cbsheaf {

/// Sparse rational matrix, stored row-wise. Each row holds its nonzero
/// entries sorted by column; zeros are never stored.
class RatMatrix {
 public:
  struct Entry {
    std::size_t col;
    Rational value;
  };
  using Row = std::vector<Entry>;

  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix identity(std::size_t n);
  /// Row-major dense data of length rows*cols.
  static RatMatrix from_dense(std::size_t rows, std::size_t cols,
                              const std::vector<Rational>& row_major);
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows,
                             std::size_t cols);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t nnz() const;
  /// Fraction of stored entries; 0 for matrices with no cells.
  [[nodiscard]] double density() const;
  [[nodiscard]] bool is_zero() const { return nnz() == 0; }

  [[nodiscard]] Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  /// Adds value to (r, c), dropping the cell if the sum is zero.
  void add(std::size_t r, std::size_t c, const Rational& value);

  [[nodiscard]] std::span<const Entry> row(std::size_t r) const { return data_[r]; }
  /// Replaces a row; entries must be sorted by column and nonzero.
  void set_row(std::size_t r, Row row);

  [[nodiscard]] RatMatrix transpose() const;
  [[nodiscard]] std::vector<std::vector<Rational>> to_dense() const;
  [[nodiscard]] RatMatrix select_rows(std::span<const std::size_t> rows) const;
  [[nodiscard]] RatMatrix select_cols(std::span<const std::size_t> cols) const;
  /// Copies this matrix into a larger zero matrix at (row_offset, col_offset).
  void paste_into(RatMatrix& target, std::size_t row_offset, std::size_t col_offset) const;

  RatMatrix& operator*=(const Rational& s);
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

RatMatrix hstack(std::span<const RatMatrix> blocks, std::size_t rows);
RatMatrix vstack(std::span<const RatMatrix> blocks, std::size_t cols);

}  // namespace cbsheaf
