#pragma once

#include <cassert>
#include <initializer_list>

#include "torlog/types.hpp"

namespace torlog {

// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(size_t n);
  static IntMatrix from_columns(size_t dim, const std::vector<VecZ>& cols);
  static IntMatrix from_rows(const std::vector<VecZ>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Int& at(size_t i, size_t j) {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }
  const Int& at(size_t i, size_t j) const {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }

  VecZ row(size_t i) const;
  VecZ col(size_t j) const;
  std::vector<VecZ> columns() const;

  IntMatrix transpose() const;
  IntMatrix mul(const IntMatrix& other) const;
  VecZ apply(const VecZ& v) const;  // matrix * column vector

  void swap_rows(size_t i, size_t j);
  void swap_cols(size_t i, size_t j);
  void negate_row(size_t i);
  void negate_col(size_t j);
  void add_row_multiple(size_t dst, size_t src, const Int& c);  // row dst += c * row src
  void add_col_multiple(size_t dst, size_t src, const Int& c);

  bool operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
  }

  std::string to_string() const;

private:
  size_t rows_, cols_;
  std::vector<Int> a_;
};

Int det(const IntMatrix& m);  // Bareiss fraction-free, square matrices
size_t rank_of(const IntMatrix& m);

}  // namespace torlog
