#include "torlog/matrix.hpp"

#include <sstream>

namespace torlog {

std::string vec_to_string(const VecZ& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    assert(r.size() == cols_);
    for (long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(size_t dim, const std::vector<VecZ>& cols) {
  IntMatrix m(dim, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    assert(cols[j].size() == dim);
    for (size_t i = 0; i < dim; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<VecZ>& rows) {
  size_t cols = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == cols);
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

VecZ IntMatrix::row(size_t i) const {
  VecZ r(cols_);
  for (size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

VecZ IntMatrix::col(size_t j) const {
  VecZ c(rows_);
  for (size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

std::vector<VecZ> IntMatrix::columns() const {
  std::vector<VecZ> cs;
  cs.reserve(cols_);
  for (size_t j = 0; j < cols_; ++j) cs.push_back(col(j));
  return cs;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
  assert(cols_ == other.rows_);
  IntMatrix r(rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (size_t j = 0; j < other.cols_; ++j) r.at(i, j) += x * other.at(k, j);
    }
  return r;
}

VecZ IntMatrix::apply(const VecZ& v) const {
  assert(v.size() == cols_);
  VecZ r(rows_, Int(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

void IntMatrix::swap_rows(size_t i, size_t j) {
  if (i == j) return;
  for (size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(size_t i, size_t j) {
  if (i == j) return;
  for (size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::negate_row(size_t i) {
  for (size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(size_t j) {
  for (size_t k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
}

void IntMatrix::add_row_multiple(size_t dst, size_t src, const Int& c) {
  if (c == 0) return;
  for (size_t k = 0; k < cols_; ++k) at(dst, k) += c * at(src, k);
}

void IntMatrix::add_col_multiple(size_t dst, size_t src, const Int& c) {
  if (c == 0) return;
  for (size_t k = 0; k < rows_; ++k) at(k, dst) += c * at(k, src);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (size_t j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << at(i, j);
    }
  }
  os << "]";
  return os.str();
}

Int det(const IntMatrix& m) {
  assert(m.rows() == m.cols());
  size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        assert(num % prev == 0);
        a.at(i, j) = num / prev;
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

size_t rank_of(const IntMatrix& m) {
  IntMatrix a = m;
  size_t rank = 0;
  size_t rows = a.rows(), cols = a.cols();
  size_t pr = 0;
  for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
    size_t pivot = pr;
    while (pivot < rows && a.at(pivot, pc) == 0) ++pivot;
    if (pivot == rows) continue;
    a.swap_rows(pr, pivot);
    for (size_t i = pr + 1; i < rows; ++i) {
      if (a.at(i, pc) == 0) continue;
      Int g = gcd(a.at(pr, pc), a.at(i, pc));
      Int cp = a.at(pr, pc) / g, ci = a.at(i, pc) / g;
      for (size_t j = pc; j < cols; ++j) a.at(i, j) = a.at(i, j) * cp - a.at(pr, j) * ci;
    }
    ++pr;
    ++rank;
  }
  return rank;
}

}  // namespace torlog
