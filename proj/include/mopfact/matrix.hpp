#pragma once

// Dense exact matrices and fraction-free determinants.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mopfact/errors.hpp"
#include "mopfact/scalar.hpp"

namespace mopfact {

/// Row-major dense matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i].at(j);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  /// Leading block [0,r) x [0,c).
  Matrix leading(std::size_t r, std::size_t c) const {
    Matrix out(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) out(i, j) = (*this)(i, j);
    return out;
  }
  Matrix leading(std::size_t n) const { return leading(n, n); }

  /// Copy with one row and one column removed.
  Matrix without(std::size_t drop_row, std::size_t drop_col) const {
    Matrix out(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
      if (i == drop_row) continue;
      for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
        if (j == drop_col) continue;
        out(oi, oj++) = (*this)(i, j);
      }
      ++oi;
    }
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Shift matrix Lambda (ones on the supradiagonal), n x n truncation.
inline Matrix shift_matrix(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = Scalar(1);
  return m;
}

/// Determinant by Bareiss elimination with row exchanges. det of the 0x0 matrix is 1.
inline Scalar determinant(Matrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  Scalar prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return Scalar(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

/// Inverse of a unit-lower-triangular matrix by forward substitution.
inline Matrix unit_lower_inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix inv = Matrix::identity(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i) {
      Scalar s(0);
      for (std::size_t k = j; k < i; ++k) s += a(i, k) * inv(k, j);
      inv(i, j) = -s;
    }
  return inv;
}

/// Inverse of an upper-triangular matrix with nonzero diagonal.
inline Matrix upper_inverse(const Matrix& b) {
  const std::size_t n = b.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (b(j, j).is_zero()) throw ZeroDivisor();
    inv(j, j) = Scalar(1) / b(j, j);
    for (std::size_t ii = j; ii-- > 0;) {
      Scalar s(0);
      for (std::size_t k = ii + 1; k <= j; ++k) s += b(ii, k) * inv(k, j);
      inv(ii, j) = -s / b(ii, ii);
    }
  }
  return inv;
}

}  // namespace mopfact
