#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "toric_cy/rational.hpp"

namespace toric_cy {

/// Small dense row-major matrix. Dimensions here never exceed a dozen,
/// so the routines below favour exactness and clarity over blocking.
template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, from_int<S>(0)) {}

  static Matrix from_rows(const std::vector<Vector<S>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    return m;
  }

  static Matrix from_int_rows(const std::vector<IntVector>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = from_int<S>(rows[i][j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector<S> operator*(const Vector<S>& x) const {
    Vector<S> y(rows_, from_int<S>(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

/// Gaussian elimination with partial pivoting (largest magnitude; for
/// rationals any nonzero pivot is exact, the choice only keeps it
/// deterministic).
template <Scalar S>
S determinant(Matrix<S> m) {
  const std::size_t n = m.rows();
  S det = from_int<S>(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs_value(m(r, c)) > abs_value(m(pivot, c))) pivot = r;
    if (is_zero(m(pivot, c))) return from_int<S>(0);
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      S f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Solves the square system; empty when singular.
template <Scalar S>
std::optional<Vector<S>> solve_square(Matrix<S> a, Vector<S> b) {
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs_value(a(r, c)) > abs_value(a(pivot, c))) pivot = r;
    if (is_zero(a(pivot, c))) return std::nullopt;
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(c, j));
      std::swap(b[pivot], b[c]);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a(r, c))) continue;
      S f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  Vector<S> x(n, from_int<S>(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a(i, i);
  return x;
}

/// Reduced row echelon form over the rationals; returns pivot columns.
std::vector<std::size_t> rref_in_place(Matrix<Rational>& m);

std::size_t rank(Matrix<Rational> m);
std::size_t rank(const std::vector<IntVector>& vectors);

/// Unique solution of an overdetermined system with full column rank, or
/// empty when b is not in the column space.
std::optional<RationalVector> solve_full_column_rank(const Matrix<Rational>& a, const RationalVector& b);

/// Basis of ker(m), each vector scaled to a primitive integer vector whose
/// first nonzero entry is positive. Order follows the free columns of the
/// reduced row echelon form.
std::vector<IntVector> integer_kernel_basis(const Matrix<Rational>& m);

/// Nonzero elementary divisors of the integer matrix whose rows are given.
std::vector<Integer> elementary_divisors(const std::vector<IntVector>& rows);

/// True when the sublattice spanned over ℤ by `vectors` equals its real
/// span intersected with ℤ^n.
bool is_saturated(const std::vector<IntVector>& vectors);

}  // namespace toric_cy
