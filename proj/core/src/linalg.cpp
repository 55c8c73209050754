#include "toric_cy/linalg.hpp"

#include <algorithm>
#include <cassert>

#include "toric_cy/error.hpp"

namespace toric_cy {

std::vector<std::size_t> rref_in_place(Matrix<Rational>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, c))) continue;
      Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t rank(Matrix<Rational> m) { return rref_in_place(m).size(); }

std::size_t rank(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix<Rational>::from_int_rows(vectors));
}

std::optional<RationalVector> solve_full_column_rank(const Matrix<Rational>& a, const RationalVector& b) {
  if (b.size() != a.rows()) throw Error(Errc::DimensionMismatch, "right-hand side has wrong length");
  Matrix<Rational> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  if (pivots.size() != a.cols()) throw Error(Errc::InvalidInput, "system is not of full column rank");
  RationalVector x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

namespace {

IntVector primitive_integer(const RationalVector& v) {
  Integer den = 1;
  for (const Rational& q : v) den = lcm(den, q.get_den());
  std::vector<Integer> scaled;
  scaled.reserve(v.size());
  for (const Rational& q : v) scaled.emplace_back(q.get_num() * (den / q.get_den()));
  IntVector out = primitive_part(scaled);
  auto first = std::find_if(out.begin(), out.end(), [](long long x) { return x != 0; });
  if (first != out.end() && *first < 0)
    for (long long& x : out) x = -x;
  return out;
}

}  // namespace

std::vector<IntVector> integer_kernel_basis(const Matrix<Rational>& m) {
  Matrix<Rational> r = m;
  std::vector<std::size_t> pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t row = 0; row < pivots.size(); ++row) v[pivots[row]] = -r(row, free);
    basis.push_back(primitive_integer(v));
  }
  return basis;
}

std::vector<Integer> elementary_divisors(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  std::vector<std::vector<Integer>> a(m, std::vector<Integer>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<signed long>(rows[i][j]);

  std::vector<Integer> divisors;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return divisors;
      std::swap(a[t], a[pi]);
      for (std::size_t i = 0; i < m; ++i) std::swap(a[i][t], a[i][pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // the pivot must divide the remaining block
      std::size_t bad_row = m;
      for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == m) break;
      for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad_row][j];
    }
    divisors.push_back(abs(a[t][t]));
  }
  return divisors;
}

bool is_saturated(const std::vector<IntVector>& vectors) {
  for (const Integer& e : elementary_divisors(vectors))
    if (e != 1) return false;
  return true;
}

}  // namespace toric_cy
