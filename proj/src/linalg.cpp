#include "cmv/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace cmv {

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        if (m[row][c] != 0) m[r][c] -= f * m[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

Matrix null_space(const Matrix& rows, std::size_t cols) {
  Matrix m = rows;
  for (const auto& r : m) {
    if (r.size() != cols) throw std::invalid_argument("null_space: ragged matrix");
  }
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Rational inv = 1 / m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve: size mismatch");
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  const auto pivots = rref(a);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    if (pivots[i] != i) return std::nullopt;
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

std::optional<std::vector<Rational>> particular_solution(Matrix a, const std::vector<Rational>& b,
                                                         std::size_t cols) {
  if (b.size() != a.size()) throw std::invalid_argument("particular_solution: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i].resize(cols);
    a[i].push_back(b[i]);
  }
  const auto pivots = rref(a);
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;
    x[pivots[r]] = a[r][cols];
  }
  return x;
}

std::size_t affine_dimension(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("affine_dimension of an empty set");
  Matrix diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return rank(std::move(diffs));
}

bool affinely_independent(std::span<const Point> points) {
  return !points.empty() && affine_dimension(points) + 1 == points.size();
}

}  // namespace cmv
