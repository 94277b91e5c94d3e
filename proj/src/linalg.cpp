#include "noarb/linalg.hpp"

#include <stdexcept>

namespace noarb {

namespace {

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Scalar inv = 1 / m[row][col];
    for (auto& e : m[row]) e *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Scalar f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Vector zeros(std::size_t n) { return Vector(n, Scalar(0)); }

bool is_zero(std::span<const Scalar> v) {
  for (const auto& e : v) {
    if (e != 0) return false;
  }
  return true;
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  require_same(a.size(), b.size());
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector add(std::span<const Scalar> a, std::span<const Scalar> b) {
  require_same(a.size(), b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(std::span<const Scalar> a, std::span<const Scalar> b) {
  require_same(a.size(), b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scale(const Scalar& s, std::span<const Scalar> v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Vector multiply(const Matrix& m, std::span<const Scalar> x) {
  Vector y;
  y.reserve(m.size());
  for (const auto& row : m) y.push_back(dot(row, x));
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b.front().size();
  Matrix c(a.size(), zeros(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    require_same(a[i].size(), inner);
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

Matrix identity(std::size_t n) {
  Matrix m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  for (const auto& row : m) require_same(row.size(), cols);
  return rref(m, cols).size();
}

std::optional<Vector> kernel_vector(Matrix m, std::size_t cols) {
  for (const auto& row : m) require_same(row.size(), cols);
  const auto pivots = rref(m, cols);
  if (pivots.size() == cols) return std::nullopt;
  // First free column gets 1; pivot variables follow from the reduced rows.
  std::size_t free_col = 0;
  for (std::size_t p = 0; free_col < cols; ++free_col) {
    if (p < pivots.size() && pivots[p] == free_col) {
      ++p;
      continue;
    }
    break;
  }
  Vector x = zeros(cols);
  x[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][free_col];
  return x;
}

std::string to_string(std::span<const Scalar> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace noarb
