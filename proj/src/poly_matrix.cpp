#include "odeinv/poly_matrix.hpp"

#include <utility>

#include "odeinv/errors.hpp"

namespace odeinv {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(nvars)) {}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols)
    throw DimensionError("matrix needs " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(entries_.size()));
}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t nvars) {
  PolyMatrix m(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(nvars, 1);
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
  PolyMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      for (std::size_t k = 0; k < a.cols_; ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

std::vector<Polynomial> operator*(const PolyMatrix& a, const std::vector<Polynomial>& v) {
  if (a.cols_ != v.size()) throw DimensionError("matrix-vector dimension mismatch");
  std::vector<Polynomial> out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

Polynomial determinant(const PolyMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(0, 1);
  std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);

  bool negate = false;
  Polynomial previous = Polynomial::constant(0, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k].is_zero()) ++swap;
      if (swap == n) return Polynomial();
      std::swap(a[k], a[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = exact_divide(num, previous);
      }
      a[i][k] = Polynomial();
    }
    previous = a[k][k];
  }
  Polynomial det = a[n - 1][n - 1];
  return negate ? -det : det;
}

Polynomial trace(const PolyMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace of a non-square matrix");
  Polynomial t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace odeinv
