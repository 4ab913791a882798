#ifndef ODEINV_POLY_MATRIX_HPP
#define ODEINV_POLY_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "odeinv/polynomial.hpp"

namespace odeinv {

/// Dense row-major matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars = 0);
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);

  static PolyMatrix identity(std::size_t n, std::size_t nvars = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_.at(r * cols_ + c); }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }
  const std::vector<Polynomial>& entries() const { return entries_; }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  /// Matrix-vector product.
  friend std::vector<Polynomial> operator*(const PolyMatrix& a, const std::vector<Polynomial>& v);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> entries_;
};

/// Fraction-free (Bareiss) elimination; every intermediate division is exact
/// in the polynomial ring. Throws DimensionError for non-square input.
Polynomial determinant(const PolyMatrix& m);

Polynomial trace(const PolyMatrix& m);

}  // namespace odeinv

#endif  // ODEINV_POLY_MATRIX_HPP
