#pragma once

#include <cstddef>
#include <vector>

#include "wittlab/ring.hpp"

namespace wittlab {

// Dense row-major matrix of ring element codes. The ring is passed to every
// arithmetic helper rather than stored.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Elem> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  Elem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Elem at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool square() const { return rows == cols; }
  bool operator==(const Matrix&) const = default;

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vec& d);
  static Matrix from_rows(const std::vector<Vec>& rows);
  static Matrix from_columns(const std::vector<Vec>& cols);

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  std::vector<Vec> columns() const;
  Matrix transpose() const;
  bool is_symmetric() const;
};

Matrix mat_mul(const LocalRing& R, const Matrix& A, const Matrix& B);
Vec mat_vec(const LocalRing& R, const Matrix& A, const Vec& x);
// M^T A M
Matrix congruence(const LocalRing& R, const Matrix& M, const Matrix& A);
Matrix direct_sum(const Matrix& A, const Matrix& B);
Matrix reduce(const LocalRing& R, const Matrix& A);

// Division-free determinant (Laplace expansion over column subsets).
Elem det(const LocalRing& R, const Matrix& A);
// Throws Degenerate when A is not invertible.
Matrix inverse(const LocalRing& R, const Matrix& A);

Vec vec_add(const LocalRing& R, const Vec& x, const Vec& y);
Vec vec_sub(const LocalRing& R, const Vec& x, const Vec& y);
Vec vec_scale(const LocalRing& R, Elem c, const Vec& x);
// x + c*y
Vec vec_axpy(const LocalRing& R, const Vec& x, Elem c, const Vec& y);
Elem dot(const LocalRing& R, const Vec& x, const Vec& y);
Vec unit_vector(std::size_t n, std::size_t i);
Vec vec_reduce(const LocalRing& R, const Vec& x);

// Incremental linear independence test modulo the maximal ideal. A family of
// vectors in R^n that is independent mod m extends to (or is) a basis.
class ResidueEchelon {
 public:
  ResidueEchelon(const LocalRing& R, std::size_t n);
  // Adds x if it is independent of the vectors already accepted.
  bool add(const Vec& x);
  bool independent(const Vec& x) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  Vec reduced(const Vec& x) const;
  const LocalRing& F_;
  const LocalRing& R_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Basis of {x : A x = 0} for a matrix over a field.
std::vector<Vec> nullspace(const LocalRing& F, const Matrix& A);

}  // namespace wittlab
