#include "wittlab/matrix.hpp"

#include <bit>

namespace wittlab {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols) {
  return from_rows(cols).transpose();
}

Vec Matrix::row(std::size_t i) const { return Vec(data.begin() + i * cols, data.begin() + (i + 1) * cols); }

Vec Matrix::column(std::size_t j) const {
  Vec v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
  return v;
}

std::vector<Vec> Matrix::columns() const {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < cols; ++j) out.push_back(column(j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool Matrix::is_symmetric() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

Matrix mat_mul(const LocalRing& R, const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes differ");
  Matrix C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      Elem a = A.at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < B.cols; ++j) C.at(i, j) = R.add(C.at(i, j), R.mul(a, B.at(k, j)));
    }
  return C;
}

Vec mat_vec(const LocalRing& R, const Matrix& A, const Vec& x) {
  if (A.cols != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes differ");
  Vec y(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    Elem s = 0;
    for (std::size_t j = 0; j < A.cols; ++j) s = R.add(s, R.mul(A.at(i, j), x[j]));
    y[i] = s;
  }
  return y;
}

Matrix congruence(const LocalRing& R, const Matrix& M, const Matrix& A) {
  return mat_mul(R, mat_mul(R, M.transpose(), A), M);
}

Matrix direct_sum(const Matrix& A, const Matrix& B) {
  Matrix C(A.rows + B.rows, A.cols + B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
  for (std::size_t i = 0; i < B.rows; ++i)
    for (std::size_t j = 0; j < B.cols; ++j) C.at(A.rows + i, A.cols + j) = B.at(i, j);
  return C;
}

Matrix reduce(const LocalRing& R, const Matrix& A) {
  Matrix out = A;
  for (auto& v : out.data) v = R.reduce(v);
  return out;
}

Elem det(const LocalRing& R, const Matrix& A) {
  if (!A.square()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = A.rows;
  if (n == 0) return R.one();
  if (n > 20) throw Error(ErrorCode::TooLarge, "determinant dimension too large");
  // dp[mask]: signed sum over assignments of the first popcount(mask) rows to
  // the columns in mask.
  std::vector<Elem> dp(std::size_t{1} << n, 0);
  dp[0] = R.one();
  for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
    if (dp[mask] == 0) continue;
    std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1) continue;
      Elem a = A.at(row, j);
      if (a == 0) continue;
      Elem term = R.mul(dp[mask], a);
      if (std::popcount(mask >> (j + 1)) & 1) term = R.neg(term);
      auto& slot = dp[mask | (std::size_t{1} << j)];
      slot = R.add(slot, term);
    }
  }
  return dp.back();
}

Matrix inverse(const LocalRing& R, const Matrix& A) {
  if (!A.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = A.rows;
  Matrix M = A, Inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (R.is_unit(M.at(r, c))) {
        piv = r;
        break;
      }
    if (piv == n) throw Error(ErrorCode::Degenerate, "matrix is not invertible");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(M.at(c, j), M.at(piv, j));
        std::swap(Inv.at(c, j), Inv.at(piv, j));
      }
    Elem s = R.inv(M.at(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      M.at(c, j) = R.mul(M.at(c, j), s);
      Inv.at(c, j) = R.mul(Inv.at(c, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M.at(r, c) == 0) continue;
      Elem f = M.at(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        M.at(r, j) = R.sub(M.at(r, j), R.mul(f, M.at(c, j)));
        Inv.at(r, j) = R.sub(Inv.at(r, j), R.mul(f, Inv.at(c, j)));
      }
    }
  }
  return Inv;
}

Vec vec_add(const LocalRing& R, const Vec& x, const Vec& y) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = R.add(x[i], y[i]);
  return z;
}

Vec vec_sub(const LocalRing& R, const Vec& x, const Vec& y) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = R.sub(x[i], y[i]);
  return z;
}

Vec vec_scale(const LocalRing& R, Elem c, const Vec& x) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = R.mul(c, x[i]);
  return z;
}

Vec vec_axpy(const LocalRing& R, const Vec& x, Elem c, const Vec& y) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = R.add(x[i], R.mul(c, y[i]));
  return z;
}

Elem dot(const LocalRing& R, const Vec& x, const Vec& y) {
  Elem s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s = R.add(s, R.mul(x[i], y[i]));
  return s;
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

Vec vec_reduce(const LocalRing& R, const Vec& x) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = R.reduce(x[i]);
  return z;
}

ResidueEchelon::ResidueEchelon(const LocalRing& R, std::size_t n)
    : F_(R.residue_field()), R_(R), n_(n) {}

Vec ResidueEchelon::reduced(const Vec& x) const {
  Vec v = vec_reduce(R_, x);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Elem c = v[pivots_[k]];
    if (c != 0) v = vec_axpy(F_, v, F_.neg(c), rows_[k]);
  }
  return v;
}

bool ResidueEchelon::independent(const Vec& x) const {
  Vec v = reduced(x);
  for (Elem c : v)
    if (c != 0) return true;
  return false;
}

bool ResidueEchelon::add(const Vec& x) {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector length");
  Vec v = reduced(x);
  std::size_t p = 0;
  while (p < n_ && v[p] == 0) ++p;
  if (p == n_) return false;
  v = vec_scale(F_, F_.inv(v[p]), v);
  for (auto& row : rows_) {
    Elem c = row[p];
    if (c != 0) row = vec_axpy(F_, row, F_.neg(c), v);
  }
  rows_.push_back(v);
  pivots_.push_back(p);
  return true;
}

std::vector<Vec> nullspace(const LocalRing& F, const Matrix& A) {
  Matrix M = A;
  const std::size_t n = A.cols;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < M.rows; ++c) {
    std::size_t piv = M.rows;
    for (std::size_t i = r; i < M.rows; ++i)
      if (M.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == M.rows) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(M.at(r, j), M.at(piv, j));
    Elem s = F.inv(M.at(r, c));
    for (std::size_t j = 0; j < n; ++j) M.at(r, j) = F.mul(M.at(r, j), s);
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      Elem f = M.at(i, c);
      for (std::size_t j = 0; j < n; ++j) M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<Vec> basis;
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = F.neg(M.at(k, free));
    basis.push_back(v);
  }
  return basis;
}

}  // namespace wittlab
