#include "wittlab/smith.hpp"

#include <algorithm>
#include <cstdlib>

#include "wittlab/error.hpp"

namespace wittlab {

namespace {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in Smith form");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer overflow in Smith form");
  return r;
}

// Floor-free quotient rounding toward zero keeps remainders smaller than the pivot.
std::int64_t quot(std::int64_t a, std::int64_t b) { return a / b; }

std::int64_t mod_positive(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// row_i -= q * row_t
void row_axpy(IntMatrix& M, std::size_t i, std::size_t t, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < M[i].size(); ++j)
    if (M[t][j] != 0) M[i][j] = add(M[i][j], mul(-q, M[t][j]));
}

// col_j -= q * col_t
void col_axpy(IntMatrix& M, std::size_t j, std::size_t t, std::int64_t q) {
  if (q == 0) return;
  for (auto& row : M)
    if (row[t] != 0) row[j] = add(row[j], mul(-q, row[t]));
}

void col_swap(IntMatrix& M, std::size_t a, std::size_t b) {
  for (auto& row : M) std::swap(row[a], row[b]);
}

struct Reducer {
  IntMatrix M, U, V, Vinv;
  bool left;
  std::size_t rows, cols;

  void rswap(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(M[a], M[b]);
    if (left) std::swap(U[a], U[b]);
  }
  void cswap(std::size_t a, std::size_t b) {
    if (a == b) return;
    col_swap(M, a, b);
    col_swap(V, a, b);
    std::swap(Vinv[a], Vinv[b]);
  }
  void raxpy(std::size_t i, std::size_t t, std::int64_t q) {
    row_axpy(M, i, t, q);
    if (left) row_axpy(U, i, t, q);
  }
  void caxpy(std::size_t j, std::size_t t, std::int64_t q) {
    col_axpy(M, j, t, q);
    col_axpy(V, j, t, q);
    row_axpy(Vinv, t, j, -q);  // inverse of the column operation
  }
  void rneg(std::size_t i) {
    for (auto& v : M[i]) v = -v;
    if (left)
      for (auto& v : U[i]) v = -v;
  }

  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    std::int64_t best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        std::int64_t a = std::llabs(M[i][j]);
        if (a != 0 && (best == 0 || a < best)) {
          best = a;
          pi = i;
          pj = j;
          if (best == 1) return true;
        }
      }
    return best != 0;
  }

  void run() {
    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) return;
      rswap(t, pi);
      cswap(t, pj);
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (M[i][t] == 0) continue;
          raxpy(i, t, quot(M[i][t], M[t][t]));
          if (M[i][t] != 0) {
            dirty = true;
            if (std::llabs(M[i][t]) < std::llabs(M[t][t])) rswap(t, i);
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (M[t][j] == 0) continue;
          caxpy(j, t, quot(M[t][j], M[t][t]));
          if (M[t][j] != 0) {
            dirty = true;
            if (std::llabs(M[t][j]) < std::llabs(M[t][t])) cswap(t, j);
          }
        }
        if (dirty) continue;
        // Divisibility: fold an offending row into the pivot row.
        std::size_t bad = rows;
        for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (M[i][j] % M[t][t] != 0) {
              bad = i;
              break;
            }
        if (bad == rows) break;
        raxpy(t, bad, -1);
      }
      if (M[t][t] < 0) rneg(t);
    }
  }
};

}  // namespace

IntMatrix int_identity(std::size_t n) {
  IntMatrix I(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

IntMatrix int_mul(const IntMatrix& A, const IntMatrix& B, std::size_t inner_cols) {
  IntMatrix C(A.size(), IntVec(inner_cols, 0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t k = 0; k < A[i].size(); ++k) {
      if (A[i][k] == 0) continue;
      for (std::size_t j = 0; j < inner_cols; ++j) C[i][j] = add(C[i][j], mul(A[i][k], B[k][j]));
    }
  return C;
}

IntVec row_times(const IntVec& x, const IntMatrix& M, std::size_t cols) {
  IntVec y(cols, 0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) y[j] = add(y[j], mul(x[k], M[k][j]));
  }
  return y;
}

SmithForm smith_normal_form(const IntMatrix& A, std::size_t cols, bool with_left) {
  Reducer red;
  red.rows = A.size();
  red.cols = cols;
  red.M = A;
  for (auto& row : red.M)
    if (row.size() != cols) throw Error(ErrorCode::DimensionMismatch, "relation row has the wrong length");
  red.left = with_left;
  if (with_left) red.U = int_identity(red.rows);
  red.V = int_identity(cols);
  red.Vinv = int_identity(cols);
  red.run();
  SmithForm out;
  const std::size_t k = std::min(red.rows, cols);
  out.diagonal.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.diagonal[i] = red.M[i][i];
    if (out.diagonal[i] != 0) out.rank = i + 1;
  }
  out.U = std::move(red.U);
  out.V = std::move(red.V);
  out.Vinv = std::move(red.Vinv);
  return out;
}

AbelianGroup::AbelianGroup(const IntMatrix& relations, std::size_t generators)
    : generators_(generators), snf_(smith_normal_form(relations, generators)) {
  first_torsion_ = 0;
  while (first_torsion_ < snf_.rank && snf_.diagonal[first_torsion_] == 1) ++first_torsion_;
  for (std::size_t i = first_torsion_; i < snf_.rank; ++i) factors_.push_back(snf_.diagonal[i]);
  free_rank_ = generators - snf_.rank;
}

IntVec AbelianGroup::coordinates(const IntVec& x) const {
  if (x.size() != generators_) throw Error(ErrorCode::DimensionMismatch, "element has the wrong length");
  IntVec y = row_times(x, snf_.V, generators_);
  IntVec c;
  for (std::size_t i = first_torsion_; i < snf_.rank; ++i) c.push_back(mod_positive(y[i], snf_.diagonal[i]));
  for (std::size_t i = snf_.rank; i < generators_; ++i) c.push_back(y[i]);
  return c;
}

bool AbelianGroup::is_zero(const IntVec& x) const {
  for (auto v : coordinates(x))
    if (v != 0) return false;
  return true;
}

bool AbelianGroup::equal(const IntVec& x, const IntVec& y) const { return coordinates(x) == coordinates(y); }

IntVec AbelianGroup::section(const IntVec& coords) const {
  if (coords.size() != coordinate_count()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  IntVec y(generators_, 0);
  std::size_t k = 0;
  for (std::size_t i = first_torsion_; i < snf_.rank; ++i) y[i] = coords[k++];
  for (std::size_t i = snf_.rank; i < generators_; ++i) y[i] = coords[k++];
  return row_times(y, snf_.Vinv, generators_);
}

IntMatrix AbelianGroup::lattice_basis() const {
  IntMatrix B;
  for (std::size_t i = 0; i < snf_.rank; ++i) {
    IntVec row = snf_.Vinv[i];
    for (auto& v : row) v = mul(v, snf_.diagonal[i]);
    B.push_back(row);
  }
  return B;
}

IntVec AbelianGroup::lattice_coefficients(const IntVec& x) const {
  IntVec y = row_times(x, snf_.V, generators_);
  IntVec c(snf_.rank);
  for (std::size_t i = 0; i < snf_.rank; ++i) {
    if (y[i] % snf_.diagonal[i] != 0) throw Error(ErrorCode::InvalidInput, "vector is not in the relation lattice");
    c[i] = y[i] / snf_.diagonal[i];
  }
  for (std::size_t i = snf_.rank; i < generators_; ++i)
    if (y[i] != 0) throw Error(ErrorCode::InvalidInput, "vector is not in the relation lattice");
  return c;
}

}  // namespace wittlab
