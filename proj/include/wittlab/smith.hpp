#pragma once

#include <cstdint>
#include <vector>

namespace wittlab {

using IntVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVec>;  // row-major, rows may be empty

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... (d_i >= 0).
struct SmithForm {
  IntVec diagonal;        // length min(rows, cols); nonzero entries first
  IntMatrix U, V, Vinv;   // U only when requested
  std::size_t rank = 0;
};

// Throws Error(Overflow) if an intermediate value leaves the int64 range.
SmithForm smith_normal_form(const IntMatrix& A, std::size_t cols, bool with_left = false);

IntMatrix int_identity(std::size_t n);
IntMatrix int_mul(const IntMatrix& A, const IntMatrix& B, std::size_t inner_cols);
IntVec row_times(const IntVec& x, const IntMatrix& M, std::size_t cols);

// Z^n modulo the row lattice of a relation matrix, in invariant-factor form.
// Coordinates list the torsion components (modulo d_i >= 2) first, then the
// free components.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  AbelianGroup(const IntMatrix& relations, std::size_t generators);

  std::size_t generators() const { return generators_; }
  std::size_t free_rank() const { return free_rank_; }
  const IntVec& invariant_factors() const { return factors_; }
  std::size_t coordinate_count() const { return factors_.size() + free_rank_; }
  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }

  IntVec coordinates(const IntVec& x) const;
  bool is_zero(const IntVec& x) const;
  bool equal(const IntVec& x, const IntVec& y) const;
  // An element of Z^n with the given coordinates.
  IntVec section(const IntVec& coords) const;
  // Basis of the relation lattice (rows), in generator coordinates.
  IntMatrix lattice_basis() const;
  // Coefficients of a lattice vector in lattice_basis(); throws InvalidInput
  // when x is not in the lattice.
  IntVec lattice_coefficients(const IntVec& x) const;

  const SmithForm& smith() const { return snf_; }

 private:
  std::size_t generators_ = 0;
  std::size_t free_rank_ = 0;
  IntVec factors_;
  std::size_t first_torsion_ = 0;  // index of the first d_i >= 2
  SmithForm snf_;
};

}  // namespace wittlab
