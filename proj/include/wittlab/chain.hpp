#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/bilinear.hpp"

namespace wittlab {

// An ordered tuple of vectors. Overlap and endpoint comparisons in chains
// use the underlying vector sets.
using Basis = std::vector<Vec>;

struct Chain {
  std::vector<Basis> bases;
  std::size_t steps() const { return bases.empty() ? 0 : bases.size() - 1; }
};

struct ChainCheck {
  bool ok = false;
  std::string diagnostic;
};

bool same_vector_set(const Basis& a, const Basis& b);
std::size_t common_vectors(const Basis& a, const Basis& b);

// Checks pairwise orthogonality, anisotropy of every vector and a unit
// determinant of the column matrix.
ChainCheck check_orthogonal_basis(const BilinearSpace& S, const Basis& B);
ChainCheck verify_chain(const BilinearSpace& S, const Chain& c, const Basis& from, const Basis& to);

// (u_i + e u_j, u_j - e q(u_j) q(u_i)^-1 u_i) in positions i, j.
Basis elementary_move(const BilinearSpace& S, const Basis& B, Elem eps, std::size_t i, std::size_t j);

// B1 and B2 must agree componentwise modulo the maximal ideal.
Chain chain_equal_mod_m(const BilinearSpace& S, const Basis& B1, const Basis& B2);

// Lifts of residue-field orthogonal bases (vectors with residue codes).
Basis lift_basis(const BilinearSpace& S, const Basis& residue_basis);
// Lifts two residue bases that differ in at most two positions so that the
// lifts share every other position exactly.
std::pair<Basis, Basis> lift_pair(const BilinearSpace& S, const Basis& b, const Basis& c);

struct ChainOptions {
  std::uint64_t bfs_budget = 2'000'000;  // nodes
  std::uint64_t bfs_size_cap = std::uint64_t{1} << 16;  // |R|^n
};

Chain chain_field(const BilinearSpace& S, const Basis& B, const Basis& C, const ChainOptions& opts = {});
Chain chain_local(const BilinearSpace& S, const Basis& B, const Basis& C, const ChainOptions& opts = {});

// Chain from B = (u_1..u_n) to an orthogonal basis whose first vector is
// sum a_i u_i. Works inside the span of B, which may be a proper subspace.
std::pair<Chain, Basis> extend_vector_chain(const BilinearSpace& S, const Basis& B, const Vec& a);

// q(x) = sum_i coeffs[i] * (L x)_i^2 over a field of characteristic 2.
struct DiagonalForm {
  Matrix change;  // square, invertible
  Vec coeffs;
};
Vec find_nonvanishing_vector(const LocalRing& F, const std::vector<DiagonalForm>& forms);

// Chain on <1>^n from the standard basis e to e^, e^_r = sum_{i != r} e_i.
Chain hat_chain(const RingPtr& F, std::size_t n, const ChainOptions& opts = {});
Basis standard_basis(std::size_t n);
Basis hat_basis(const LocalRing& R, std::size_t n);

// Breadth-first search over orthogonal bases up to rescaling of single
// vectors, with edges replacing at most two vectors.
enum class BfsStatus { Found, Unreachable };
struct BfsResult {
  BfsStatus status = BfsStatus::Unreachable;
  Chain chain;
  std::uint64_t nodes = 0;
};
BfsResult bfs_chain_oracle(const BilinearSpace& S, const Basis& B, const Basis& C, const ChainOptions& opts = {});
// Line-normalized orthogonal bases reachable from B (the whole component).
std::vector<Basis> bfs_component(const BilinearSpace& S, const Basis& B, const ChainOptions& opts = {});
// All orthogonal bases as sets of line representatives, by exhaustive search.
std::vector<Basis> enumerate_orthogonal_bases(const BilinearSpace& S, const ChainOptions& opts = {});

// Representative of the line R^* x: x divided by its first unit coordinate.
Vec normalize_line(const LocalRing& R, const Vec& x);

}  // namespace wittlab
