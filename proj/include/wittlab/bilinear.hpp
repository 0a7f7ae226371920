#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/matrix.hpp"
#include "wittlab/ring.hpp"

namespace wittlab {

// A symmetric bilinear form on R^n given by its Gram matrix. Construction
// checks symmetry and (unless disabled) that det is a unit.
class BilinearSpace {
 public:
  BilinearSpace(RingPtr ring, Matrix gram, bool require_nondegenerate = true);
  static BilinearSpace diagonal(RingPtr ring, const Vec& entries);

  const RingPtr& ring_ptr() const { return ring_; }
  const LocalRing& ring() const { return *ring_; }
  const Matrix& gram() const { return gram_; }
  std::size_t dim() const { return gram_.rows; }

  Elem b(const Vec& x, const Vec& y) const;
  Elem q(const Vec& x) const { return b(x, x); }
  // A*x, so that b(y, x) = dot(y, pair_with(x)).
  Vec pair_with(const Vec& x) const;
  bool is_nondegenerate() const;

 private:
  RingPtr ring_;
  Matrix gram_;
};

// M^T * source * M == target, with det(M) a unit.
struct CongruenceWitness {
  Matrix source, target, matrix;
  bool verify(const LocalRing& R) const;
};

struct DecompositionReport {
  Vec units;
  std::vector<std::pair<Elem, Elem>> blocks;  // [[a,1],[1,b]] with a, b in m
  Matrix assembled() const;
};

std::pair<DecompositionReport, CongruenceWitness> diagonalize(const BilinearSpace& S);

struct BlockResolution {
  std::array<Elem, 3> diagonal;
  CongruenceWitness witness;  // source [[a,1],[1,b]] + <-1>
};
BlockResolution resolve_block(const LocalRing& R, Elem a, Elem b);

struct StableDiagonalization {
  Vec diagonal;
  std::size_t appended = 0;   // copies of <-1> added to the space
  CongruenceWitness witness;  // source A + (-1) I_r, target diag(diagonal)
};
StableDiagonalization stable_diagonalize(const BilinearSpace& S);

// Basis of the orthogonal complement of span(W). Uses orthogonal projection
// when b restricted to W is non-degenerate; over a field a degenerate W is
// handled through the null space; otherwise throws DegenerateSubspace.
std::vector<Vec> orthogonal_complement(const BilinearSpace& S, const std::vector<Vec>& W);

enum class IsometryStatus { Isometric, NotIsometric, Unknown };

struct IsometryOptions {
  std::uint64_t budget = 200'000'000;  // candidate checks
  bool determinant_precheck = true;
  // Compares how often each value is taken by q when |R|^n <= 2^22.
  bool value_precheck = true;
};

struct IsometryResult {
  IsometryStatus status = IsometryStatus::Unknown;
  std::optional<CongruenceWitness> witness;  // source S1, target S2
  std::uint64_t work = 0;
};

IsometryResult is_isometric(const BilinearSpace& S1, const BilinearSpace& S2,
                            const IsometryOptions& opts = {});

// diag(a, 1-a) -> diag(1, a(1-a)) via [[1,1-a],[-1,a]].
CongruenceWitness steinberg_witness(const LocalRing& R, Elem a);
// H -> u*H via [[0,u],[1,0]], H the hyperbolic plane.
CongruenceWitness hyperbolic_scaling_witness(const LocalRing& R, Elem u);

struct IdentityCheck {
  bool holds = false;
  std::string diagnostic;
};
// For c = a x^2 + b y^2 a unit, d = abc and f = a s^2 + b t^2, checks
// f = c ((asx + bty)/c)^2 + d ((tx - sy)/c)^2.
IdentityCheck check_representation_identity(const LocalRing& R, Elem a, Elem b, Elem c, Elem d,
                                            Elem x, Elem y, Elem s, Elem t, Elem f);

}  // namespace wittlab
