#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wittlab/bilinear.hpp"
#include "wittlab/smith.hpp"

namespace wittlab {

// Elements of Z[R^*] as coefficient vectors indexed by the position of each
// unit in LocalRing::units().
class GroupRing {
 public:
  explicit GroupRing(RingPtr ring);

  const LocalRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::size_t size() const { return units_.size(); }
  const Vec& units() const { return units_; }
  std::size_t index(Elem u) const;

  IntVec zero() const { return IntVec(size(), 0); }
  IntVec basis(Elem u) const;      // <u>
  IntVec pfister(Elem a) const;    // <<a>> = 1 - <a>
  IntVec hyperbolic() const;       // h = <1> + <-1>
  IntVec add(const IntVec& x, const IntVec& y) const;
  IntVec sub(const IntVec& x, const IntVec& y) const;
  IntVec scale(std::int64_t c, const IntVec& x) const;
  IntVec mul(const IntVec& x, const IntVec& y) const;
  // Sum of <u_i> over a list of units.
  IntVec diagonal_class(const Vec& entries) const;

 private:
  RingPtr ring_;
  Vec units_;
  std::vector<std::size_t> index_;  // by element code, SIZE_MAX for non-units
};

struct Presentation {
  std::string name;
  Vec generators;  // all units in code order
  IntMatrix relations;
  bool complete = true;  // false if some isometry search gave no answer
  std::size_t rank_cap = 0;
};

Presentation kmw_presentation(const RingPtr& R);
// Steinberg relation only.
Presentation kmw_tilde_presentation(const RingPtr& R);

struct GwOptions {
  std::size_t rank_cap = 0;  // 0: 2 unless the residue field is F2, then 3
  IsometryOptions isometry;
};
std::size_t effective_rank_cap(const LocalRing& R, const GwOptions& opts);

Presentation gw_presentation(const RingPtr& R, const GwOptions& opts = {});
Presentation witt_presentation(const RingPtr& R, const GwOptions& opts = {});

AbelianGroup group_structure(const Presentation& P);

struct Comparison {
  AbelianGroup kmw, gw;
  // Row j: image of the j-th coordinate generator of K0MW in GW coordinates.
  IntMatrix matrix;
  AbelianGroup kernel, cokernel;
  bool is_isomorphism = false;
};
Comparison comparison_map(const RingPtr& R, const GwOptions& opts = {});

// Class of a non-degenerate space in Z[R^*] (via stable diagonalization).
IntVec gw_class_vector(const GroupRing& ZG, const BilinearSpace& S);
IntVec gw_class(const GroupRing& ZG, const AbelianGroup& gw, const BilinearSpace& S);

// products[j][k] = coordinates of g_j * g_k for coordinate generators g.
std::vector<std::vector<IntVec>> product_table(const GroupRing& ZG, const AbelianGroup& G);
// Kernel of the rank map Z[R^*]/L -> Z.
AbelianGroup augmentation_ideal(const GroupRing& ZG, const Presentation& P);

struct IdentityFailure {
  Elem unit;
  std::string identity;
};
struct SteinbergReport {
  bool asserted = false;  // residue field is neither F2 nor F3
  std::size_t checked = 0;
  std::vector<IdentityFailure> failures;
};
SteinbergReport verify_steinberg_consequences(const RingPtr& R);

struct Rank2Report {
  std::size_t samples = 0, holds = 0;
  std::vector<std::string> failures;
};
Rank2Report verify_rank2_equality(const RingPtr& R, std::size_t samples, std::uint64_t seed);

// Isometry classes of the diagonal forms <t_1,...,t_m>, t_i square-class
// representatives, t sorted. Within each determinant class every tuple is
// compared with the earlier class representatives.
struct DiagonalClasses {
  std::vector<Vec> tuples;               // square_class_multisets order
  std::vector<std::size_t> class_of;     // per tuple
  std::vector<std::size_t> representative;  // per class, index into tuples
  std::size_t searches = 0;
  bool complete = true;                  // false if a search gave no answer
};
DiagonalClasses classify_diagonal_tuples(const RingPtr& R, std::size_t rank, const IsometryOptions& iso = {});

struct OracleOptions {
  std::size_t rank_cap = 3;
  std::size_t stab_cap = 2;
  IsometryOptions isometry;
};
struct OracleClassification {
  // Diagonal tuples of square-class representatives grouped into classes;
  // two tuples of equal rank are joined when X + K and Y + K are isometric
  // for some diagonal K of rank at most stab_cap (transitively closed).
  std::vector<std::vector<Vec>> classes;
  std::size_t searches = 0;
};
// Throws BudgetExceeded when an isometry search gives no answer.
OracleClassification stable_isometry_oracle(const RingPtr& R, const OracleOptions& opts = {});

// Compares the oracle partition with the partition of the same tuples by
// their classes in a GW structure, rank by rank.
struct OracleAgreement {
  bool agree = true;
  std::vector<std::size_t> oracle_classes, gw_classes;  // index = rank - 1
};
OracleAgreement compare_with_oracle(const GroupRing& ZG, const AbelianGroup& gw, const OracleClassification& oc);

// Multisets of square-class representatives of the given size, sorted.
std::vector<Vec> square_class_multisets(const LocalRing& R, std::size_t size);

}  // namespace wittlab
