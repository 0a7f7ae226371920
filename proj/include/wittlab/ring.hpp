#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wittlab/error.hpp"

namespace wittlab {

// Ring elements are canonical codes in [0, |R|). For Z/N the code is the least
// nonnegative residue; for polynomial quotients it is sum c_i * |base|^i over
// the reduced coefficient list. Code order is the canonical element order.
using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

inline constexpr std::size_t kDefaultSizeCap = 4096;

enum class RingKind { PrimeField, PrimePowerField, PolynomialQuotient, IntegerQuotient };

// Parsed form of the ring grammar:
//   GF(p) | GF(p^k) | GF(q)[v]/(POLY) | Z/N
struct RingSpec {
  RingKind kind = RingKind::PrimeField;
  std::uint64_t p = 0;      // characteristic of the (coefficient) field
  std::uint32_t k = 1;      // degree of the (coefficient) field over F_p
  std::uint64_t n = 0;      // Z/N modulus
  std::string var;          // polynomial variable name
  // Monic modulus, lowest degree first. Each coefficient is an element of
  // GF(p^k) given by its F_p digits in the generator `a`, lowest power first.
  std::vector<std::vector<std::uint32_t>> modulus;

  static RingSpec parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const RingSpec&) const = default;
};

class LocalRing : public std::enable_shared_from_this<LocalRing> {
 public:
  // Builds and validates a finite local ring. Throws Error with SyntaxError,
  // NotLocal or TooLarge.
  static std::shared_ptr<const LocalRing> parse(std::string_view spec,
                                                std::size_t size_cap = kDefaultSizeCap);
  static std::shared_ptr<const LocalRing> create(const RingSpec& spec,
                                                 std::size_t size_cap = kDefaultSizeCap);

  const RingSpec& spec() const { return spec_; }
  std::string spec_string() const { return spec_.to_string(); }

  std::size_t size() const { return size_; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const { return add(x, neg_[y]); }
  Elem neg(Elem x) const { return neg_[x]; }
  Elem mul(Elem x, Elem y) const;
  Elem pow(Elem x, std::uint64_t e) const;
  // Throws NonUnit for elements of the maximal ideal.
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }

  bool is_unit(Elem x) const { return unit_flag_[x] != 0; }
  bool in_maximal_ideal(Elem x) const { return unit_flag_[x] == 0; }
  bool is_field() const { return field_; }
  std::uint64_t characteristic_of_residue() const { return residue_char_; }
  bool residue_is_f2() const { return residue_field().size() == 2; }

  const Vec& units() const { return units_; }

  bool is_square(Elem x) const;
  // Some square root of a unit square (least code), or nullopt-like kNoElem.
  Elem sqrt(Elem x) const;
  const Vec& squares() const { return unit_squares_; }
  // Least-code representative of the coset u (R*)^2.
  Elem square_class(Elem u) const;
  const Vec& square_class_reps() const { return class_reps_; }

  // Residue field F = R/m; returns *this when R is a field.
  const LocalRing& residue_field() const { return residue_ ? *residue_ : *this; }
  std::shared_ptr<const LocalRing> residue_field_ptr() const;
  Elem reduce(Elem x) const { return reduce_[x]; }
  // Canonical section F -> R; residue codes embed as the same code in R.
  Elem lift(Elem xbar) const { return xbar; }

  // The polynomial variable (x) for quotients, and the coefficient field
  // generator (a) embedded as a constant.
  Elem variable() const;
  Elem field_generator() const;

  std::string format(Elem x) const;
  Elem parse_element(std::string_view text) const;

  // Coefficients of a polynomial-quotient element (base codes, length deg f).
  Vec coefficients(Elem x) const;
  Elem from_coefficients(const Vec& coeffs) const;
  bool is_polynomial() const { return base_ != nullptr; }
  const LocalRing* coefficient_field() const { return base_.get(); }
  std::size_t degree() const { return degree_; }

  static constexpr Elem kNoElem = 0xffffffffu;

 private:
  LocalRing() = default;
  void build_tables();
  Elem add_slow(Elem x, Elem y) const;
  Elem mul_slow(Elem x, Elem y) const;
  Elem inv_slow(Elem x) const;

  RingSpec spec_;
  std::size_t size_ = 0;
  std::uint64_t modn_ = 0;  // integer quotients and prime fields
  std::shared_ptr<const LocalRing> base_;
  Vec modulus_;  // monic, base codes, lowest first
  std::size_t degree_ = 0;
  std::vector<std::size_t> place_;

  std::vector<Elem> add_tab_, mul_tab_;
  std::vector<Elem> neg_, inv_;
  std::vector<char> unit_flag_;
  Vec units_;
  Vec unit_squares_;
  Vec sqrt_;
  Vec class_of_;
  Vec class_reps_;
  bool field_ = false;

  std::shared_ptr<const LocalRing> residue_;
  Vec reduce_;
  std::uint64_t residue_char_ = 0;

  friend struct RingBuilder;
};

using RingPtr = std::shared_ptr<const LocalRing>;

}  // namespace wittlab
