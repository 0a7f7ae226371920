#include "wittlab/ring.hpp"

#include <algorithm>
#include <numeric>

#include "expr.hpp"
#include "poly.hpp"

namespace wittlab {

namespace {

constexpr std::size_t kTableLimit = 256;

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Returns (p, k) with n = p^k, or p = 0 when n is not a prime power.
std::pair<std::uint64_t, std::uint32_t> prime_power(std::uint64_t n) {
  if (n < 2) return {0, 0};
  std::uint64_t p = n;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  std::uint32_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return {0, 0};
  return {p, k};
}

std::uint64_t checked_power(std::uint64_t b, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r *= b;
    if (r > cap) return cap + 1;
  }
  return r;
}

// Element algebra for the expression evaluator.
struct RingAlgebra {
  using Value = Elem;
  const LocalRing& R;
  std::string var;
  bool has_generator;

  Elem constant(std::uint64_t v) const {
    std::uint64_t m = R.is_polynomial() ? R.characteristic_of_residue() : R.size();
    return R.from_int(static_cast<std::int64_t>(v % m));
  }
  Elem variable(const std::string& name) const {
    if (!var.empty() && name == var) return R.variable();
    if (has_generator && name == "a") return R.field_generator();
    throw Error(ErrorCode::SyntaxError, "unknown symbol '" + name + "'");
  }
  Elem add(Elem x, Elem y) const { return R.add(x, y); }
  Elem sub(Elem x, Elem y) const { return R.sub(x, y); }
  Elem mul(Elem x, Elem y) const { return R.mul(x, y); }
  Elem neg(Elem x) const { return R.neg(x); }
  Elem pow(Elem x, std::uint64_t e) const { return R.pow(x, e); }
};

}  // namespace

struct RingBuilder {
  static std::shared_ptr<LocalRing> make() { return std::shared_ptr<LocalRing>(new LocalRing()); }

  static std::shared_ptr<const LocalRing> prime_field(std::uint64_t p) {
    RingSpec s;
    s.kind = RingKind::PrimeField;
    s.p = p;
    s.k = 1;
    return LocalRing::create(s, p);
  }
};

Elem LocalRing::from_int(std::int64_t v) const {
  if (base_) return base_->from_int(v);
  auto n = static_cast<std::int64_t>(modn_);
  return static_cast<Elem>(((v % n) + n) % n);
}

Elem LocalRing::add(Elem x, Elem y) const {
  if (!add_tab_.empty()) return add_tab_[x * size_ + y];
  return add_slow(x, y);
}

Elem LocalRing::mul(Elem x, Elem y) const {
  if (!mul_tab_.empty()) return mul_tab_[x * size_ + y];
  return mul_slow(x, y);
}

Elem LocalRing::pow(Elem x, std::uint64_t e) const {
  Elem r = one(), b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Elem LocalRing::inv(Elem x) const {
  Elem r = inv_[x];
  if (r == kNoElem) throw Error(ErrorCode::NonUnit, format(x) + " is not a unit in " + spec_string());
  return r;
}

bool LocalRing::is_square(Elem x) const { return x < sqrt_.size() && sqrt_[x] != kNoElem; }

Elem LocalRing::sqrt(Elem x) const { return sqrt_[x]; }

Elem LocalRing::square_class(Elem u) const {
  if (!is_unit(u)) throw Error(ErrorCode::NotUnit, format(u) + " has no square class");
  return class_of_[u];
}

std::shared_ptr<const LocalRing> LocalRing::residue_field_ptr() const {
  if (residue_) return residue_;
  return shared_from_this();
}

Vec LocalRing::coefficients(Elem x) const {
  if (!base_) return {x};
  Vec c(degree_);
  for (std::size_t i = 0; i < degree_; ++i) {
    c[i] = static_cast<Elem>(x % base_->size());
    x = static_cast<Elem>(x / base_->size());
  }
  return c;
}

Elem LocalRing::from_coefficients(const Vec& coeffs) const {
  if (!base_) return from_int(coeffs.empty() ? 0 : coeffs[0]);
  detail::Poly f(coeffs.begin(), coeffs.end());
  detail::trim(f);
  if (detail::degree(f) >= static_cast<int>(degree_)) f = detail::poly_mod(*base_, f, modulus_);
  Elem code = 0;
  for (std::size_t i = f.size(); i-- > 0;) code = static_cast<Elem>(code * base_->size() + f[i]);
  return code;
}

Elem LocalRing::variable() const {
  if (!base_) throw Error(ErrorCode::SyntaxError, spec_string() + " has no polynomial variable");
  return from_coefficients({0, base_->one()});
}

Elem LocalRing::field_generator() const {
  if (spec_.kind == RingKind::PrimePowerField) return variable();
  if (spec_.kind == RingKind::PolynomialQuotient && base_->spec().kind == RingKind::PrimePowerField)
    return base_->variable();  // constants share codes with the base field
  throw Error(ErrorCode::SyntaxError, spec_string() + " has no coefficient generator 'a'");
}

Elem LocalRing::add_slow(Elem x, Elem y) const {
  if (!base_) return static_cast<Elem>((static_cast<std::uint64_t>(x) + y) % modn_);
  Elem code = 0;
  std::size_t place = 1;
  for (std::size_t i = 0; i < degree_; ++i) {
    Elem cx = static_cast<Elem>(x % base_->size()), cy = static_cast<Elem>(y % base_->size());
    x = static_cast<Elem>(x / base_->size());
    y = static_cast<Elem>(y / base_->size());
    code += static_cast<Elem>(base_->add(cx, cy) * place);
    place *= base_->size();
  }
  return code;
}

Elem LocalRing::mul_slow(Elem x, Elem y) const {
  if (!base_) return static_cast<Elem>((static_cast<std::uint64_t>(x) * y) % modn_);
  detail::Poly fx = coefficients(x), fy = coefficients(y);
  detail::trim(fx);
  detail::trim(fy);
  return from_coefficients(detail::poly_mul(*base_, fx, fy));
}

Elem LocalRing::inv_slow(Elem x) const {
  if (!base_) {
    std::int64_t a = x, m = static_cast<std::int64_t>(modn_), s0 = 1, s1 = 0;
    while (m != 0) {
      std::int64_t q = a / m;
      std::tie(a, m) = std::make_pair(m, a - q * m);
      std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    if (a != 1) return kNoElem;
    return from_int(s0);
  }
  // Extended Euclid in base[x] against the modulus.
  const LocalRing& F = *base_;
  detail::Poly r0 = modulus_, r1 = coefficients(x), s0, s1 = {F.one()};
  detail::trim(r1);
  if (r1.empty()) return kNoElem;
  while (!r1.empty()) {
    auto [q, r] = detail::poly_divmod(F, r0, r1);
    detail::Poly s = detail::poly_sub(F, s0, detail::poly_mul(F, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) return kNoElem;
  Elem c = F.inv(r0[0]);
  for (auto& v : s0) v = F.mul(v, c);
  return from_coefficients(s0);
}

void LocalRing::build_tables() {
  const std::size_t n = size_;
  if (n <= kTableLimit) {
    add_tab_.resize(n * n);
    mul_tab_.resize(n * n);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        add_tab_[x * n + y] = add_slow(x, y);
        mul_tab_[x * n + y] = mul_slow(x, y);
      }
  }
  neg_.assign(n, 0);
  for (Elem x = 0; x < n; ++x) {
    Elem minus_one = from_int(-1);
    neg_[x] = mul(x, minus_one);
  }
  inv_.assign(n, kNoElem);
  unit_flag_.assign(n, 0);
  units_.clear();
  for (Elem x = 0; x < n; ++x) {
    Elem y = inv_slow(x);
    if (y == kNoElem) continue;
    if (mul(x, y) != one()) throw Error(ErrorCode::NotLocal, "inverse check failed");
    inv_[x] = y;
    unit_flag_[x] = 1;
    units_.push_back(x);
  }

  // Locality witness: the non-units are closed under addition.
  Vec nonunits;
  for (Elem x = 0; x < n; ++x)
    if (!unit_flag_[x]) nonunits.push_back(x);
  for (Elem a : nonunits)
    for (Elem b : nonunits)
      if (unit_flag_[add(a, b)])
        throw Error(ErrorCode::NotLocal, spec_string() + ": " + format(a) + " + " + format(b) +
                                             " is a unit although both summands are not");
  field_ = units_.size() + 1 == n;

  sqrt_.assign(n, kNoElem);
  unit_squares_.clear();
  for (Elem u : units_) {
    Elem s = mul(u, u);
    if (sqrt_[s] == kNoElem) {
      sqrt_[s] = u;
      unit_squares_.push_back(s);
    }
  }
  std::sort(unit_squares_.begin(), unit_squares_.end());
  class_of_.assign(n, kNoElem);
  class_reps_.clear();
  for (Elem u : units_) {
    if (class_of_[u] != kNoElem) continue;
    class_reps_.push_back(u);
    for (Elem s : unit_squares_) class_of_[mul(u, s)] = u;
  }
}

std::shared_ptr<const LocalRing> LocalRing::parse(std::string_view text, std::size_t size_cap) {
  return create(RingSpec::parse(text), size_cap);
}

std::shared_ptr<const LocalRing> LocalRing::create(const RingSpec& spec, std::size_t size_cap) {
  auto ring = RingBuilder::make();
  ring->spec_ = spec;
  switch (spec.kind) {
    case RingKind::PrimeField: {
      if (!is_prime(spec.p)) throw Error(ErrorCode::SyntaxError, "GF(p) needs a prime p");
      if (spec.p > size_cap) throw Error(ErrorCode::TooLarge, spec.to_string() + " exceeds size cap");
      ring->modn_ = spec.p;
      ring->size_ = spec.p;
      ring->residue_char_ = spec.p;
      break;
    }
    case RingKind::IntegerQuotient: {
      if (spec.n < 2) throw Error(ErrorCode::SyntaxError, "Z/N needs N >= 2");
      if (spec.n > size_cap) throw Error(ErrorCode::TooLarge, spec.to_string() + " exceeds size cap");
      auto [p, k] = prime_power(spec.n);
      if (p == 0) throw Error(ErrorCode::NotLocal, spec.to_string() + " is not local (N is not a prime power)");
      ring->modn_ = spec.n;
      ring->size_ = spec.n;
      ring->residue_char_ = p;
      break;
    }
    case RingKind::PrimePowerField: {
      if (!is_prime(spec.p) || spec.k < 1) throw Error(ErrorCode::SyntaxError, "GF(p^k) needs prime p");
      std::uint64_t size = checked_power(spec.p, spec.k, size_cap);
      if (size > size_cap) throw Error(ErrorCode::TooLarge, spec.to_string() + " exceeds size cap");
      ring->base_ = RingBuilder::prime_field(spec.p);
      ring->modulus_ = detail::smallest_irreducible(*ring->base_, spec.k);
      ring->degree_ = spec.k;
      ring->size_ = size;
      ring->residue_char_ = spec.p;
      break;
    }
    case RingKind::PolynomialQuotient: {
      RingSpec base_spec;
      base_spec.p = spec.p;
      base_spec.k = spec.k;
      base_spec.kind = spec.k == 1 ? RingKind::PrimeField : RingKind::PrimePowerField;
      auto base = create(base_spec, size_cap);
      if (spec.modulus.size() < 2)
        throw Error(ErrorCode::SyntaxError, "modulus must have positive degree");
      std::uint64_t size = checked_power(base->size(), spec.modulus.size() - 1, size_cap);
      if (size > size_cap) throw Error(ErrorCode::TooLarge, spec.to_string() + " exceeds size cap");
      Vec modulus;
      for (const auto& digits : spec.modulus) {
        Elem code = 0;
        for (std::size_t i = digits.size(); i-- > 0;) code = static_cast<Elem>(code * spec.p + digits[i]);
        modulus.push_back(code);
      }
      if (modulus.back() != base->one()) throw Error(ErrorCode::SyntaxError, "modulus must be monic");
      // Locality: the modulus has to be a power of a single irreducible.
      detail::Poly g = detail::smallest_monic_divisor(*base, modulus);
      std::size_t e = (modulus.size() - 1) / (g.size() - 1);
      detail::Poly power = {base->one()};
      for (std::size_t i = 0; i < e; ++i) power = detail::poly_mul(*base, power, g);
      if (power != modulus)
        throw Error(ErrorCode::NotLocal,
                    spec.to_string() + " is not local (modulus is not a power of an irreducible)");
      ring->base_ = base;
      ring->modulus_ = modulus;
      ring->degree_ = modulus.size() - 1;
      ring->size_ = size;
      ring->residue_char_ = spec.p;
      break;
    }
  }
  ring->build_tables();

  const std::size_t n = ring->size_;
  ring->reduce_.resize(n);
  if (ring->field_) {
    for (Elem x = 0; x < n; ++x) ring->reduce_[x] = x;
  } else if (!ring->base_) {
    ring->residue_ = RingBuilder::prime_field(ring->residue_char_);
    for (Elem x = 0; x < n; ++x) ring->reduce_[x] = static_cast<Elem>(x % ring->residue_char_);
  } else {
    const LocalRing& F = *ring->base_;
    detail::Poly g = detail::smallest_monic_divisor(F, ring->modulus_);
    if (g.size() == 2) {
      ring->residue_ = ring->base_;
    } else {
      RingSpec rs;
      rs.kind = RingKind::PolynomialQuotient;
      rs.p = spec.p;
      rs.k = spec.k;
      rs.var = spec.var;
      for (Elem c : g) {
        std::vector<std::uint32_t> digits(spec.k);
        for (std::uint32_t i = 0; i < spec.k; ++i) {
          digits[i] = static_cast<std::uint32_t>(c % spec.p);
          c = static_cast<Elem>(c / spec.p);
        }
        rs.modulus.push_back(digits);
      }
      ring->residue_ = create(rs, size_cap);
    }
    for (Elem x = 0; x < n; ++x) {
      detail::Poly f = ring->coefficients(x);
      detail::trim(f);
      f = detail::poly_mod(F, f, g);
      Elem code = 0;
      for (std::size_t i = f.size(); i-- > 0;) code = static_cast<Elem>(code * F.size() + f[i]);
      ring->reduce_[x] = code;
    }
  }
  return ring;
}

std::string LocalRing::format(Elem x) const {
  if (!base_) return std::to_string(x);
  const std::string var = spec_.kind == RingKind::PrimePowerField ? "a" : spec_.var;
  Vec c = coefficients(x);
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    std::string coef = base_->format(c[i]);
    if (coef.find('+') != std::string::npos && i > 0) coef = "(" + coef + ")";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term;
    if (i == 0) term = coef;
    else if (c[i] == base_->one()) term = mono;
    else term = coef + "*" + mono;
    if (!out.empty()) out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

Elem LocalRing::parse_element(std::string_view text) const {
  std::string var;
  if (spec_.kind == RingKind::PolynomialQuotient) var = spec_.var;
  bool has_gen = spec_.kind == RingKind::PrimePowerField ||
                 (spec_.kind == RingKind::PolynomialQuotient && spec_.k > 1);
  RingAlgebra alg{*this, var, has_gen};
  return detail::evaluate_expression(text, alg);
}

}  // namespace wittlab
