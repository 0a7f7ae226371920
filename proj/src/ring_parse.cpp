#include <cctype>
#include <string>

#include "expr.hpp"
#include "poly.hpp"
#include "wittlab/ring.hpp"

namespace wittlab {

namespace {

[[noreturn]] void syntax(const std::string& text, const std::string& why) {
  throw Error(ErrorCode::SyntaxError, "bad ring spec '" + text + "': " + why);
}

std::uint64_t read_int(const std::string& s, std::size_t& pos, const std::string& text) {
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) syntax(text, "expected integer");
  std::uint64_t v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    if (v > 1000000000000ull) syntax(text, "integer too large");
    v = v * 10 + static_cast<std::uint64_t>(s[pos++] - '0');
  }
  return v;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over the coefficient field, for evaluating the modulus.
struct PolyAlgebra {
  using Value = detail::Poly;
  const LocalRing& F;
  std::string var;

  Value constant(std::uint64_t v) const {
    Value f = {F.from_int(static_cast<std::int64_t>(v % F.characteristic_of_residue()))};
    detail::trim(f);
    return f;
  }
  Value variable(const std::string& name) const {
    if (name == var) return {0, F.one()};
    if (name == "a" && F.spec().kind == RingKind::PrimePowerField) return {F.variable()};
    throw Error(ErrorCode::SyntaxError, "unknown symbol '" + name + "' in modulus");
  }
  Value add(const Value& x, const Value& y) const { return detail::poly_add(F, x, y); }
  Value sub(const Value& x, const Value& y) const { return detail::poly_sub(F, x, y); }
  Value mul(const Value& x, const Value& y) const { return detail::poly_mul(F, x, y); }
  Value neg(const Value& x) const { return detail::poly_neg(F, x); }
  Value pow(const Value& x, std::uint64_t e) const {
    Value r = {F.one()};
    for (std::uint64_t i = 0; i < e; ++i) r = detail::poly_mul(F, r, x);
    return r;
  }
};

std::string monomial(const std::string& var, std::size_t i) {
  if (i == 0) return "";
  if (i == 1) return var;
  return var + "^" + std::to_string(i);
}

// Element of GF(p^k) from its digits, highest power first.
std::string field_coefficient(const std::vector<std::uint32_t>& digits) {
  std::string out;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] == 0) continue;
    std::string term;
    if (i == 0) term = std::to_string(digits[i]);
    else if (digits[i] == 1) term = monomial("a", i);
    else term = std::to_string(digits[i]) + "*" + monomial("a", i);
    if (!out.empty()) out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

RingSpec RingSpec::parse(std::string_view raw) {
  std::string text(raw), s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  RingSpec spec;
  std::size_t pos = 0;

  if (s.rfind("Z/", 0) == 0) {
    pos = 2;
    spec.kind = RingKind::IntegerQuotient;
    spec.n = read_int(s, pos, text);
    if (pos != s.size()) syntax(text, "trailing characters");
    if (spec.n < 2) syntax(text, "N must be at least 2");
    return spec;
  }
  if (s.rfind("GF(", 0) != 0) syntax(text, "expected GF(...) or Z/N");
  pos = 3;
  std::uint64_t q = read_int(s, pos, text);
  std::uint64_t p = 0;
  std::uint32_t k = 1;
  if (pos < s.size() && s[pos] == '^') {
    ++pos;
    p = q;
    std::uint64_t e = read_int(s, pos, text);
    if (e < 1 || e > 64) syntax(text, "bad exponent");
    k = static_cast<std::uint32_t>(e);
  } else {
    for (std::uint64_t d = 2; d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    k = 0;
    for (std::uint64_t r = q; p != 0 && r % p == 0; r /= p) ++k;
    std::uint64_t check = 1;
    for (std::uint32_t i = 0; i < k; ++i) check *= p;
    if (p == 0 || check != q) syntax(text, "field order must be a prime power");
  }
  if (!is_prime(p)) syntax(text, "field characteristic must be prime");
  if (pos >= s.size() || s[pos] != ')') syntax(text, "expected ')'");
  ++pos;
  spec.p = p;
  spec.k = k;
  if (pos == s.size()) {
    spec.kind = k == 1 ? RingKind::PrimeField : RingKind::PrimePowerField;
    return spec;
  }

  // GF(q)[v]/(POLY)
  if (s[pos] != '[' || pos + 2 >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos + 1])) ||
      s[pos + 2] != ']')
    syntax(text, "expected [variable]");
  spec.var = std::string(1, s[pos + 1]);
  if (spec.var == "a") syntax(text, "'a' is reserved for the field generator");
  pos += 3;
  if (s.compare(pos, 2, "/(") != 0 || s.back() != ')') syntax(text, "expected /(POLY)");
  std::string poly_text = s.substr(pos + 2, s.size() - pos - 3);

  RingSpec base_spec;
  base_spec.kind = k == 1 ? RingKind::PrimeField : RingKind::PrimePowerField;
  base_spec.p = p;
  base_spec.k = k;
  RingPtr base;
  try {
    base = LocalRing::create(base_spec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TooLarge) throw;
    syntax(text, e.what());
  }
  PolyAlgebra alg{*base, spec.var};
  detail::Poly f = detail::evaluate_expression(poly_text, alg);
  if (detail::degree(f) < 1) syntax(text, "modulus must have positive degree");
  f = detail::make_monic(*base, f);
  spec.kind = RingKind::PolynomialQuotient;
  for (Elem c : f) {
    std::vector<std::uint32_t> digits(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      digits[i] = static_cast<std::uint32_t>(c % p);
      c = static_cast<Elem>(c / p);
    }
    spec.modulus.push_back(digits);
  }
  return spec;
}

std::string RingSpec::to_string() const {
  switch (kind) {
    case RingKind::IntegerQuotient: return "Z/" + std::to_string(n);
    case RingKind::PrimeField: return "GF(" + std::to_string(p) + ")";
    case RingKind::PrimePowerField: break;
    case RingKind::PolynomialQuotient: break;
  }
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  if (kind == RingKind::PrimePowerField) return "GF(" + std::to_string(q) + ")";
  std::string poly;
  for (std::size_t i = modulus.size(); i-- > 0;) {
    bool zero = true;
    for (auto d : modulus[i]) zero = zero && d == 0;
    if (zero) continue;
    std::string coef = field_coefficient(modulus[i]);
    std::string term;
    if (i == 0) term = coef;
    else if (coef == "1") term = monomial(var, i);
    else if (coef.find('+') != std::string::npos) term = "(" + coef + ")*" + monomial(var, i);
    else term = coef + "*" + monomial(var, i);
    if (!poly.empty()) poly += "+";
    poly += term;
  }
  return "GF(" + std::to_string(q) + ")[" + var + "]/(" + poly + ")";
}

}  // namespace wittlab
