#pragma once

// Dense univariate polynomials over a finite field given as a LocalRing.
// Coefficients lowest degree first; the zero polynomial is the empty vector.

#include <utility>

#include "wittlab/ring.hpp"

namespace wittlab::detail {

using Poly = std::vector<Elem>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly poly_add(const LocalRing& F, const Poly& f, const Poly& g) {
  Poly out(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Elem a = i < f.size() ? f[i] : 0;
    Elem b = i < g.size() ? g[i] : 0;
    out[i] = F.add(a, b);
  }
  trim(out);
  return out;
}

inline Poly poly_neg(const LocalRing& F, Poly f) {
  for (auto& c : f) c = F.neg(c);
  return f;
}

inline Poly poly_sub(const LocalRing& F, const Poly& f, const Poly& g) {
  return poly_add(F, f, poly_neg(F, g));
}

inline Poly poly_mul(const LocalRing& F, const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly out(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(f[i], g[j]));
  }
  trim(out);
  return out;
}

// Division with remainder by a nonzero divisor.
inline std::pair<Poly, Poly> poly_divmod(const LocalRing& F, Poly f, const Poly& g) {
  trim(f);
  Poly quot;
  if (degree(f) >= degree(g)) quot.assign(f.size() - g.size() + 1, 0);
  Elem lead_inv = F.inv(g.back());
  while (!f.empty() && degree(f) >= degree(g)) {
    std::size_t shift = f.size() - g.size();
    Elem c = F.mul(f.back(), lead_inv);
    quot[shift] = c;
    for (std::size_t j = 0; j < g.size(); ++j) f[shift + j] = F.sub(f[shift + j], F.mul(c, g[j]));
    trim(f);
  }
  trim(quot);
  return {quot, f};
}

inline Poly poly_mod(const LocalRing& F, const Poly& f, const Poly& g) {
  return poly_divmod(F, f, g).second;
}

inline Poly make_monic(const LocalRing& F, Poly f) {
  trim(f);
  if (f.empty()) return f;
  Elem lead_inv = F.inv(f.back());
  for (auto& c : f) c = F.mul(c, lead_inv);
  return f;
}

// Monic polynomial of the given degree whose lower coefficients are the
// base-|F| digits of `index`.
inline Poly monic_from_index(const LocalRing& F, std::size_t deg, std::size_t index) {
  Poly f(deg + 1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    f[i] = static_cast<Elem>(index % F.size());
    index /= F.size();
  }
  f[deg] = F.one();
  return f;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Least-degree, least-index monic divisor of positive degree (always irreducible).
inline Poly smallest_monic_divisor(const LocalRing& F, const Poly& f) {
  for (int d = 1; d <= degree(f); ++d) {
    std::size_t count = ipow(F.size(), static_cast<std::size_t>(d));
    for (std::size_t idx = 0; idx < count; ++idx) {
      Poly g = monic_from_index(F, static_cast<std::size_t>(d), idx);
      if (poly_mod(F, f, g).empty()) return g;
    }
  }
  return make_monic(F, f);
}

inline bool is_irreducible(const LocalRing& F, const Poly& f) {
  if (degree(f) < 1) return false;
  return degree(smallest_monic_divisor(F, f)) == degree(f);
}

inline Poly smallest_irreducible(const LocalRing& F, std::size_t deg) {
  std::size_t count = ipow(F.size(), deg);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Poly g = monic_from_index(F, deg, idx);
    if (is_irreducible(F, g)) return g;
  }
  throw Error(ErrorCode::BadParameters, "no irreducible polynomial found");
}

}  // namespace wittlab::detail
