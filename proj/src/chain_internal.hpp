#pragma once

#include <algorithm>

#include "wittlab/chain.hpp"

namespace wittlab::detail {

// Generator of the complement of alpha*p + beta*s inside Rp + Rs, p and s
// orthogonal.
inline Vec plane_complement(const BilinearSpace& S, Elem alpha, const Vec& p, Elem beta, const Vec& s) {
  const LocalRing& R = S.ring();
  Vec left = vec_scale(R, R.mul(beta, S.q(s)), p);
  return vec_sub(R, left, vec_scale(R, R.mul(alpha, S.q(p)), s));
}

// Coefficients of x with respect to an orthogonal basis whose vectors are
// anisotropic (x must lie in its span for the result to be meaningful).
inline Vec orthogonal_coordinates(const BilinearSpace& S, const Basis& U, const Vec& x) {
  const LocalRing& R = S.ring();
  Vec c(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) c[i] = R.div(S.b(x, U[i]), S.q(U[i]));
  return c;
}

inline Vec combine(const LocalRing& R, const Basis& U, const Vec& coeffs, std::size_t n) {
  Vec x(n, 0);
  for (std::size_t i = 0; i < U.size(); ++i)
    if (coeffs[i] != 0) x = vec_axpy(R, x, coeffs[i], U[i]);
  return x;
}

// Appends unless the vector set is unchanged.
inline void push_step(Chain& c, const Basis& B) {
  if (!c.bases.empty() && same_vector_set(c.bases.back(), B)) return;
  c.bases.push_back(B);
}

inline void append_chain(Chain& c, const Chain& tail) {
  for (const auto& B : tail.bases) push_step(c, B);
}

inline Basis with_prefix(const Basis& prefix, const Basis& rest) {
  Basis out = prefix;
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

inline Chain reversed(Chain c) {
  std::reverse(c.bases.begin(), c.bases.end());
  return c;
}

// Makes the endpoints literally equal to the requested tuples.
inline void pin_endpoints(Chain& c, const Basis& from, const Basis& to) {
  if (c.bases.empty()) c.bases.push_back(from);
  if (same_vector_set(c.bases.front(), from)) c.bases.front() = from;
  if (same_vector_set(c.bases.back(), to)) c.bases.back() = to;
}

}  // namespace wittlab::detail
