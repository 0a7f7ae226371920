#pragma once

#include <random>

#include "wittlab/chain.hpp"

namespace wittlab::testing {

inline Matrix random_invertible(const LocalRing& R, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix M(n, n);
    for (auto& x : M.data) x = static_cast<Elem>(rng() % R.size());
    if (R.is_unit(det(R, M))) return M;
  }
}

// A random non-degenerate space: M^T diag(d) M for random units d and
// random invertible M.
inline BilinearSpace random_space(const RingPtr& R, std::size_t n, std::mt19937_64& rng) {
  Vec d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(R->units()[rng() % R->units().size()]);
  return BilinearSpace(R, congruence(*R, random_invertible(*R, n, rng), Matrix::diagonal(d)));
}

// Random orthogonal basis built by Gram-Schmidt on random vectors: each new
// vector is projected away from the chosen ones and kept when anisotropic.
// Restarts when the remaining complement has no anisotropic vector.
inline Basis random_orthogonal_basis(const BilinearSpace& S, std::mt19937_64& rng) {
  const LocalRing& R = S.ring();
  const std::size_t n = S.dim();
  for (;;) {
    Basis B;
    int misses = 0;
    while (B.size() < n && misses < 200) {
      Vec x(n);
      for (auto& c : x) c = static_cast<Elem>(rng() % R.size());
      for (const auto& u : B) x = vec_axpy(R, x, R.neg(R.div(S.b(x, u), S.q(u))), u);
      if (R.is_unit(S.q(x))) {
        B.push_back(x);
        misses = 0;
      } else {
        ++misses;
      }
    }
    if (B.size() == n) return B;
  }
}

}  // namespace wittlab::testing
