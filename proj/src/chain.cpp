#include <algorithm>
#include <set>

#include "chain_internal.hpp"

namespace wittlab {

using detail::combine;
using detail::orthogonal_coordinates;
using detail::plane_complement;
using detail::push_step;
using detail::with_prefix;

bool same_vector_set(const Basis& a, const Basis& b) {
  if (a.size() != b.size()) return false;
  std::set<Vec> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  return sa == sb;
}

std::size_t common_vectors(const Basis& a, const Basis& b) {
  std::set<Vec> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t k = 0;
  for (const auto& v : sa) k += sb.count(v);
  return k;
}

ChainCheck check_orthogonal_basis(const BilinearSpace& S, const Basis& B) {
  const LocalRing& R = S.ring();
  const std::size_t n = S.dim();
  if (B.size() != n) return {false, "basis has " + std::to_string(B.size()) + " vectors, expected " + std::to_string(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (B[i].size() != n) return {false, "vector " + std::to_string(i) + " has wrong length"};
    for (Elem c : B[i])
      if (c >= R.size()) return {false, "vector " + std::to_string(i) + " has an entry outside the ring"};
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!R.is_unit(S.q(B[i]))) return {false, "vector " + std::to_string(i) + " is not anisotropic"};
    for (std::size_t j = i + 1; j < n; ++j)
      if (S.b(B[i], B[j]) != 0)
        return {false, "vectors " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal"};
  }
  if (n > 0 && !R.is_unit(det(R, Matrix::from_columns(B)))) return {false, "vectors do not form a basis"};
  return {true, ""};
}

ChainCheck verify_chain(const BilinearSpace& S, const Chain& c, const Basis& from, const Basis& to) {
  const std::size_t n = S.dim();
  if (c.bases.empty()) return {false, "chain is empty"};
  for (std::size_t i = 0; i < c.bases.size(); ++i) {
    ChainCheck bc = check_orthogonal_basis(S, c.bases[i]);
    if (!bc.ok) return {false, "basis " + std::to_string(i) + ": " + bc.diagnostic};
    if (i > 0) {
      std::size_t common = common_vectors(c.bases[i - 1], c.bases[i]);
      if (common + 2 < n)
        return {false, "step " + std::to_string(i) + " replaces " + std::to_string(n - common) + " vectors"};
    }
  }
  if (!same_vector_set(c.bases.front(), from)) return {false, "first basis differs from the start basis"};
  if (!same_vector_set(c.bases.back(), to)) return {false, "last basis differs from the end basis"};
  return {true, ""};
}

Basis elementary_move(const BilinearSpace& S, const Basis& B, Elem eps, std::size_t i, std::size_t j) {
  const LocalRing& R = S.ring();
  if (i == j || i >= B.size() || j >= B.size()) throw Error(ErrorCode::BadParameters, "positions must be distinct and in range");
  if (!R.in_maximal_ideal(eps)) throw Error(ErrorCode::NotInMaximalIdeal, R.format(eps) + " is not in the maximal ideal");
  Basis out = B;
  Elem factor = R.mul(eps, R.div(S.q(B[j]), S.q(B[i])));
  out[i] = vec_axpy(R, B[i], eps, B[j]);
  out[j] = vec_axpy(R, B[j], R.neg(factor), B[i]);
  return out;
}

namespace {

Chain equal_mod_m_rec(const BilinearSpace& S, const Basis& U, const Basis& V) {
  const LocalRing& R = S.ring();
  const std::size_t n = S.dim();
  Chain c;
  push_step(c, U);
  if (U.size() <= 2) {
    push_step(c, V);
    return c;
  }
  Vec coeff = orthogonal_coordinates(S, U, V[0]);
  Basis cur = U;
  cur[0] = vec_scale(R, coeff[0], U[0]);  // (1 + eps_1) u_1
  push_step(c, cur);
  for (std::size_t i = 1; i < U.size(); ++i) {
    if (coeff[i] == 0) continue;
    cur = elementary_move(S, cur, coeff[i], 0, i);
    push_step(c, cur);
  }
  if (cur[0] != V[0]) throw Error(ErrorCode::NotEqualModM, "internal: partial sums did not reach the target vector");
  Basis rest_u(cur.begin() + 1, cur.end()), rest_v(V.begin() + 1, V.end());
  Chain sub = equal_mod_m_rec(S, rest_u, rest_v);
  for (const auto& B : sub.bases) push_step(c, with_prefix({V[0]}, B));
  (void)n;
  return c;
}

void require_orthogonal(const BilinearSpace& S, const Basis& B, const char* what) {
  ChainCheck chk = check_orthogonal_basis(S, B);
  if (!chk.ok) throw Error(ErrorCode::NotOrthogonal, std::string(what) + ": " + chk.diagnostic);
}

}  // namespace

Chain chain_equal_mod_m(const BilinearSpace& S, const Basis& B1, const Basis& B2) {
  const LocalRing& R = S.ring();
  require_orthogonal(S, B1, "first basis");
  require_orthogonal(S, B2, "second basis");
  for (std::size_t i = 0; i < B1.size(); ++i)
    if (vec_reduce(R, B1[i]) != vec_reduce(R, B2[i]))
      throw Error(ErrorCode::NotEqualModM, "bases differ modulo the maximal ideal at position " + std::to_string(i));
  Chain c = equal_mod_m_rec(S, B1, B2);
  detail::pin_endpoints(c, B1, B2);
  return c;
}

namespace {

// Lifts the residue vector xbar and projects it orthogonally away from the
// (orthogonal, anisotropic) vectors in `fixed`.
Vec lift_into_complement(const BilinearSpace& S, const Vec& xbar, const Basis& fixed) {
  const LocalRing& R = S.ring();
  Vec x(xbar.size());
  for (std::size_t i = 0; i < xbar.size(); ++i) x[i] = R.lift(xbar[i]);
  for (const auto& u : fixed) x = vec_axpy(R, x, R.neg(R.div(S.b(x, u), S.q(u))), u);
  return x;
}

void check_residue_basis(const BilinearSpace& S, const Basis& Bbar) {
  const LocalRing& F = S.ring().residue_field();
  BilinearSpace Sbar(S.ring().residue_field_ptr(), reduce(S.ring(), S.gram()));
  for (const auto& v : Bbar)
    for (Elem c : v)
      if (c >= F.size()) throw Error(ErrorCode::NotOrthogonalOverResidue, "entry outside the residue field");
  ChainCheck chk = check_orthogonal_basis(Sbar, Bbar);
  if (!chk.ok) throw Error(ErrorCode::NotOrthogonalOverResidue, chk.diagnostic);
}

}  // namespace

Basis lift_basis(const BilinearSpace& S, const Basis& Bbar) {
  check_residue_basis(S, Bbar);
  Basis out;
  for (const auto& xbar : Bbar) out.push_back(lift_into_complement(S, xbar, out));
  return out;
}

std::pair<Basis, Basis> lift_pair(const BilinearSpace& S, const Basis& b, const Basis& c) {
  check_residue_basis(S, c);
  Basis u = lift_basis(S, b);
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != c[i]) diff.push_back(i);
  if (diff.size() > 2) throw Error(ErrorCode::BadParameters, "residue bases differ in more than two places");
  Basis fixed;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] == c[i]) fixed.push_back(u[i]);
  Basis v = u;
  for (std::size_t d : diff) {
    v[d] = lift_into_complement(S, c[d], fixed);
    fixed.push_back(v[d]);
  }
  return {u, v};
}

namespace {

// Lift of `next` that keeps every vector of `cur` whose residue also occurs
// in `next`; the (at most two) new residue vectors are lifted into the
// orthogonal complement of the kept ones.
Basis lift_step(const BilinearSpace& S, const Basis& cur, const Basis& next) {
  const LocalRing& R = S.ring();
  Basis out(next.size());
  Basis fixed;
  std::vector<char> have(next.size(), 0);
  for (std::size_t k = 0; k < next.size(); ++k)
    for (const auto& v : cur)
      if (vec_reduce(R, v) == next[k]) {
        out[k] = v;
        have[k] = 1;
        fixed.push_back(v);
        break;
      }
  for (std::size_t k = 0; k < next.size(); ++k) {
    if (have[k]) continue;
    out[k] = lift_into_complement(S, next[k], fixed);
    fixed.push_back(out[k]);
  }
  return out;
}

}  // namespace

Chain chain_local(const BilinearSpace& S, const Basis& B, const Basis& C, const ChainOptions& opts) {
  const LocalRing& R = S.ring();
  require_orthogonal(S, B, "start basis");
  require_orthogonal(S, C, "end basis");
  if (R.is_field()) return chain_field(S, B, C, opts);
  if (R.residue_is_f2()) {
    BfsResult res;
    try {
      res = bfs_chain_oracle(S, B, C, opts);
    } catch (const Error& e) {
      throw Error(ErrorCode::ResidueFieldF2WithoutBFSResult,
                  "residue field is F2 and the search gave no answer (" + std::string(e.what()) + ")");
    }
    if (res.status == BfsStatus::Unreachable)
      throw Error(ErrorCode::F2Unreachable, "bases lie in different chain components");
    return res.chain;
  }
  BilinearSpace Sbar(R.residue_field_ptr(), reduce(R, S.gram()));
  Basis Bbar, Cbar;
  for (const auto& v : B) Bbar.push_back(vec_reduce(R, v));
  for (const auto& v : C) Cbar.push_back(vec_reduce(R, v));
  Chain residue = chain_field(Sbar, Bbar, Cbar, opts);

  Chain out;
  Basis cur = B;
  push_step(out, cur);
  for (std::size_t i = 1; i < residue.bases.size(); ++i) {
    cur = lift_step(S, cur, residue.bases[i]);
    push_step(out, cur);
  }
  // Align positions with C, then connect bases that agree modulo m.
  Basis aligned(C.size());
  for (std::size_t k = 0; k < C.size(); ++k) {
    Vec target = vec_reduce(R, C[k]);
    for (const auto& v : cur)
      if (vec_reduce(R, v) == target) aligned[k] = v;
  }
  detail::append_chain(out, chain_equal_mod_m(S, aligned, C));
  detail::pin_endpoints(out, B, C);
  ChainCheck chk = verify_chain(S, out, B, C);
  if (!chk.ok) throw Error(ErrorCode::NotOrthogonal, "internal: lifted chain failed verification: " + chk.diagnostic);
  return out;
}

std::pair<Chain, Basis> extend_vector_chain(const BilinearSpace& S, const Basis& B, const Vec& a) {
  const LocalRing& R = S.ring();
  const std::size_t m = B.size(), n = S.dim();
  if (a.size() != m) throw Error(ErrorCode::DimensionMismatch, "one coefficient per basis vector is required");
  Chain c;
  push_step(c, B);
  Basis cur = B;
  if (m == 0) return {c, cur};
  Vec partial = vec_scale(R, a[0], B[0]);
  if (m == 1) {
    if (!R.is_unit(S.q(partial)))
      throw Error(ErrorCode::IsotropicPartialSum, "partial sum for r = 1 is isotropic");
    cur[0] = partial;
    push_step(c, cur);
    return {c, cur};
  }
  for (std::size_t r = 2; r <= m; ++r) {
    Vec next = vec_axpy(R, partial, a[r - 1], B[r - 1]);
    if (!R.is_unit(S.q(next)))
      throw Error(ErrorCode::IsotropicPartialSum, "partial sum for r = " + std::to_string(r) + " is isotropic");
    if (r == 2) {
      cur[0] = next;
      cur[1] = plane_complement(S, a[0], B[0], a[1], B[1]);
    } else if (a[r - 1] != 0) {
      cur[r - 1] = plane_complement(S, R.one(), partial, a[r - 1], B[r - 1]);
      cur[0] = next;
    }
    partial = next;
    push_step(c, cur);
  }
  (void)n;
  return {c, cur};
}

Basis standard_basis(std::size_t n) {
  Basis e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(unit_vector(n, i));
  return e;
}

Basis hat_basis(const LocalRing& R, std::size_t n) {
  Basis e;
  for (std::size_t r = 0; r < n; ++r) {
    Vec v(n, R.one());
    v[r] = 0;
    e.push_back(v);
  }
  return e;
}

Vec normalize_line(const LocalRing& R, const Vec& x) {
  for (Elem c : x)
    if (R.is_unit(c)) return vec_scale(R, R.inv(c), x);
  return x;
}

}  // namespace wittlab
