#include <algorithm>

#include "chain_internal.hpp"

namespace wittlab {

using detail::combine;
using detail::orthogonal_coordinates;
using detail::plane_complement;
using detail::push_step;
using detail::with_prefix;

namespace {

Chain prefixed(const Chain& sub, const Basis& prefix) {
  Chain c;
  for (const auto& B : sub.bases) push_step(c, with_prefix(prefix, B));
  return c;
}

Basis without(const Basis& B, std::size_t pos) {
  Basis out;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (i != pos) out.push_back(B[i]);
  return out;
}

Chain connect(const BilinearSpace& S, const Basis& U, const Basis& W);

// Two bases of a 3-dimensional subspace over a field of characteristic 2:
// pick a vector v that extends to orthogonal bases chain equivalent to both.
Chain connect_dim3_char2(const BilinearSpace& S, const Basis& U, const Basis& W) {
  const LocalRing& F = S.ring();
  const std::size_t m = U.size();
  // Coordinates: x with respect to U, T x with respect to W.
  Matrix T(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec y = orthogonal_coordinates(S, W, U[i]);
    for (std::size_t j = 0; j < m; ++j) T.at(j, i) = y[j];
  }
  std::vector<DiagonalForm> forms;
  for (std::size_t r = 2; r <= m; ++r) {
    DiagonalForm fu{Matrix::identity(m), Vec(m, 0)}, fw{T, Vec(m, 0)};
    for (std::size_t i = 0; i < r; ++i) {
      fu.coeffs[i] = S.q(U[i]);
      fw.coeffs[i] = S.q(W[i]);
    }
    forms.push_back(fu);
    forms.push_back(fw);
  }
  Vec a = find_nonvanishing_vector(F, forms);
  Vec b = mat_vec(F, T, a);
  auto [cu, u2] = extend_vector_chain(S, U, a);
  auto [cw, w2] = extend_vector_chain(S, W, b);
  if (u2[0] != w2[0]) throw Error(ErrorCode::NotOrthogonal, "internal: common vector mismatch");
  Chain c = cu;
  detail::append_chain(c, prefixed(connect(S, without(u2, 0), without(w2, 0)), {u2[0]}));
  detail::append_chain(c, detail::reversed(cw));
  return c;
}

// Minimal-support reduction: move U towards a basis containing W[0], then
// recurse on the orthogonal complement of W[0].
Chain connect_min_support(const BilinearSpace& S, const Basis& U, const Basis& W) {
  const LocalRing& F = S.ring();
  const std::size_t m = U.size(), n = S.dim();
  const Vec& w1 = W[0];
  Chain c;
  Basis cur = U;
  push_step(c, cur);
  Vec a = orthogonal_coordinates(S, cur, w1);
  std::size_t w1_pos = m;
  for (;;) {
    std::vector<std::size_t> supp;
    for (std::size_t i = 0; i < m; ++i)
      if (a[i] != 0) supp.push_back(i);
    if (supp.size() == 1) {
      cur[supp[0]] = w1;
      w1_pos = supp[0];
      push_step(c, cur);
      break;
    }
    if (supp.size() == 2) {
      std::size_t i = supp[0], j = supp[1];
      Vec comp = plane_complement(S, a[i], cur[i], a[j], cur[j]);
      cur[i] = w1;
      cur[j] = comp;
      w1_pos = i;
      push_step(c, cur);
      break;
    }
    bool contracted = false;
    for (std::size_t x = 0; x < supp.size() && !contracted; ++x)
      for (std::size_t y = x + 1; y < supp.size(); ++y) {
        std::size_t i = supp[x], j = supp[y];
        Vec t = vec_add(F, vec_scale(F, a[i], cur[i]), vec_scale(F, a[j], cur[j]));
        if (S.q(t) == 0) continue;
        Vec comp = plane_complement(S, a[i], cur[i], a[j], cur[j]);
        cur[i] = t;
        cur[j] = comp;
        a[i] = F.one();
        a[j] = 0;
        push_step(c, cur);
        contracted = true;
        break;
      }
    if (contracted) continue;

    // No anisotropic pair: characteristic 2 with w1 = sum a_i u_i over the
    // support, all a_i^2 q(u_i) equal. Rescale and use the e -> e^ chain.
    if (F.characteristic_of_residue() != 2)
      throw Error(ErrorCode::NotOrthogonal, "internal: no anisotropic pair in odd characteristic");
    for (std::size_t i : supp) {
      cur[i] = vec_scale(F, a[i], cur[i]);
      a[i] = F.one();
      push_step(c, cur);
    }
    Elem common = S.q(cur[supp[0]]);
    std::size_t k = 0;
    while (k < m && a[k] != 0) ++k;
    if (k == m) throw Error(ErrorCode::NotOrthogonal, "internal: full support without anisotropic pair");
    Elem scale = F.sqrt(F.div(common, S.q(cur[k])));
    if (scale == LocalRing::kNoElem) throw Error(ErrorCode::NotOrthogonal, "internal: missing square root");
    cur[k] = vec_scale(F, scale, cur[k]);
    push_step(c, cur);

    std::vector<std::size_t> slots = supp;
    slots.push_back(k);
    Basis frame;
    for (std::size_t s : slots) frame.push_back(cur[s]);
    Chain hat = hat_chain(S.ring_ptr(), slots.size());
    for (const auto& H : hat.bases) {
      Basis next = cur;
      for (std::size_t s = 0; s < slots.size(); ++s) next[slots[s]] = combine(F, frame, H[s], n);
      cur = next;
      push_step(c, cur);
    }
    if (cur[k] != w1) throw Error(ErrorCode::NotOrthogonal, "internal: hat chain did not produce the target vector");
    w1_pos = k;
    break;
  }
  Chain sub = connect(S, without(cur, w1_pos), without(W, 0));
  detail::append_chain(c, prefixed(sub, {w1}));
  return c;
}

Chain connect(const BilinearSpace& S, const Basis& U, const Basis& W) {
  if (U.size() <= 2) {
    Chain c;
    push_step(c, U);
    push_step(c, W);
    return c;
  }
  if (S.ring().characteristic_of_residue() == 2 && U.size() == 3) return connect_dim3_char2(S, U, W);
  return connect_min_support(S, U, W);
}

}  // namespace

Chain chain_field(const BilinearSpace& S, const Basis& B, const Basis& C, const ChainOptions& opts) {
  const LocalRing& F = S.ring();
  if (!F.is_field()) throw Error(ErrorCode::BadParameters, "chain_field needs a field");
  for (const auto* X : {&B, &C}) {
    ChainCheck chk = check_orthogonal_basis(S, *X);
    if (!chk.ok) throw Error(ErrorCode::NotOrthogonal, chk.diagnostic);
  }
  auto via_bfs = [&]() {
    BfsResult res = bfs_chain_oracle(S, B, C, opts);
    if (res.status == BfsStatus::Unreachable)
      throw Error(ErrorCode::F2Unreachable, "bases lie in different chain components");
    return res.chain;
  };
  if (F.size() == 2) return via_bfs();
  Chain c;
  try {
    c = connect(S, B, C);
  } catch (const Error&) {
    return via_bfs();
  }
  detail::pin_endpoints(c, B, C);
  if (!verify_chain(S, c, B, C).ok) return via_bfs();
  return c;
}

Vec find_nonvanishing_vector(const LocalRing& F, const std::vector<DiagonalForm>& forms) {
  if (forms.empty()) throw Error(ErrorCode::BadParameters, "no forms given");
  if (F.size() < forms.size()) throw Error(ErrorCode::FieldTooSmall, "field has fewer elements than forms");
  const std::size_t n = forms[0].change.cols;
  auto value = [&](const DiagonalForm& f, const Vec& x) {
    Vec y = mat_vec(F, f.change, x);
    Elem s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s = F.add(s, F.mul(f.coeffs[i], F.mul(y[i], y[i])));
    return s;
  };
  // A vector on which a single form is nonzero: a basis vector of the
  // diagonalizing coordinates.
  auto single = [&](const DiagonalForm& f) {
    Matrix Linv = inverse(F, f.change);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
      if (f.coeffs[i] != 0) return Linv.column(i);
    throw Error(ErrorCode::BadParameters, "trivial quadratic form");
  };
  Vec v = single(forms[0]);
  for (std::size_t r = 1; r < forms.size(); ++r) {
    if (value(forms[r], v) != 0) continue;
    Vec v2 = single(forms[r]);
    std::vector<Elem> ratios;
    for (std::size_t i = 0; i < r; ++i) ratios.push_back(F.div(value(forms[i], v2), value(forms[i], v)));
    Elem eps = LocalRing::kNoElem;
    for (Elem e = 0; e < F.size(); ++e)
      if (std::find(ratios.begin(), ratios.end(), F.mul(e, e)) == ratios.end()) {
        eps = e;
        break;
      }
    if (eps == LocalRing::kNoElem) throw Error(ErrorCode::FieldTooSmall, "no admissible scalar");
    v = vec_axpy(F, v2, eps, v);
  }
  (void)n;
  return v;
}

Chain hat_chain(const RingPtr& F, std::size_t n, const ChainOptions& opts) {
  (void)opts;
  if (!F->is_field() || F->characteristic_of_residue() != 2 || F->size() == 2)
    throw Error(ErrorCode::BadParameters, "need a finite field of characteristic 2 other than F2");
  if (n < 4 || n % 2 != 0) throw Error(ErrorCode::BadParameters, "n must be even and at least 4");
  BilinearSpace S = BilinearSpace::diagonal(F, Vec(n, F->one()));
  Basis e = standard_basis(n), ehat = hat_basis(*F, n);
  // b_1, b_n nonzero with b_1 + b_n nonzero, other b_i zero.
  Elem b1 = 0, bn = 0;
  for (Elem x = 1; x < F->size() && !bn; ++x)
    for (Elem y = 1; y < F->size(); ++y)
      if (F->add(x, y) != 0) {
        b1 = x;
        bn = y;
        break;
      }
  Vec b(n, 0);
  b[0] = b1;
  b[n - 1] = bn;
  Vec a(n);
  for (std::size_t r = 0; r < n; ++r) a[r] = r == 0 ? bn : (r == n - 1 ? b1 : F->add(b1, bn));
  auto [cu, u] = extend_vector_chain(S, e, a);
  auto [cv, v] = extend_vector_chain(S, ehat, b);
  if (u[0] != v[0]) throw Error(ErrorCode::BadParameters, "internal: first vectors differ");
  Chain c = cu;
  detail::append_chain(c, prefixed(connect(S, without(u, 0), without(v, 0)), {u[0]}));
  detail::append_chain(c, detail::reversed(cv));
  detail::pin_endpoints(c, e, ehat);
  ChainCheck chk = verify_chain(S, c, e, ehat);
  if (!chk.ok) throw Error(ErrorCode::BadParameters, "internal: hat chain failed: " + chk.diagnostic);
  return c;
}

}  // namespace wittlab
