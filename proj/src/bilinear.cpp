#include "wittlab/bilinear.hpp"

#include <numeric>

namespace wittlab {

BilinearSpace::BilinearSpace(RingPtr ring, Matrix gram, bool require_nondegenerate)
    : ring_(std::move(ring)), gram_(std::move(gram)) {
  if (!gram_.square()) throw Error(ErrorCode::DimensionMismatch, "Gram matrix must be square");
  for (Elem v : gram_.data)
    if (v >= ring_->size()) throw Error(ErrorCode::InvalidInput, "Gram entry outside the ring");
  if (!gram_.is_symmetric()) throw Error(ErrorCode::InvalidInput, "Gram matrix must be symmetric");
  if (require_nondegenerate && !is_nondegenerate())
    throw Error(ErrorCode::Degenerate, "determinant of the Gram matrix is not a unit");
}

BilinearSpace BilinearSpace::diagonal(RingPtr ring, const Vec& entries) {
  return BilinearSpace(std::move(ring), Matrix::diagonal(entries));
}

bool BilinearSpace::is_nondegenerate() const { return ring_->is_unit(det(*ring_, gram_)); }

Vec BilinearSpace::pair_with(const Vec& x) const { return mat_vec(*ring_, gram_, x); }

Elem BilinearSpace::b(const Vec& x, const Vec& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw Error(ErrorCode::DimensionMismatch, "vector length differs from the space dimension");
  return dot(*ring_, x, pair_with(y));
}

bool CongruenceWitness::verify(const LocalRing& R) const {
  if (!matrix.square() || !source.square() || !target.square()) return false;
  if (matrix.rows != source.rows || matrix.rows != target.rows) return false;
  if (!R.is_unit(det(R, matrix))) return false;
  return congruence(R, matrix, source) == target;
}

Matrix DecompositionReport::assembled() const {
  Matrix m = Matrix::diagonal(units);
  for (auto [a, b] : blocks) m = direct_sum(m, Matrix::from_rows({{a, 1}, {1, b}}));
  return m;
}

namespace {

// Projects each vector of `rest` onto the orthogonal complement of `picked`
// (whose Gram matrix G is invertible) and keeps a subset that completes
// `picked` to a basis of span(picked, rest).
std::vector<Vec> complement_within(const BilinearSpace& S, const std::vector<Vec>& picked,
                                   const std::vector<Vec>& rest, std::size_t want) {
  const LocalRing& R = S.ring();
  const std::size_t k = picked.size();
  Matrix G(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) G.at(i, j) = S.b(picked[i], picked[j]);
  Matrix Ginv = inverse(R, G);
  ResidueEchelon ech(R, S.dim());
  for (const auto& p : picked) ech.add(p);
  std::vector<Vec> out;
  for (const auto& r : rest) {
    if (out.size() == want) break;
    Vec pairings(k);
    for (std::size_t i = 0; i < k; ++i) pairings[i] = S.b(picked[i], r);
    Vec coeffs = mat_vec(R, Ginv, pairings);
    Vec p = r;
    for (std::size_t i = 0; i < k; ++i) p = vec_axpy(R, p, R.neg(coeffs[i]), picked[i]);
    if (ech.add(p)) out.push_back(std::move(p));
  }
  if (out.size() != want) throw Error(ErrorCode::DegenerateSubspace, "could not complete to a basis");
  return out;
}

}  // namespace

std::vector<Vec> orthogonal_complement(const BilinearSpace& S, const std::vector<Vec>& W) {
  const LocalRing& R = S.ring();
  const std::size_t n = S.dim(), k = W.size();
  for (const auto& w : W)
    if (w.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length differs from the space dimension");
  if (k == 0) {
    std::vector<Vec> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
    return all;
  }
  Matrix G(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) G.at(i, j) = S.b(W[i], W[j]);
  if (k <= n && R.is_unit(det(R, G))) {
    std::vector<Vec> standard;
    for (std::size_t i = 0; i < n; ++i) standard.push_back(unit_vector(n, i));
    return complement_within(S, W, standard, n - k);
  }
  if (R.is_field()) {
    Matrix P(k, n);
    for (std::size_t i = 0; i < k; ++i) {
      Vec row = S.pair_with(W[i]);
      for (std::size_t j = 0; j < n; ++j) P.at(i, j) = row[j];
    }
    return nullspace(R, P);
  }
  throw Error(ErrorCode::DegenerateSubspace, "form restricted to the subspace is degenerate");
}

std::pair<DecompositionReport, CongruenceWitness> diagonalize(const BilinearSpace& S) {
  const LocalRing& R = S.ring();
  const std::size_t n = S.dim();
  if (!S.is_nondegenerate()) throw Error(ErrorCode::Degenerate, "determinant is not a unit");
  std::vector<Vec> rest;
  for (std::size_t i = 0; i < n; ++i) rest.push_back(unit_vector(n, i));
  DecompositionReport report;
  std::vector<Vec> unit_cols, block_cols;

  while (!rest.empty()) {
    std::optional<Vec> x;
    for (const auto& r : rest)
      if (R.is_unit(S.q(r))) {
        x = r;
        break;
      }
    for (std::size_t i = 0; !x && i < rest.size(); ++i)
      for (std::size_t j = i + 1; j < rest.size(); ++j) {
        Vec s = vec_add(R, rest[i], rest[j]);
        if (R.is_unit(S.q(s))) {
          x = s;
          break;
        }
      }
    if (x) {
      report.units.push_back(S.q(*x));
      unit_cols.push_back(*x);
      rest = complement_within(S, {*x}, rest, rest.size() - 1);
      continue;
    }
    // Every vector is isotropic mod m: split off a rank-2 block.
    bool split = false;
    for (std::size_t i = 0; !split && i < rest.size(); ++i)
      for (std::size_t j = i + 1; j < rest.size(); ++j) {
        Elem lambda = S.b(rest[i], rest[j]);
        if (!R.is_unit(lambda)) continue;
        Vec u = rest[i], v = vec_scale(R, R.inv(lambda), rest[j]);
        report.blocks.emplace_back(S.q(u), S.q(v));
        block_cols.push_back(u);
        block_cols.push_back(v);
        rest = complement_within(S, {u, v}, rest, rest.size() - 2);
        split = true;
        break;
      }
    if (!split) throw Error(ErrorCode::Degenerate, "no unit pairing found");
  }
  std::vector<Vec> cols = unit_cols;
  cols.insert(cols.end(), block_cols.begin(), block_cols.end());
  CongruenceWitness w{S.gram(), report.assembled(), n ? Matrix::from_columns(cols) : Matrix(0, 0)};
  if (!w.verify(R)) throw Error(ErrorCode::Degenerate, "internal: diagonalization witness failed");
  return {report, w};
}

BlockResolution resolve_block(const LocalRing& R, Elem a, Elem b) {
  if (!R.in_maximal_ideal(a) || !R.in_maximal_ideal(b))
    throw Error(ErrorCode::NotInMaximalIdeal, "block entries must lie in the maximal ideal");
  const Elem one = R.one(), m1 = R.neg(one);
  Elem am1 = R.add(m1, a), bm1 = R.add(m1, b);  // -1+a, -1+b
  Elem prod = R.mul(am1, bm1);
  Elem ab = R.mul(a, b);
  BlockResolution res;
  res.diagonal = {R.div(R.sub(one, ab), prod), am1, bm1};
  Matrix M = Matrix::from_rows({
      {R.neg(R.inv(am1)), m1, 0},
      {R.neg(R.inv(bm1)), 0, m1},
      {R.div(R.add(m1, ab), prod), one, one},
  });
  Matrix source = Matrix::from_rows({{a, one, 0}, {one, b, 0}, {0, 0, m1}});
  res.witness = CongruenceWitness{source, Matrix::diagonal({res.diagonal[0], res.diagonal[1], res.diagonal[2]}), M};
  if (!res.witness.verify(R)) throw Error(ErrorCode::Degenerate, "internal: block witness failed");
  return res;
}

StableDiagonalization stable_diagonalize(const BilinearSpace& S) {
  const LocalRing& R = S.ring();
  auto [report, w1] = diagonalize(S);
  const std::size_t n = S.dim(), l = report.units.size(), r = report.blocks.size();
  const Elem m1 = R.neg(R.one());

  Matrix source = S.gram();
  for (std::size_t i = 0; i < r; ++i) source = direct_sum(source, Matrix::diagonal({m1}));
  Matrix M2 = direct_sum(w1.matrix, Matrix::identity(r));

  // Reorder to units, then (block_i, <-1>) triples.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < l; ++i) order.push_back(i);
  for (std::size_t i = 0; i < r; ++i) {
    order.push_back(l + 2 * i);
    order.push_back(l + 2 * i + 1);
    order.push_back(n + i);
  }
  Matrix P(n + r, n + r);
  for (std::size_t k = 0; k < order.size(); ++k) P.at(order[k], k) = 1;

  StableDiagonalization out;
  out.diagonal = report.units;
  Matrix B = Matrix::identity(l);
  for (auto [a, b] : report.blocks) {
    BlockResolution br = resolve_block(R, a, b);
    B = direct_sum(B, br.witness.matrix);
    out.diagonal.insert(out.diagonal.end(), br.diagonal.begin(), br.diagonal.end());
  }
  out.appended = r;
  out.witness = CongruenceWitness{source, Matrix::diagonal(out.diagonal), mat_mul(R, mat_mul(R, M2, P), B)};
  if (!out.witness.verify(R)) throw Error(ErrorCode::Degenerate, "internal: stable witness failed");
  return out;
}

CongruenceWitness steinberg_witness(const LocalRing& R, Elem a) {
  Elem one = R.one(), c = R.sub(one, a);
  if (!R.is_unit(a) || !R.is_unit(c)) throw Error(ErrorCode::NotUnit, "a and 1-a must both be units");
  CongruenceWitness w{Matrix::diagonal({a, c}), Matrix::diagonal({one, R.mul(a, c)}),
                      Matrix::from_rows({{one, c}, {R.neg(one), a}})};
  if (!w.verify(R)) throw Error(ErrorCode::Degenerate, "internal: Steinberg witness failed");
  return w;
}

CongruenceWitness hyperbolic_scaling_witness(const LocalRing& R, Elem u) {
  if (!R.is_unit(u)) throw Error(ErrorCode::NotUnit, "scaling factor must be a unit");
  Matrix H = Matrix::from_rows({{0, 1}, {1, 0}});
  CongruenceWitness w{H, Matrix::from_rows({{0, u}, {u, 0}}), Matrix::from_rows({{0, u}, {1, 0}})};
  if (!w.verify(R)) throw Error(ErrorCode::Degenerate, "internal: scaling witness failed");
  return w;
}

IdentityCheck check_representation_identity(const LocalRing& R, Elem a, Elem b, Elem c, Elem d,
                                            Elem x, Elem y, Elem s, Elem t, Elem f) {
  auto sq = [&](Elem v) { return R.mul(v, v); };
  if (c != R.add(R.mul(a, sq(x)), R.mul(b, sq(y)))) return {false, "c != a x^2 + b y^2"};
  if (!R.is_unit(c)) return {false, "c is not a unit"};
  if (d != R.mul(R.mul(a, b), c)) return {false, "d != abc"};
  if (f != R.add(R.mul(a, sq(s)), R.mul(b, sq(t)))) return {false, "f != a s^2 + b t^2"};
  Elem cinv = R.inv(c);
  Elem u = R.mul(R.add(R.mul(R.mul(a, s), x), R.mul(R.mul(b, t), y)), cinv);
  Elem v = R.mul(R.sub(R.mul(t, x), R.mul(s, y)), cinv);
  Elem rhs = R.add(R.mul(c, sq(u)), R.mul(d, sq(v)));
  if (rhs != f) return {false, "identity fails: rhs = " + R.format(rhs) + ", f = " + R.format(f)};
  return {true, ""};
}

}  // namespace wittlab
