#include "wittlab/groups.hpp"

#include <limits>
#include <map>
#include <random>
#include <set>

namespace wittlab {

GroupRing::GroupRing(RingPtr ring) : ring_(std::move(ring)), units_(ring_->units()) {
  index_.assign(ring_->size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < units_.size(); ++i) index_[units_[i]] = i;
}

std::size_t GroupRing::index(Elem u) const {
  if (u >= index_.size() || index_[u] == std::numeric_limits<std::size_t>::max())
    throw Error(ErrorCode::NotUnit, ring_->format(u) + " is not a unit");
  return index_[u];
}

IntVec GroupRing::basis(Elem u) const {
  IntVec x = zero();
  x[index(u)] = 1;
  return x;
}

IntVec GroupRing::pfister(Elem a) const { return sub(basis(ring_->one()), basis(a)); }

IntVec GroupRing::hyperbolic() const {
  return add(basis(ring_->one()), basis(ring_->neg(ring_->one())));
}

IntVec GroupRing::add(const IntVec& x, const IntVec& y) const {
  IntVec z(size());
  for (std::size_t i = 0; i < size(); ++i) z[i] = x[i] + y[i];
  return z;
}

IntVec GroupRing::sub(const IntVec& x, const IntVec& y) const {
  IntVec z(size());
  for (std::size_t i = 0; i < size(); ++i) z[i] = x[i] - y[i];
  return z;
}

IntVec GroupRing::scale(std::int64_t c, const IntVec& x) const {
  IntVec z(size());
  for (std::size_t i = 0; i < size(); ++i) z[i] = c * x[i];
  return z;
}

IntVec GroupRing::mul(const IntVec& x, const IntVec& y) const {
  IntVec z = zero();
  for (std::size_t i = 0; i < size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < size(); ++j) {
      if (y[j] == 0) continue;
      z[index_[ring_->mul(units_[i], units_[j])]] += x[i] * y[j];
    }
  }
  return z;
}

IntVec GroupRing::diagonal_class(const Vec& entries) const {
  IntVec x = zero();
  for (Elem u : entries) x[index(u)] += 1;
  return x;
}

namespace {

bool is_zero_vec(const IntVec& x) {
  for (auto v : x)
    if (v != 0) return false;
  return true;
}

struct RowSet {
  std::set<IntVec> seen;
  IntMatrix rows;
  void add(const IntVec& r) {
    if (is_zero_vec(r)) return;
    if (seen.insert(r).second) rows.push_back(r);
  }
};

// Ideal generators multiplied by every basis element <u>.
void add_ideal(RowSet& rows, const GroupRing& ZG, const IntVec& gen) {
  for (Elem u : ZG.units()) rows.add(ZG.mul(ZG.basis(u), gen));
}

void add_kmw_rows(RowSet& rows, const GroupRing& ZG, bool square, bool hyperbolic, bool steinberg) {
  const LocalRing& R = ZG.ring();
  IntVec h = ZG.hyperbolic();
  for (Elem a : ZG.units()) {
    if (square) add_ideal(rows, ZG, ZG.pfister(R.mul(a, a)));
    if (hyperbolic) add_ideal(rows, ZG, ZG.mul(ZG.pfister(a), h));
    Elem b = R.sub(R.one(), a);
    if (steinberg && R.is_unit(b)) add_ideal(rows, ZG, ZG.mul(ZG.pfister(a), ZG.pfister(b)));
  }
}

Presentation finish(std::string name, const GroupRing& ZG, RowSet&& rows) {
  Presentation P;
  P.name = std::move(name);
  P.generators = ZG.units();
  P.relations = std::move(rows.rows);
  return P;
}

}  // namespace

Presentation kmw_presentation(const RingPtr& R) {
  GroupRing ZG(R);
  RowSet rows;
  add_kmw_rows(rows, ZG, true, true, true);
  return finish("K0MW", ZG, std::move(rows));
}

Presentation kmw_tilde_presentation(const RingPtr& R) {
  GroupRing ZG(R);
  RowSet rows;
  add_kmw_rows(rows, ZG, false, false, true);
  return finish("K0MW~", ZG, std::move(rows));
}

std::size_t effective_rank_cap(const LocalRing& R, const GwOptions& opts) {
  if (opts.rank_cap != 0) return opts.rank_cap;
  return R.residue_is_f2() ? 3 : 2;
}

namespace {

void add_gw_rows(RowSet& rows, const GroupRing& ZG, const RingPtr& R, std::size_t cap,
                 const IsometryOptions& iso, bool& complete) {
  // <u> = <u t^2>
  for (Elem u : ZG.units())
    for (Elem t : ZG.units()) rows.add(ZG.sub(ZG.basis(u), ZG.basis(R->mul(u, R->mul(t, t)))));
  // Isometries among diagonal forms of rank 2..cap in square-class
  // representatives; one row per tuple against its class representative.
  for (std::size_t m = 2; m <= cap; ++m) {
    DiagonalClasses dc = classify_diagonal_tuples(R, m, iso);
    complete = complete && dc.complete;
    for (std::size_t t = 0; t < dc.tuples.size(); ++t)
      rows.add(ZG.sub(ZG.diagonal_class(dc.tuples[t]), ZG.diagonal_class(dc.tuples[dc.representative[dc.class_of[t]]])));
  }
}

}  // namespace

Presentation gw_presentation(const RingPtr& R, const GwOptions& opts) {
  GroupRing ZG(R);
  RowSet rows;
  bool complete = true;
  std::size_t cap = effective_rank_cap(*R, opts);
  add_gw_rows(rows, ZG, R, cap, opts.isometry, complete);
  add_kmw_rows(rows, ZG, true, true, true);
  Presentation P = finish("GW", ZG, std::move(rows));
  P.complete = complete;
  P.rank_cap = cap;
  return P;
}

Presentation witt_presentation(const RingPtr& R, const GwOptions& opts) {
  GroupRing ZG(R);
  Presentation P = gw_presentation(R, opts);
  RowSet rows;
  for (const auto& r : P.relations) rows.add(r);
  add_ideal(rows, ZG, ZG.hyperbolic());
  Presentation W = finish("W", ZG, std::move(rows));
  W.complete = P.complete;
  W.rank_cap = P.rank_cap;
  return W;
}

AbelianGroup group_structure(const Presentation& P) { return AbelianGroup(P.relations, P.generators.size()); }

Comparison comparison_map(const RingPtr& R, const GwOptions& opts) {
  Presentation K = kmw_presentation(R), G = gw_presentation(R, opts);
  Comparison c;
  c.kmw = group_structure(K);
  c.gw = group_structure(G);
  // Structure matrix: generator <u> goes to <u>.
  for (std::size_t j = 0; j < c.kmw.coordinate_count(); ++j) {
    IntVec e(c.kmw.coordinate_count(), 0);
    e[j] = 1;
    c.matrix.push_back(c.gw.coordinates(c.kmw.section(e)));
  }
  // Kernel = L_GW / L_K0MW, in a basis of L_GW.
  IntMatrix sub;
  for (const auto& r : K.relations) sub.push_back(c.gw.lattice_coefficients(r));
  c.kernel = AbelianGroup(sub, c.gw.lattice_basis().size());
  // Cokernel = GW coordinates modulo the image.
  const std::size_t cc = c.gw.coordinate_count();
  IntMatrix rel = c.matrix;
  for (std::size_t i = 0; i < c.gw.invariant_factors().size(); ++i) {
    IntVec r(cc, 0);
    r[i] = c.gw.invariant_factors()[i];
    rel.push_back(r);
  }
  c.cokernel = AbelianGroup(rel, cc);
  c.is_isomorphism = c.kernel.is_trivial() && c.cokernel.is_trivial();
  return c;
}

IntVec gw_class_vector(const GroupRing& ZG, const BilinearSpace& S) {
  StableDiagonalization sd = stable_diagonalize(S);
  IntVec x = ZG.diagonal_class(sd.diagonal);
  return ZG.sub(x, ZG.scale(static_cast<std::int64_t>(sd.appended), ZG.basis(ZG.ring().neg(ZG.ring().one()))));
}

IntVec gw_class(const GroupRing& ZG, const AbelianGroup& gw, const BilinearSpace& S) {
  return gw.coordinates(gw_class_vector(ZG, S));
}

std::vector<std::vector<IntVec>> product_table(const GroupRing& ZG, const AbelianGroup& G) {
  const std::size_t k = G.coordinate_count();
  std::vector<IntVec> gens;
  for (std::size_t j = 0; j < k; ++j) {
    IntVec e(k, 0);
    e[j] = 1;
    gens.push_back(G.section(e));
  }
  std::vector<std::vector<IntVec>> table(k, std::vector<IntVec>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) table[i][j] = G.coordinates(ZG.mul(gens[i], gens[j]));
  return table;
}

AbelianGroup augmentation_ideal(const GroupRing& ZG, const Presentation& P) {
  const std::size_t one = ZG.index(ZG.ring().one());
  IntMatrix rows;
  for (const auto& r : P.relations) {
    std::int64_t sum = 0;
    IntVec c;
    for (std::size_t i = 0; i < r.size(); ++i) {
      sum += r[i];
      if (i != one) c.push_back(r[i]);
    }
    if (sum != 0) throw Error(ErrorCode::InvalidInput, "relation does not preserve rank");
    rows.push_back(c);
  }
  return AbelianGroup(rows, ZG.size() - 1);
}

SteinbergReport verify_steinberg_consequences(const RingPtr& R) {
  GroupRing ZG(R);
  AbelianGroup K = group_structure(kmw_tilde_presentation(R));
  SteinbergReport rep;
  std::size_t residue = R->residue_field().size();
  rep.asserted = residue != 2 && residue != 3;
  IntVec h = ZG.hyperbolic();
  for (Elem a : ZG.units()) {
    IntVec x1 = ZG.mul(ZG.pfister(a), ZG.pfister(R->neg(a)));
    IntVec x2 = ZG.sub(ZG.pfister(R->mul(a, a)), ZG.mul(ZG.pfister(a), h));
    rep.checked += 2;
    if (!K.is_zero(x1)) rep.failures.push_back({a, "<<a>><<-a>> = 0"});
    if (!K.is_zero(x2)) rep.failures.push_back({a, "<<a^2>> = <<a>>h"});
  }
  return rep;
}

Rank2Report verify_rank2_equality(const RingPtr& R, std::size_t samples, std::uint64_t seed) {
  GroupRing ZG(R);
  AbelianGroup K = group_structure(kmw_presentation(R));
  std::mt19937_64 rng(seed);
  const Vec& units = R->units();
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  Rank2Report rep;
  while (rep.samples < samples) {
    Elem a = units[pick(units.size())], b = units[pick(units.size())];
    Vec x = {static_cast<Elem>(pick(R->size())), static_cast<Elem>(pick(R->size()))};
    Elem c = R->add(R->mul(a, R->mul(x[0], x[0])), R->mul(b, R->mul(x[1], x[1])));
    if (!R->is_unit(c)) continue;
    // y spans the orthogonal complement of x in <a, b>.
    Vec y = {R->mul(x[1], b), R->neg(R->mul(x[0], a))};
    Elem d = R->add(R->mul(a, R->mul(y[0], y[0])), R->mul(b, R->mul(y[1], y[1])));
    CongruenceWitness w{Matrix::diagonal({a, b}), Matrix::diagonal({c, d}), Matrix::from_columns({x, y})};
    ++rep.samples;
    if (!w.verify(*R)) {
      rep.failures.push_back("witness failed for <" + R->format(a) + "," + R->format(b) + ">");
      continue;
    }
    IntVec diff = ZG.sub(ZG.diagonal_class({a, b}), ZG.diagonal_class({c, d}));
    if (K.is_zero(diff)) {
      ++rep.holds;
    } else {
      rep.failures.push_back("<" + R->format(a) + "," + R->format(b) + "> vs <" + R->format(c) + "," +
                             R->format(d) + ">");
    }
  }
  return rep;
}

}  // namespace wittlab
