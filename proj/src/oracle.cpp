#include <algorithm>
#include <map>
#include <numeric>

#include "wittlab/groups.hpp"

namespace wittlab {

namespace {

Elem det_class(const LocalRing& R, const Vec& entries) {
  Elem d = R.one();
  for (Elem u : entries) d = R.mul(d, u);
  return R.square_class(d);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<Vec> square_class_multisets(const LocalRing& R, std::size_t size) {
  const Vec& reps = R.square_class_reps();
  std::vector<Vec> out;
  Vec cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < reps.size(); ++i) {
      cur.push_back(reps[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

DiagonalClasses classify_diagonal_tuples(const RingPtr& R, std::size_t rank, const IsometryOptions& iso) {
  DiagonalClasses out;
  out.tuples = square_class_multisets(*R, rank);
  std::map<Elem, std::vector<std::size_t>> by_det;  // det class -> class indices
  for (std::size_t t = 0; t < out.tuples.size(); ++t) {
    const Vec& tuple = out.tuples[t];
    auto& candidates = by_det[det_class(*R, tuple)];
    std::size_t found = out.representative.size();
    for (std::size_t ci : candidates) {
      ++out.searches;
      IsometryResult res = is_isometric(BilinearSpace::diagonal(R, tuple),
                                        BilinearSpace::diagonal(R, out.tuples[out.representative[ci]]), iso);
      if (res.status == IsometryStatus::Unknown) out.complete = false;
      if (res.status == IsometryStatus::Isometric) {
        found = ci;
        break;
      }
    }
    if (found == out.representative.size()) {
      candidates.push_back(found);
      out.representative.push_back(t);
    }
    out.class_of.push_back(found);
  }
  return out;
}

OracleClassification stable_isometry_oracle(const RingPtr& R, const OracleOptions& opts) {
  OracleClassification out;
  // Isometry classes of every rank up to rank_cap + stab_cap.
  std::vector<std::map<Vec, std::size_t>> iso_class(opts.rank_cap + opts.stab_cap + 1);
  for (std::size_t r = 1; r < iso_class.size(); ++r) {
    DiagonalClasses dc = classify_diagonal_tuples(R, r, opts.isometry);
    out.searches += dc.searches;
    if (!dc.complete) throw Error(ErrorCode::BudgetExceeded, "isometry search budget exhausted at rank " + std::to_string(r));
    for (std::size_t t = 0; t < dc.tuples.size(); ++t) iso_class[r][dc.tuples[t]] = dc.class_of[t];
  }
  std::vector<Vec> paddings;
  for (std::size_t s = 0; s <= opts.stab_cap; ++s)
    for (const Vec& K : square_class_multisets(*R, s)) paddings.push_back(K);
  for (std::size_t m = 1; m <= opts.rank_cap; ++m) {
    std::vector<Vec> tuples = square_class_multisets(*R, m);
    UnionFind uf(tuples.size());
    for (const Vec& K : paddings) {
      std::map<std::size_t, std::size_t> first;  // padded class -> tuple index
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        Vec padded = tuples[t];
        padded.insert(padded.end(), K.begin(), K.end());
        std::sort(padded.begin(), padded.end());
        auto [it, fresh] = first.emplace(iso_class[padded.size()].at(padded), t);
        if (!fresh) uf.unite(it->second, t);
      }
    }
    std::map<std::size_t, std::size_t> slot;  // root -> output class
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      auto [it, fresh] = slot.emplace(uf.find(t), out.classes.size());
      if (fresh) out.classes.emplace_back();
      out.classes[it->second].push_back(tuples[t]);
    }
  }
  return out;
}

OracleAgreement compare_with_oracle(const GroupRing& ZG, const AbelianGroup& gw, const OracleClassification& oc) {
  OracleAgreement out;
  std::map<IntVec, std::size_t> class_of;  // GW coordinates -> oracle class
  for (std::size_t ci = 0; ci < oc.classes.size(); ++ci) {
    const std::size_t rank = oc.classes[ci].front().size();
    if (out.oracle_classes.size() < rank) {
      out.oracle_classes.resize(rank, 0);
      out.gw_classes.resize(rank, 0);
    }
    ++out.oracle_classes[rank - 1];
    for (const Vec& tuple : oc.classes[ci]) {
      auto [it, fresh] = class_of.emplace(gw.coordinates(ZG.diagonal_class(tuple)), ci);
      if (fresh) {
        ++out.gw_classes[rank - 1];
      } else if (it->second != ci) {
        out.agree = false;  // two oracle classes share a GW class
      }
    }
  }
  // Also catch one oracle class split across several GW classes.
  if (out.gw_classes != out.oracle_classes) out.agree = false;
  return out;
}

}  // namespace wittlab
