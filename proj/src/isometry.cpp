#include <algorithm>
#include <map>
#include <optional>

#include "wittlab/bilinear.hpp"

namespace wittlab {

namespace {

constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 25;

struct Search {
  const LocalRing& R;
  const BilinearSpace& S1;
  const Matrix& target;
  std::size_t n;
  std::map<Elem, std::vector<std::uint32_t>> buckets;
  std::vector<Vec> chosen, paired;  // paired[j] = A1 * chosen[j]
  std::uint64_t budget, work = 0;
  bool exhausted = false;

  Vec decode(std::uint32_t code) const {
    Vec v(n);
    for (std::size_t i = n; i-- > 0;) {
      v[i] = static_cast<Elem>(code % R.size());
      code = static_cast<std::uint32_t>(code / R.size());
    }
    return v;
  }

  bool extend(std::size_t i) {
    if (i == n) return true;
    auto it = buckets.find(target.at(i, i));
    if (it == buckets.end()) return false;
    for (std::uint32_t code : it->second) {
      if (++work > budget) {
        exhausted = true;
        return false;
      }
      Vec v = decode(code);
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = dot(R, v, paired[j]) == target.at(j, i);
      if (!ok) continue;
      chosen.push_back(v);
      paired.push_back(S1.pair_with(v));
      if (extend(i + 1)) return true;
      chosen.pop_back();
      paired.pop_back();
      if (exhausted) return false;
    }
    return false;
  }
};

struct OutOfBudget {};

constexpr std::uint64_t kMaxValueCount = std::uint64_t{1} << 22;

// Number of vectors with each value of q, or empty when too many vectors.
std::vector<std::uint64_t> value_counts(const BilinearSpace& S) {
  const LocalRing& R = S.ring();
  const std::size_t n = S.dim();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= R.size();
    if (total > kMaxValueCount) return {};
  }
  std::vector<std::uint64_t> counts(R.size(), 0);
  Vec v(n, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    ++counts[S.q(v)];
    for (std::size_t i = n; i-- > 0;) {
      if (++v[i] < R.size()) break;
      v[i] = 0;
    }
  }
  return counts;
}

bool is_unit_diagonal(const LocalRing& R, const Matrix& A) {
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      if (i == j ? !R.is_unit(A.at(i, i)) : A.at(i, j) != 0) return false;
  return true;
}

// Sorted square-class representatives Dc of the units d, with P such that
// P^T diag(Dc) P = diag(d).
std::pair<Vec, Matrix> to_class_reps(const LocalRing& R, const Vec& d) {
  const std::size_t n = d.size();
  std::vector<std::pair<Elem, std::size_t>> order;
  for (std::size_t i = 0; i < n; ++i) order.push_back({R.square_class(d[i]), i});
  std::sort(order.begin(), order.end());
  Vec reps(n);
  Matrix P(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    auto [rep, i] = order[k];
    reps[k] = rep;
    P.at(k, i) = R.sqrt(R.div(d[i], rep));
  }
  return {reps, P};
}

// Splits off one vector at a time: <t_1,...,t_n> embeds in X iff some v with
// q(v) = t_1 has v-perp isometric to <t_2,...,t_n>. Subproblems are memoized on
// the sorted class tuple and the Gram matrix of the complement, which is
// diagonalized first whenever possible.
struct SplitSearch {
  const LocalRing& R;
  std::uint64_t budget, work = 0;
  std::map<std::pair<Vec, Vec>, std::optional<Matrix>> memo;

  // N with N^T X N = diag(tc), tc sorted class representatives.
  std::optional<Matrix> solve(const Vec& tc, const Matrix& X) {
    auto key = std::make_pair(tc, X.data);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::optional<Matrix> out = solve_uncached(tc, X);
    memo.emplace(std::move(key), out);
    return out;
  }

  std::optional<Matrix> solve_uncached(const Vec& tc, const Matrix& X) {
    const std::size_t n = tc.size();
    if (n == 1) {
      if (R.square_class(X.at(0, 0)) != R.square_class(tc[0])) return std::nullopt;
      return Matrix::diagonal({R.sqrt(R.div(tc[0], X.at(0, 0)))});
    }
    BilinearSpace S(std::shared_ptr<const LocalRing>(R.shared_from_this()), X);
    const Elem cls = R.square_class(tc[0]);
    const Vec rest(tc.begin() + 1, tc.end());
    // One vector per line: the first unit coordinate is 1.
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= R.size();
    Vec v(n, 0);
    for (std::uint64_t c = 0; c < total; ++c) {
      if (c > 0)
        for (std::size_t i = n; i-- > 0;) {
          if (++v[i] < R.size()) break;
          v[i] = 0;
        }
      if (++work > budget) throw OutOfBudget{};
      std::size_t lead = 0;
      while (lead < n && !R.is_unit(v[lead])) ++lead;
      if (lead == n || v[lead] != R.one()) continue;
      Elem qv = S.q(v);
      if (!R.is_unit(qv) || R.square_class(qv) != cls) continue;
      Vec w = vec_scale(R, R.sqrt(R.div(tc[0], qv)), v);
      std::vector<Vec> comp = orthogonal_complement(S, {w});
      Matrix Cb = Matrix::from_columns(comp);
      Matrix Y = congruence(R, Cb, X);
      std::optional<Matrix> NY;
      auto [report, W] = diagonalize(BilinearSpace(S.ring_ptr(), Y));
      if (report.blocks.empty()) {
        auto [dc, P] = to_class_reps(R, report.units);
        std::optional<Matrix> sub = solve(rest, Matrix::diagonal(dc));
        if (sub) NY = mat_mul(R, mat_mul(R, W.matrix, inverse(R, P)), *sub);
      } else {
        NY = solve(rest, Y);
      }
      if (!NY) continue;
      std::vector<Vec> cols = {w};
      for (const auto& col : mat_mul(R, Cb, *NY).columns()) cols.push_back(col);
      return Matrix::from_columns(cols);
    }
    return std::nullopt;
  }
};

// M with M^T X M = D for a unit diagonal D, or nullopt.
std::optional<Matrix> embed_diagonal(SplitSearch& search, const Matrix& X, const Matrix& D) {
  Vec d;
  for (std::size_t i = 0; i < D.rows; ++i) d.push_back(D.at(i, i));
  auto [tc, Q] = to_class_reps(search.R, d);
  std::optional<Matrix> N = search.solve(tc, X);
  if (!N) return std::nullopt;
  return mat_mul(search.R, *N, Q);
}

}  // namespace

IsometryResult is_isometric(const BilinearSpace& S1, const BilinearSpace& S2, const IsometryOptions& opts) {
  if (S1.dim() != S2.dim()) throw Error(ErrorCode::DimensionMismatch, "spaces have different dimensions");
  if (!(S1.ring().spec() == S2.ring().spec()))
    throw Error(ErrorCode::DimensionMismatch, "spaces live over different rings");
  const LocalRing& R = S1.ring();
  const std::size_t n = S1.dim();
  IsometryResult res;
  if (n == 0) {
    res.status = IsometryStatus::Isometric;
    res.witness = CongruenceWitness{S1.gram(), S2.gram(), Matrix(0, 0)};
    return res;
  }
  if (opts.determinant_precheck) {
    Elem d1 = det(R, S1.gram()), d2 = det(R, S2.gram());
    if (R.is_unit(d1) != R.is_unit(d2) ||
        (R.is_unit(d1) && R.square_class(d1) != R.square_class(d2))) {
      res.status = IsometryStatus::NotIsometric;
      return res;
    }
  }
  if (opts.value_precheck) {
    std::vector<std::uint64_t> c1 = value_counts(S1);
    if (!c1.empty() && c1 != value_counts(S2)) {
      res.status = IsometryStatus::NotIsometric;
      return res;
    }
  }
  const bool diag1 = is_unit_diagonal(R, S1.gram()), diag2 = is_unit_diagonal(R, S2.gram());
  if (diag1 || diag2) {
    SplitSearch split{R, opts.budget, 0, {}};
    try {
      std::optional<Matrix> M;
      if (diag2) {
        M = embed_diagonal(split, S1.gram(), S2.gram());
      } else if (auto N = embed_diagonal(split, S2.gram(), S1.gram())) {
        M = inverse(R, *N);
      }
      res.work = split.work;
      if (M) {
        res.status = IsometryStatus::Isometric;
        res.witness = CongruenceWitness{S1.gram(), S2.gram(), *M};
        if (!res.witness->verify(R)) throw Error(ErrorCode::Degenerate, "internal: isometry witness failed");
      } else {
        res.status = IsometryStatus::NotIsometric;
      }
    } catch (const OutOfBudget&) {
      res.work = split.work;
    }
    return res;
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= R.size();
    if (total > kMaxEnumeration) return res;  // Unknown
  }
  Search search{R, S1, S2.gram(), n, {}, {}, {}, opts.budget};
  for (std::size_t i = 0; i < n; ++i) search.buckets[S2.gram().at(i, i)];
  // Vectors in code order, most significant coordinate first.
  Vec v(n, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    Elem q = S1.q(v);
    auto it = search.buckets.find(q);
    if (it != search.buckets.end()) it->second.push_back(static_cast<std::uint32_t>(code));
    for (std::size_t i = n; i-- > 0;) {
      if (++v[i] < R.size()) break;
      v[i] = 0;
    }
  }
  search.work = total;
  if (search.work > opts.budget) return res;
  bool found = search.extend(0);
  res.work = search.work;
  if (found) {
    res.status = IsometryStatus::Isometric;
    res.witness = CongruenceWitness{S1.gram(), S2.gram(), Matrix::from_columns(search.chosen)};
    if (!res.witness->verify(R)) throw Error(ErrorCode::Degenerate, "internal: isometry witness failed");
  } else {
    res.status = search.exhausted ? IsometryStatus::Unknown : IsometryStatus::NotIsometric;
  }
  return res;
}

}  // namespace wittlab
