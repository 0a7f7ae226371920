#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <unordered_map>

#include "chain_internal.hpp"

namespace wittlab {

namespace {

using Node = std::vector<std::uint32_t>;

struct NodeHash {
  std::size_t operator()(const Node& nd) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto c : nd) h = (h ^ c) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};
template <class V>
using NodeMap = std::unordered_map<Node, V, NodeHash>;

struct LineGraph {
  const BilinearSpace& S;
  const LocalRing& R;
  std::size_t n;
  Vec ideal;  // elements of m in code order
  mutable std::vector<std::uint32_t> line_of;  // vector code -> line code, lazily filled

  explicit LineGraph(const BilinearSpace& space, const ChainOptions& opts)
      : S(space), R(space.ring()), n(space.dim()) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      total *= R.size();
      if (total > opts.bfs_size_cap)
        throw Error(ErrorCode::BudgetExceeded, "|R|^n exceeds the search size cap");
    }
    for (Elem x = 0; x < R.size(); ++x)
      if (R.in_maximal_ideal(x)) ideal.push_back(x);
    line_of.assign(total, kUnset);
  }
  static constexpr std::uint32_t kUnset = UINT32_MAX;

  std::uint32_t encode(const Vec& v) const {
    std::uint32_t code = 0;
    for (Elem c : v) code = static_cast<std::uint32_t>(code * R.size() + c);
    return code;
  }
  Vec decode(std::uint32_t code) const {
    Vec v(n);
    for (std::size_t i = n; i-- > 0;) {
      v[i] = static_cast<Elem>(code % R.size());
      code = static_cast<std::uint32_t>(code / R.size());
    }
    return v;
  }
  std::uint32_t line(const Vec& v) const {
    std::uint32_t& slot = line_of[encode(v)];
    if (slot == kUnset) slot = encode(normalize_line(R, v));
    return slot;
  }

  Node node(const Basis& B) const {
    Node nd;
    for (const auto& v : B) nd.push_back(line(v));
    std::sort(nd.begin(), nd.end());
    return nd;
  }

  template <class Visit>
  void neighbors(const Node& nd, Visit&& visit) const {
    std::vector<Vec> vecs;
    Vec qs;
    for (auto code : nd) {
      vecs.push_back(decode(code));
      qs.push_back(S.q(vecs.back()));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Elem qi = qs[i], qj = qs[j];
        auto try_point = [&](Elem alpha, Elem beta) {
          Elem qx = R.add(R.mul(R.mul(alpha, alpha), qi), R.mul(R.mul(beta, beta), qj));
          if (!R.is_unit(qx)) return;
          Vec x = vec_add(R, vec_scale(R, alpha, vecs[i]), vec_scale(R, beta, vecs[j]));
          // Orthogonal to x inside the plane: beta q_j u_i - alpha q_i u_j.
          Vec y = vec_sub(R, vec_scale(R, R.mul(beta, qj), vecs[i]), vec_scale(R, R.mul(alpha, qi), vecs[j]));
          Node next;
          for (std::size_t k = 0; k < n; ++k)
            if (k != i && k != j) next.push_back(nd[k]);
          next.push_back(line(x));
          next.push_back(line(y));
          std::sort(next.begin(), next.end());
          if (next != nd) visit(next);
        };
        for (Elem beta = 0; beta < R.size(); ++beta) try_point(R.one(), beta);
        for (Elem alpha : ideal) try_point(alpha, R.one());
      }
  }
};

}  // namespace

BfsResult bfs_chain_oracle(const BilinearSpace& S, const Basis& B, const Basis& C, const ChainOptions& opts) {
  for (const auto* X : {&B, &C}) {
    ChainCheck chk = check_orthogonal_basis(S, *X);
    if (!chk.ok) throw Error(ErrorCode::NotOrthogonal, chk.diagnostic);
  }
  LineGraph g(S, opts);
  const LocalRing& R = S.ring();
  Node start = g.node(B), goal = g.node(C);
  // Bidirectional search; moves are reversible, so the graph is undirected.
  // Each side grows by one full level at a time, the smaller frontier first.
  NodeMap<Node> parent[2];
  std::vector<Node> frontier[2] = {{start}, {goal}};
  parent[0].emplace(start, Node{});
  parent[1].emplace(goal, Node{});
  std::optional<Node> meet;
  if (start == goal) meet = start;
  BfsResult res;
  while (!meet && !frontier[0].empty() && !frontier[1].empty()) {
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<Node> next_level;
    for (const Node& cur : frontier[side]) {
      g.neighbors(cur, [&](const Node& next) {
        if (meet || parent[side].count(next)) return;
        parent[side].emplace(next, cur);
        if (parent[0].size() + parent[1].size() > opts.bfs_budget)
          throw Error(ErrorCode::BudgetExceeded, "search visited more than " + std::to_string(opts.bfs_budget) + " bases");
        if (parent[1 - side].count(next)) meet = next;
        next_level.push_back(next);
      });
      if (meet) break;
    }
    frontier[side] = std::move(next_level);
  }
  res.nodes = parent[0].size() + parent[1].size();
  if (!meet) {
    res.status = BfsStatus::Unreachable;
    return res;
  }
  std::vector<Node> path;
  for (Node cur = *meet; !cur.empty(); cur = parent[0].at(cur)) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  for (Node cur = parent[1].at(*meet); !cur.empty(); cur = parent[1].at(cur)) path.push_back(cur);

  Chain c;
  Basis cur = B;
  detail::push_step(c, cur);
  for (std::size_t s = 1; s < path.size(); ++s) {
    const Node& next = path[s];
    std::vector<std::uint32_t> fresh;
    for (auto code : next) {
      bool present = false;
      for (const auto& v : cur) present = present || g.line(v) == code;
      if (!present) fresh.push_back(code);
    }
    std::size_t f = 0;
    for (auto& v : cur)
      if (!std::binary_search(next.begin(), next.end(), g.line(v))) v = g.decode(fresh[f++]);
    detail::push_step(c, cur);
  }
  // Same lines as C: rescale one vector at a time.
  for (const auto& target : C)
    for (auto& v : cur)
      if (g.line(v) == g.line(target) && v != target) {
        v = target;
        detail::push_step(c, cur);
      }
  detail::push_step(c, C);
  detail::pin_endpoints(c, B, C);
  ChainCheck chk = verify_chain(S, c, B, C);
  if (!chk.ok) throw Error(ErrorCode::NotOrthogonal, "internal: search chain failed verification: " + chk.diagnostic);
  (void)R;
  res.status = BfsStatus::Found;
  res.chain = std::move(c);
  return res;
}

std::vector<Basis> bfs_component(const BilinearSpace& S, const Basis& B, const ChainOptions& opts) {
  ChainCheck chk = check_orthogonal_basis(S, B);
  if (!chk.ok) throw Error(ErrorCode::NotOrthogonal, chk.diagnostic);
  LineGraph g(S, opts);
  NodeMap<char> seen;
  std::deque<Node> queue;
  Node start = g.node(B);
  seen.emplace(start, 1);
  queue.push_back(start);
  while (!queue.empty()) {
    Node cur = queue.front();
    queue.pop_front();
    g.neighbors(cur, [&](const Node& next) {
      if (seen.count(next)) return;
      seen.emplace(next, 1);
      if (seen.size() > opts.bfs_budget) throw Error(ErrorCode::BudgetExceeded, "component too large");
      queue.push_back(next);
    });
  }
  std::vector<Node> nodes;
  for (const auto& [nd, _] : seen) nodes.push_back(nd);
  std::sort(nodes.begin(), nodes.end());
  std::vector<Basis> out;
  for (const auto& nd : nodes) {
    Basis b;
    for (auto code : nd) b.push_back(g.decode(code));
    out.push_back(b);
  }
  return out;
}

std::vector<Basis> enumerate_orthogonal_bases(const BilinearSpace& S, const ChainOptions& opts) {
  LineGraph g(S, opts);
  const LocalRing& R = S.ring();
  const std::size_t n = S.dim();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= R.size();
  std::vector<Vec> lines;
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec v = g.decode(static_cast<std::uint32_t>(code));
    if (normalize_line(R, v) == v && R.is_unit(S.q(v))) lines.push_back(v);
  }
  std::vector<Basis> out;
  Basis cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == n) {
      if (R.is_unit(det(R, Matrix::from_columns(cur)))) out.push_back(cur);
      return;
    }
    for (std::size_t k = from; k < lines.size(); ++k) {
      bool ok = true;
      for (const auto& u : cur) ok = ok && S.b(u, lines[k]) == 0;
      if (!ok) continue;
      cur.push_back(lines[k]);
      self(self, k + 1);
      cur.pop_back();
      if (out.size() > opts.bfs_budget) throw Error(ErrorCode::BudgetExceeded, "too many orthogonal bases");
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace wittlab
