// Acceptance run: one PASS/FAIL line per criterion with its time limit.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "random_bases.hpp"
#include "wittlab/groups.hpp"

using namespace wittlab;
using wittlab::testing::random_orthogonal_basis;
using wittlab::testing::random_space;

namespace {

const std::vector<std::string> kTestMatrix = {"GF(3)", "GF(4)", "GF(5)", "GF(7)", "GF(8)",
                                              "GF(9)", "Z/9",   "Z/27",  "GF(3)[x]/(x^2)", "GF(4)[y]/(y^2)"};

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %s (%.2f s, limit %.0f s)%s%s%s\n", pass ? "PASS" : "FAIL", id, name, secs, limit_s,
              out.detail.empty() ? "" : ": ", out.detail.c_str(), in_time ? "" : " [time limit exceeded]");
  std::fflush(stdout);
}

std::string structure_string(const AbelianGroup& G) {
  std::string s = "Z^" + std::to_string(G.free_rank());
  for (auto d : G.invariant_factors()) s += " + Z/" + std::to_string(d);
  return s;
}

Matrix identity_gram(const LocalRing& R, std::size_t n) {
  Vec d(n, R.one());
  return Matrix::diagonal(d);
}

Elem random_unit(const LocalRing& R, std::mt19937_64& rng) { return R.units()[rng() % R.units().size()]; }

Elem random_ideal_element(const LocalRing& R, std::mt19937_64& rng) {
  for (;;) {
    Elem x = static_cast<Elem>(rng() % R.size());
    if (R.in_maximal_ideal(x)) return x;
  }
}

std::size_t max_dim(const LocalRing& R, std::size_t limit) {
  std::size_t n = 0;
  for (std::size_t p = R.size(); p <= limit; p *= R.size()) ++n;
  return n;
}

}  // namespace

int main() {
  criterion(1, "GF(2)[x]/(x^4): GW, KMW and comparison kernel", 10, [] {
    auto R = LocalRing::parse("GF(2)[x]/(x^4)");
    Comparison C = comparison_map(R);
    const bool ok = C.gw.free_rank() == 1 && C.gw.invariant_factors() == IntVec{2, 2} && C.kmw.free_rank() == 1 &&
                    C.kmw.invariant_factors() == IntVec{2, 2, 2} && C.kernel.free_rank() == 0 &&
                    C.kernel.invariant_factors() == IntVec{2};
    return Outcome{ok, "GW = " + structure_string(C.gw) + ", KMW = " + structure_string(C.kmw) +
                           ", kernel = " + structure_string(C.kernel)};
  });

  criterion(2, "GF(2)[x]/(x^4): units, squares and square classes", 1, [] {
    auto R = LocalRing::parse("GF(2)[x]/(x^4)");
    auto E = [&](const char* s) { return R->parse_element(s); };
    std::set<Elem> squares;
    for (Elem u : R->units()) squares.insert(R->mul(u, u));
    std::set<Elem> classes;
    for (const char* s : {"1", "1+x", "1+x+x^2", "1+x^2+x^3"}) classes.insert(R->square_class(E(s)));
    std::set<Elem> all;
    for (Elem u : R->units()) all.insert(R->square_class(u));
    const bool ok = R->units().size() == 8 && squares == std::set<Elem>{E("1"), E("1+x^2")} && classes.size() == 4 &&
                    all.size() == 4 && R->square_class_reps().size() == 4;
    return Outcome{ok, "|R*| = " + std::to_string(R->units().size()) + ", square classes = " +
                           std::to_string(all.size())};
  });

  criterion(3, "comparison map is an isomorphism on the test matrix", 120, [] {
    Outcome out;
    for (const auto& spec : kTestMatrix) {
      Comparison C = comparison_map(LocalRing::parse(spec));
      if (!C.is_isomorphism) {
        out.ok = false;
        out.detail += spec + " kernel " + structure_string(C.kernel) + "; ";
      }
    }
    if (out.ok) out.detail = std::to_string(kTestMatrix.size()) + " rings";
    return out;
  });

  criterion(4, "GW(F2) = Z", 1, [] {
    AbelianGroup G = group_structure(gw_presentation(LocalRing::parse("GF(2)")));
    return Outcome{G.free_rank() == 1 && G.invariant_factors().empty(), structure_string(G)};
  });

  criterion(5, "chain lemma on random orthogonal basis pairs", 300, [] {
    std::mt19937_64 rng(5);
    std::size_t total = 0, good = 0;
    std::string bad;
    for (const auto& spec : kTestMatrix) {
      auto R = LocalRing::parse(spec);
      for (std::size_t n = 2; n <= 4; ++n)
        for (int trial = 0; trial < 100; ++trial) {
          BilinearSpace S = random_space(R, n, rng);
          Basis B = random_orthogonal_basis(S, rng), C = random_orthogonal_basis(S, rng);
          ++total;
          ChainCheck chk = verify_chain(S, chain_local(S, B, C), B, C);
          if (chk.ok)
            ++good;
          else if (bad.empty())
            bad = " first failure " + spec + " n=" + std::to_string(n) + ": " + chk.diagnostic;
        }
    }
    return Outcome{good == total, std::to_string(good) + "/" + std::to_string(total) + " verified" + bad};
  });

  criterion(6, "F2 counterexample", 10, [] {
    auto F = LocalRing::parse("GF(2)");
    BilinearSpace S4(F, identity_gram(*F, 4));
    BfsResult res = bfs_chain_oracle(S4, standard_basis(4), hat_basis(*F, 4));
    // <1,1,1> over F2 by brute force: anisotropic vectors have odd weight and
    // two vectors are orthogonal when they share an even number of ones.
    std::vector<unsigned> odd;
    for (unsigned v = 1; v < 8; ++v)
      if (__builtin_popcount(v) % 2) odd.push_back(v);
    std::size_t count = 0;
    for (std::size_t i = 0; i < odd.size(); ++i)
      for (std::size_t j = i + 1; j < odd.size(); ++j)
        for (std::size_t k = j + 1; k < odd.size(); ++k) {
          auto orth = [](unsigned a, unsigned b) { return __builtin_popcount(a & b) % 2 == 0; };
          if (orth(odd[i], odd[j]) && orth(odd[i], odd[k]) && orth(odd[j], odd[k]) && (odd[i] ^ odd[j] ^ odd[k]) != 0)
            ++count;
        }
    BilinearSpace S3(F, identity_gram(*F, 3));
    const std::size_t enumerated = enumerate_orthogonal_bases(S3).size();
    const bool ok = res.status == BfsStatus::Unreachable && count == 1 && enumerated == 1;
    return Outcome{ok, std::string("e to e-hat ") + (res.status == BfsStatus::Unreachable ? "unreachable" : "found") +
                           " after " + std::to_string(res.nodes) + " nodes; orthogonal bases of <1,1,1>: " +
                           std::to_string(count) + " (brute force), " + std::to_string(enumerated) + " (library)"};
  });

  criterion(7, "F4 eight-basis chain from e to e-hat", 1, [] {
    auto R = LocalRing::parse("GF(4)");
    const Elem o = 1, z = 0, al = R->parse_element("a"), be = R->parse_element("1+a");
    std::vector<Basis> rows = {
        {{o, z, z, z}, {z, o, z, z}, {z, z, o, z}, {z, z, z, o}},
        {{al, be, z, z}, {be, al, z, z}, {z, z, o, z}, {z, z, z, o}},
        {{o, al, al, z}, {be, al, z, z}, {be, o, be, z}, {z, z, z, o}},
        {{be, o, o, al}, {be, al, z, z}, {be, o, be, z}, {al, be, be, be}},
        {{be, o, o, al}, {be, al, z, z}, {o, al, be, o}, {z, z, be, al}},
        {{be, o, o, al}, {o, be, al, o}, {o, al, be, o}, {al, o, o, be}},
        {{be, o, o, al}, {o, z, o, o}, {o, o, z, o}, {al, o, o, be}},
        {{z, o, o, o}, {o, z, o, o}, {o, o, z, o}, {o, o, o, z}},
    };
    BilinearSpace S(R, identity_gram(*R, 4));
    ChainCheck chk = verify_chain(S, Chain{rows}, standard_basis(4), hat_basis(*R, 4));
    return Outcome{chk.ok, chk.ok ? "8 bases, 7 steps" : chk.diagnostic};
  });

  criterion(8, "identity witnesses as exact congruences", 30, [] {
    std::mt19937_64 rng(8);
    std::size_t total = 0, good = 0;
    const char* rings[] = {"Z/9", "Z/27", "GF(3)[x]/(x^2)", "GF(4)[y]/(y^2)", "GF(2)[x]/(x^4)", "GF(5)", "GF(8)"};
    for (const char* spec : rings) {
      auto R = LocalRing::parse(spec);
      const Elem one = R->one(), m1 = R->neg(one);
      for (int draw = 0; draw < 500; ++draw) {
        // 3x3 block resolution: [[a,1],[1,b]] + <-1> with a, b in m.
        Elem a = random_ideal_element(*R, rng), b = random_ideal_element(*R, rng);
        Elem ia = R->inv(R->add(m1, a)), ib = R->inv(R->add(m1, b));
        Elem c = R->mul(R->add(m1, R->mul(a, b)), R->mul(ia, ib));
        Matrix M = Matrix::from_rows({{R->neg(ia), m1, 0}, {R->neg(ib), 0, m1}, {c, one, one}});
        Matrix A = Matrix::from_rows({{a, one, 0}, {one, b, 0}, {0, 0, m1}});
        bool ok = congruence(*R, M, A) == Matrix::diagonal({R->neg(c), R->add(m1, a), R->add(m1, b)}) &&
                  resolve_block(*R, a, b).witness.verify(*R);
        // Steinberg: diag(s, 1-s) -> diag(1, s(1-s)) for units s, 1-s.
        Elem s = random_unit(*R, rng), t = R->sub(one, s);
        if (R->is_unit(t)) {
          Matrix St = Matrix::from_rows({{one, t}, {m1, s}});
          ok = ok && congruence(*R, St, Matrix::diagonal({s, t})) == Matrix::diagonal({one, R->mul(s, t)}) &&
               steinberg_witness(*R, s).verify(*R);
        }
        // Hyperbolic scaling: H -> uH.
        Elem u = random_unit(*R, rng);
        Matrix H = Matrix::from_rows({{0, one}, {one, 0}});
        ok = ok && congruence(*R, Matrix::from_rows({{0, u}, {one, 0}}), H) ==
                       Matrix::from_rows({{0, u}, {u, 0}}) &&
             hyperbolic_scaling_witness(*R, u).verify(*R);
        ++total;
        good += ok;
      }
    }
    // <1,1+x> = <1+x+x^2, 1+x^2+x^3> over GF(2)[x]/(x^4).
    auto R = LocalRing::parse("GF(2)[x]/(x^4)");
    auto E = [&](const char* s) { return R->parse_element(s); };
    Matrix M = Matrix::from_rows({{E("x"), 1}, {1, E("x+x^2+x^3")}});
    ++total;
    good += congruence(*R, M, Matrix::diagonal({1, E("1+x")})) == Matrix::diagonal({E("1+x+x^2"), E("1+x^2+x^3")});
    return Outcome{good == total, std::to_string(good) + "/" + std::to_string(total) + " draws"};
  });

  criterion(9, "representation identity f = c p^2 + d q^2", 30, [] {
    std::mt19937_64 rng(9);
    std::size_t total = 0, good = 0;
    for (const char* spec : {"GF(5)", "Z/27"}) {
      auto R = LocalRing::parse(spec);
      std::size_t done = 0;
      while (done < 1000) {
        auto pick = [&] { return static_cast<Elem>(rng() % R->size()); };
        Elem a = random_unit(*R, rng), b = random_unit(*R, rng);
        Elem x = pick(), y = pick(), s = pick(), t = pick();
        Elem c = R->add(R->mul(a, R->mul(x, x)), R->mul(b, R->mul(y, y)));
        if (!R->is_unit(c)) continue;
        Elem d = R->mul(a, R->mul(b, c));
        Elem f = R->add(R->mul(a, R->mul(s, s)), R->mul(b, R->mul(t, t)));
        Elem p = R->div(R->add(R->mul(a, R->mul(s, x)), R->mul(b, R->mul(t, y))), c);
        Elem q = R->div(R->sub(R->mul(t, x), R->mul(s, y)), c);
        const bool ok = R->add(R->mul(c, R->mul(p, p)), R->mul(d, R->mul(q, q))) == f &&
                        check_representation_identity(*R, a, b, c, d, x, y, s, t, f).holds;
        ++done;
        ++total;
        good += ok;
      }
    }
    return Outcome{good == total, std::to_string(good) + "/" + std::to_string(total) + " instances"};
  });

  criterion(10, "Steinberg consequences in the Steinberg-only quotient", 120, [] {
    Outcome out;
    std::size_t checked = 0, rings = 0;
    for (const auto& spec : kTestMatrix) {
      auto R = LocalRing::parse(spec);
      const std::size_t q = R->residue_field().size();
      if (q == 2 || q == 3) continue;
      SteinbergReport rep = verify_steinberg_consequences(R);
      ++rings;
      checked += rep.checked;
      if (!rep.asserted || !rep.failures.empty()) {
        out.ok = false;
        out.detail += spec + " failures " + std::to_string(rep.failures.size()) + "; ";
      }
    }
    out.detail += std::to_string(rings) + " rings, " + std::to_string(checked) + " identities";
    return out;
  });

  criterion(11, "oracle equivalence for |R|^n <= 2^12", 600, [] {
    constexpr std::size_t kLimit = 1 << 12;
    std::vector<std::string> rings = kTestMatrix;
    for (const char* s : {"GF(2)", "Z/4", "GF(2)[x]/(x^2)", "Z/8", "GF(2)[x]/(x^4)"}) rings.push_back(s);
    std::mt19937_64 rng(11);
    Outcome out;
    std::size_t pairs = 0, agree = 0, oracle_rings = 0;
    for (const auto& spec : rings) {
      auto R = LocalRing::parse(spec);
      const std::size_t nmax = max_dim(*R, kLimit);
      // Chains: every diagonal space up to square classes, from the
      // standard basis to random orthogonal bases (and e-hat when defined).
      for (std::size_t n = 1; n <= nmax; ++n)
        for (const Vec& tuple : square_class_multisets(*R, n)) {
          BilinearSpace S = BilinearSpace::diagonal(R, tuple);
          std::vector<Basis> targets;
          for (int k = 0; k < 3; ++k) targets.push_back(random_orthogonal_basis(S, rng));
          if (n >= 2 && R->characteristic_of_residue() == 2 && std::all_of(tuple.begin(), tuple.end(), [&](Elem u) {
                return u == R->one();
              }))
            targets.push_back(hat_basis(*R, n));
          for (const Basis& C : targets) {
            if (!check_orthogonal_basis(S, C).ok) continue;
            ++pairs;
            BfsResult res = bfs_chain_oracle(S, standard_basis(n), C);
            bool reached = false;
            try {
              reached = verify_chain(S, chain_local(S, standard_basis(n), C), standard_basis(n), C).ok;
            } catch (const Error& e) {
              if (e.code() != ErrorCode::F2Unreachable) throw;
            }
            if (reached == (res.status == BfsStatus::Found))
              ++agree;
            else
              out.detail += spec + " chain disagreement; ";
          }
        }
      // GW classes against the stable isometry oracle.
      OracleOptions opts;
      opts.rank_cap = std::min(opts.rank_cap, nmax);
      OracleClassification oc = stable_isometry_oracle(R, opts);
      GroupRing ZG(R);
      AbelianGroup G = group_structure(gw_presentation(R));
      std::map<IntVec, std::size_t> class_of;
      std::vector<std::size_t> per_class;
      for (std::size_t ci = 0; ci < oc.classes.size(); ++ci)
        for (const Vec& t : oc.classes[ci]) {
          auto [it, fresh] = class_of.emplace(gw_class(ZG, G, BilinearSpace::diagonal(R, t)), ci);
          if (!fresh && it->second != ci) out.detail += spec + " oracle classes merged by GW; ";
        }
      std::set<std::size_t> hit;
      for (const auto& [coords, ci] : class_of) hit.insert(ci);
      if (class_of.size() != oc.classes.size() || hit.size() != oc.classes.size())
        out.detail += spec + " oracle class split by GW; ";
      ++oracle_rings;
    }
    out.ok = out.detail.empty() && agree == pairs;
    out.detail += std::to_string(agree) + "/" + std::to_string(pairs) + " chain pairs agree, " +
                  std::to_string(oracle_rings) + " rings checked against the oracle";
    return out;
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
