#include <doctest.h>

#include <random>

#include "wittlab/bilinear.hpp"

using namespace wittlab;

namespace {

Matrix random_invertible(const LocalRing& R, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix M(n, n);
    for (auto& x : M.data) x = static_cast<Elem>(rng() % R.size());
    if (R.is_unit(det(R, M))) return M;
  }
}

Vec random_units(const LocalRing& R, std::size_t n, std::mt19937_64& rng) {
  Vec d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(R.units()[rng() % R.units().size()]);
  return d;
}

// Random symmetric matrix with unit determinant.
Matrix random_gram(const LocalRing& R, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) A.at(i, j) = A.at(j, i) = static_cast<Elem>(rng() % R.size());
    if (R.is_unit(det(R, A))) return A;
  }
}

// Exhaustive congruence test over all n x n matrices.
bool brute_isometric(const LocalRing& R, const Matrix& A, const Matrix& B) {
  const std::size_t n = A.rows, cells = n * n;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= R.size();
  Matrix M(n, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& x : M.data) {
      x = static_cast<Elem>(c % R.size());
      c /= R.size();
    }
    if (congruence(R, M, A) == B && R.is_unit(det(R, M))) return true;
  }
  return false;
}

const char* kRings[] = {"GF(2)", "GF(3)", "GF(4)", "GF(5)", "GF(8)", "GF(9)", "Z/9", "Z/27", "Z/8",
                        "GF(3)[x]/(x^2)", "GF(4)[y]/(y^2)", "GF(2)[x]/(x^4)", "GF(2)[x]/(x^2)"};

}  // namespace

TEST_CASE("diagonalize produces verified witnesses") {
  std::mt19937_64 rng(1);
  for (const char* spec : kRings) {
    CAPTURE(spec);
    auto R = LocalRing::parse(spec);
    for (std::size_t n = 1; n <= 5; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        Matrix A = random_gram(*R, n, rng);
        auto [report, w] = diagonalize(BilinearSpace(R, A));
        CHECK(w.verify(*R));
        CHECK(w.source == A);
        CHECK(w.target == report.assembled());
        CHECK(report.units.size() + 2 * report.blocks.size() == n);
        for (Elem u : report.units) CHECK(R->is_unit(u));
        for (auto [a, b] : report.blocks) {
          CHECK(R->in_maximal_ideal(a));
          CHECK(R->in_maximal_ideal(b));
        }
        if (R->characteristic_of_residue() != 2) CHECK(report.blocks.empty());
      }
  }
}

TEST_CASE("hyperbolic plane over a residue-characteristic-2 ring stays a block") {
  auto R = LocalRing::parse("GF(2)[x]/(x^4)");
  BilinearSpace H(R, Matrix::from_rows({{0, 1}, {1, 0}}));
  auto [report, w] = diagonalize(H);
  CHECK(report.units.empty());
  REQUIRE(report.blocks.size() == 1);
  CHECK(w.verify(*R));
}

TEST_CASE("degenerate and empty spaces") {
  auto R = LocalRing::parse("Z/9");
  CHECK_THROWS_AS(BilinearSpace(R, Matrix::from_rows({{3, 0}, {0, 1}})), Error);
  CHECK_THROWS_AS(BilinearSpace(R, Matrix::from_rows({{1, 2}, {1, 1}})), Error);
  BilinearSpace Z(R, Matrix(0, 0));
  auto [report, w] = diagonalize(Z);
  CHECK(report.units.empty());
  CHECK(report.blocks.empty());
  CHECK(w.verify(*R));
}

TEST_CASE("block resolution matches the closed-form 3x3 congruence") {
  std::mt19937_64 rng(2);
  for (const char* spec : {"Z/9", "Z/27", "GF(3)[x]/(x^2)", "GF(4)[y]/(y^2)", "GF(2)[x]/(x^4)", "GF(5)"}) {
    CAPTURE(spec);
    auto R = LocalRing::parse(spec);
    Vec ideal;
    for (Elem x = 0; x < R->size(); ++x)
      if (R->in_maximal_ideal(x)) ideal.push_back(x);
    for (int trial = 0; trial < 50; ++trial) {
      Elem a = ideal[rng() % ideal.size()], b = ideal[rng() % ideal.size()];
      const Elem one = R->one(), m1 = R->neg(one);
      Elem ia = R->inv(R->add(m1, a)), ib = R->inv(R->add(m1, b));
      Elem c = R->mul(R->add(m1, R->mul(a, b)), R->mul(ia, ib));
      // Columns of the right-hand factor.
      Matrix M = Matrix::from_rows({{R->neg(ia), m1, 0}, {R->neg(ib), 0, m1}, {c, one, one}});
      Matrix A = Matrix::from_rows({{a, one, 0}, {one, b, 0}, {0, 0, m1}});
      Matrix D = Matrix::diagonal({R->neg(c), R->add(m1, a), R->add(m1, b)});
      CHECK(congruence(*R, M, A) == D);
      BlockResolution br = resolve_block(*R, a, b);
      CHECK(br.witness.verify(*R));
      CHECK(br.witness.source == A);
      CHECK(Vec(br.diagonal.begin(), br.diagonal.end()) == Vec{R->neg(c), R->add(m1, a), R->add(m1, b)});
    }
  }
}

TEST_CASE("stable diagonalization") {
  std::mt19937_64 rng(3);
  for (const char* spec : kRings) {
    CAPTURE(spec);
    auto R = LocalRing::parse(spec);
    for (std::size_t n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        BilinearSpace S(R, random_gram(*R, n, rng));
        StableDiagonalization sd = stable_diagonalize(S);
        CHECK(sd.witness.verify(*R));
        CHECK(sd.diagonal.size() == n + sd.appended);
        for (Elem u : sd.diagonal) CHECK(R->is_unit(u));
        CHECK(sd.witness.target == Matrix::diagonal(sd.diagonal));
      }
  }
}

TEST_CASE("isometry search agrees with exhaustive congruence search in rank 2") {
  std::mt19937_64 rng(4);
  for (const char* spec : {"GF(3)", "GF(5)", "GF(4)", "Z/9", "Z/8", "GF(2)[x]/(x^2)", "GF(2)"}) {
    CAPTURE(spec);
    auto R = LocalRing::parse(spec);
    for (int trial = 0; trial < 40; ++trial) {
      Matrix A = trial % 2 ? Matrix::diagonal(random_units(*R, 2, rng)) : random_gram(*R, 2, rng);
      Matrix B = trial % 3 ? Matrix::diagonal(random_units(*R, 2, rng)) : random_gram(*R, 2, rng);
      if (trial % 5 == 0) B = congruence(*R, random_invertible(*R, 2, rng), A);
      IsometryResult res = is_isometric(BilinearSpace(R, A), BilinearSpace(R, B));
      bool expected = brute_isometric(*R, A, B);
      CHECK(res.status == (expected ? IsometryStatus::Isometric : IsometryStatus::NotIsometric));
      if (res.witness) {
        CHECK(res.witness->verify(*R));
        CHECK(res.witness->source == A);
        CHECK(res.witness->target == B);
      }
    }
  }
}

TEST_CASE("isometry search agrees with exhaustive search in rank 3") {
  std::mt19937_64 rng(5);
  for (const char* spec : {"GF(3)", "GF(2)[x]/(x^2)", "GF(2)"}) {
    CAPTURE(spec);
    auto R = LocalRing::parse(spec);
    for (int trial = 0; trial < 12; ++trial) {
      Matrix A = trial % 2 ? Matrix::diagonal(random_units(*R, 3, rng)) : random_gram(*R, 3, rng);
      Matrix B = trial % 3 ? Matrix::diagonal(random_units(*R, 3, rng)) : random_gram(*R, 3, rng);
      IsometryResult res = is_isometric(BilinearSpace(R, A), BilinearSpace(R, B));
      bool expected = brute_isometric(*R, A, B);
      CHECK(res.status == (expected ? IsometryStatus::Isometric : IsometryStatus::NotIsometric));
    }
  }
}

TEST_CASE("isometry search finds witnesses for congruent pairs") {
  std::mt19937_64 rng(6);
  for (const char* spec : {"Z/27", "GF(4)[y]/(y^2)", "GF(2)[x]/(x^4)", "GF(9)"}) {
    CAPTURE(spec);
    auto R = LocalRing::parse(spec);
    for (std::size_t n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 5; ++trial) {
        Matrix A = random_gram(*R, n, rng);
        Matrix B = congruence(*R, random_invertible(*R, n, rng), A);
        IsometryResult res = is_isometric(BilinearSpace(R, A), BilinearSpace(R, B));
        REQUIRE(res.status == IsometryStatus::Isometric);
        CHECK(res.witness->verify(*R));
      }
  }
}

TEST_CASE("F3: <1,1> and <2,2> are isometric") {
  auto R = LocalRing::parse("GF(3)");
  IsometryResult res = is_isometric(BilinearSpace::diagonal(R, {1, 1}), BilinearSpace::diagonal(R, {2, 2}));
  CHECK(res.status == IsometryStatus::Isometric);
}

TEST_CASE("isometry search reports Unknown when the budget runs out") {
  auto R = LocalRing::parse("GF(2)[x]/(x^4)");
  IsometryOptions opts;
  opts.budget = 10;
  opts.value_precheck = false;
  opts.determinant_precheck = false;
  IsometryResult res = is_isometric(BilinearSpace::diagonal(R, {1, 1, 1}), BilinearSpace::diagonal(R, {3, 3, 3}), opts);
  CHECK(res.status == IsometryStatus::Unknown);
}

TEST_CASE("Steinberg, hyperbolic scaling and the <1,1+x> congruences") {
  std::mt19937_64 rng(7);
  for (const char* spec : {"GF(5)", "GF(7)", "GF(9)", "Z/27", "GF(4)", "GF(4)[y]/(y^2)", "GF(2)[x]/(x^4)"}) {
    CAPTURE(spec);
    auto R = LocalRing::parse(spec);
    const Elem one = R->one();
    for (int trial = 0; trial < 30; ++trial) {
      Elem a = static_cast<Elem>(rng() % R->size());
      Elem b = R->sub(one, a);
      if (R->is_unit(a) && R->is_unit(b)) {
        Matrix M = Matrix::from_rows({{one, b}, {R->neg(one), a}});
        CHECK(congruence(*R, M, Matrix::diagonal({a, b})) == Matrix::diagonal({one, R->mul(a, b)}));
        CongruenceWitness w = steinberg_witness(*R, a);
        CHECK(w.verify(*R));
        CHECK(w.matrix == M);
      }
      Elem u = R->units()[rng() % R->units().size()];
      Matrix H = Matrix::from_rows({{0, one}, {one, 0}});
      Matrix M = Matrix::from_rows({{0, u}, {one, 0}});
      CHECK(congruence(*R, M, H) == Matrix::from_rows({{0, u}, {u, 0}}));
      CHECK(hyperbolic_scaling_witness(*R, u).verify(*R));
    }
  }
  auto R = LocalRing::parse("GF(2)[x]/(x^4)");
  auto e = [&](const char* s) { return R->parse_element(s); };
  Matrix M = Matrix::from_rows({{e("x"), 1}, {1, e("x+x^2+x^3")}});
  CHECK(mat_mul(*R, mat_mul(*R, M, Matrix::diagonal({1, e("1+x")})), M) ==
        Matrix::diagonal({e("1+x+x^2"), e("1+x^2+x^3")}));
}

TEST_CASE("representation identity") {
  std::mt19937_64 rng(8);
  for (const char* spec : {"GF(5)", "Z/27"}) {
    auto R = LocalRing::parse(spec);
    int done = 0;
    while (done < 100) {
      auto pick = [&] { return static_cast<Elem>(rng() % R->size()); };
      Elem a = R->units()[rng() % R->units().size()], b = R->units()[rng() % R->units().size()];
      Elem x = pick(), y = pick(), s = pick(), t = pick();
      Elem c = R->add(R->mul(a, R->mul(x, x)), R->mul(b, R->mul(y, y)));
      if (!R->is_unit(c)) continue;
      Elem d = R->mul(a, R->mul(b, c));
      Elem f = R->add(R->mul(a, R->mul(s, s)), R->mul(b, R->mul(t, t)));
      Elem p = R->div(R->add(R->mul(a, R->mul(s, x)), R->mul(b, R->mul(t, y))), c);
      Elem q = R->div(R->sub(R->mul(t, x), R->mul(s, y)), c);
      CHECK(R->add(R->mul(c, R->mul(p, p)), R->mul(d, R->mul(q, q))) == f);
      CHECK(check_representation_identity(*R, a, b, c, d, x, y, s, t, f).holds);
      ++done;
    }
  }
}

TEST_CASE("orthogonal complement") {
  std::mt19937_64 rng(9);
  for (const char* spec : {"Z/9", "GF(4)[y]/(y^2)", "GF(5)"}) {
    auto R = LocalRing::parse(spec);
    BilinearSpace S(R, random_gram(*R, 4, rng));
    for (int trial = 0; trial < 10; ++trial) {
      Vec v(4);
      for (auto& x : v) x = static_cast<Elem>(rng() % R->size());
      if (!R->is_unit(S.q(v))) continue;
      std::vector<Vec> comp = orthogonal_complement(S, {v});
      REQUIRE(comp.size() == 3);
      for (const auto& w : comp) CHECK(S.b(v, w) == 0);
      std::vector<Vec> all = comp;
      all.push_back(v);
      CHECK(R->is_unit(det(*R, Matrix::from_columns(all))));
    }
  }
}
