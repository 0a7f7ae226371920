#include <doctest.h>

#include <numeric>
#include <random>

#include "wittlab/error.hpp"
#include "wittlab/smith.hpp"

using namespace wittlab;

namespace {

std::int64_t int_det(IntMatrix M) {
  // Fraction-free Bareiss elimination.
  const std::size_t n = M.size();
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(M[p], M[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

// gcd of all k x k minors.
std::int64_t determinantal_divisor(const IntMatrix& A, std::size_t cols, std::size_t k) {
  const std::size_t rows = A.size();
  std::int64_t g = 0;
  std::vector<std::size_t> rs(k), cs(k);
  auto choose = [](std::vector<std::size_t>& idx, std::size_t n, auto&& body) {
    const std::size_t k = idx.size();
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    for (;;) {
      body();
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) return;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  };
  choose(rs, rows, [&] {
    choose(cs, cols, [&] {
      IntMatrix sub(k, IntVec(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = A[rs[i]][cs[j]];
      g = std::gcd(g, int_det(sub));
    });
  });
  return g;
}

IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  IntMatrix A(rows, IntVec(cols));
  for (auto& row : A)
    for (auto& x : row) x = static_cast<std::int64_t>(rng() % 13) - 6;
  // Scale some rows to force nontrivial invariant factors.
  if (rows > 0 && rng() % 2)
    for (auto& x : A[0]) x *= 4;
  return A;
}

}  // namespace

TEST_CASE("Smith form matches determinantal divisors") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix A = random_matrix(rows, cols, rng);
    SmithForm snf = smith_normal_form(A, cols, true);
    const std::size_t m = std::min(rows, cols);
    REQUIRE(snf.diagonal.size() == m);
    // U A V = D.
    IntMatrix D = int_mul(int_mul(snf.U, A, cols), snf.V, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) CHECK(D[i][j] == (i == j ? snf.diagonal[i] : 0));
    // Unimodular transforms.
    CHECK(std::abs(int_det(snf.U)) == 1);
    CHECK(std::abs(int_det(snf.V)) == 1);
    CHECK(int_mul(snf.V, snf.Vinv, cols) == int_identity(cols));
    // Divisibility chain and agreement with the oracle.
    std::int64_t prefix = 1;
    std::size_t rank = 0;
    for (std::size_t k = 1; k <= m; ++k) {
      const std::int64_t d = snf.diagonal[k - 1];
      CHECK(d >= 0);
      if (k < m && d != 0) CHECK(snf.diagonal[k] % d == 0);
      if (d != 0) ++rank;
      prefix *= d;
      CHECK(prefix == determinantal_divisor(A, cols, k));
    }
    CHECK(snf.rank == rank);
  }
}

TEST_CASE("abelian group coordinates") {
  // Z^3 / <(2,0,0), (0,3,0)> = Z/2 + Z/3 + Z = Z/6 + Z.
  AbelianGroup G({{2, 0, 0}, {0, 3, 0}}, 3);
  CHECK(G.invariant_factors() == IntVec{6});
  CHECK(G.free_rank() == 1);
  CHECK(G.is_zero({2, 3, 0}));
  CHECK_FALSE(G.is_zero({1, 0, 0}));
  CHECK(G.equal({1, 0, 5}, {3, 6, 5}));
  CHECK_FALSE(G.equal({0, 0, 1}, {0, 0, 2}));
  // Trivial group.
  AbelianGroup T({{1, 0}, {0, 1}}, 2);
  CHECK(T.is_trivial());
  // No relations.
  AbelianGroup F(IntMatrix{}, 2);
  CHECK(F.free_rank() == 2);
  CHECK(F.invariant_factors().empty());
}

TEST_CASE("sections and lattice coefficients round-trip") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix A = random_matrix(rows, cols, rng);
    AbelianGroup G(A, cols);
    // Coordinates are additive and the section inverts them.
    IntVec x(cols), y(cols), s(cols);
    for (std::size_t i = 0; i < cols; ++i) {
      x[i] = static_cast<std::int64_t>(rng() % 21) - 10;
      y[i] = static_cast<std::int64_t>(rng() % 21) - 10;
      s[i] = x[i] + y[i];
    }
    IntVec cx = G.coordinates(x), cy = G.coordinates(y), cs = G.coordinates(s);
    REQUIRE(cx.size() == G.coordinate_count());
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i < G.invariant_factors().size()) {
        const std::int64_t d = G.invariant_factors()[i];
        CHECK(cx[i] >= 0);
        CHECK(cx[i] < d);
        CHECK(cs[i] == (cx[i] + cy[i]) % d);
      } else {
        CHECK(cs[i] == cx[i] + cy[i]);
      }
    }
    CHECK(G.coordinates(G.section(cx)) == cx);
    CHECK(G.equal(G.section(cx), x));
    // Each relation row is zero and is an integer combination of the basis.
    IntMatrix basis = G.lattice_basis();
    for (const IntVec& row : A) {
      CHECK(G.is_zero(row));
      IntVec coeffs = G.lattice_coefficients(row);
      REQUIRE(coeffs.size() == basis.size());
      IntVec back(cols, 0);
      for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t j = 0; j < cols; ++j) back[j] += coeffs[k] * basis[k][j];
      CHECK(back == row);
    }
    if (!G.is_zero(x)) CHECK_THROWS_AS(G.lattice_coefficients(x), Error);
  }
}

TEST_CASE("overflow is reported") {
  // Invariant factors 1 and 2^124 - 1; the second does not fit in int64.
  const std::int64_t big = std::int64_t{1} << 62;
  IntMatrix A = {{big, 1}, {1, big}};
  bool overflow = false;
  try {
    smith_normal_form(A, 2, true);
  } catch (const Error& e) {
    overflow = e.code() == ErrorCode::Overflow;
  }
  CHECK(overflow);
}
