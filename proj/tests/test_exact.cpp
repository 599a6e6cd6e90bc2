#include "doctest.h"
#include "oracle.hpp"

#include "toricsr/linalg.hpp"

using namespace toricsr;

namespace {

IntMatrix M(std::vector<IntVector> rows) { return IntMatrix::from_rows(rows); }

std::vector<Int> factors(const IntMatrix &A) { return smith_form(A).invariant_factors; }

void check_smith(const IntMatrix &A) {
  SmithDecomposition s = smith_form(A);
  CHECK(s.U * A * s.V == s.S);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  for (std::size_t i = 0; i < s.S.rows(); ++i)
    for (std::size_t j = 0; j < s.S.cols(); ++j)
      if (i != j)
        CHECK(s.S(i, j) == 0);
      else
        CHECK(s.S(i, j) >= 0);
  for (std::size_t i = 1; i < s.invariant_factors.size(); ++i)
    CHECK(s.invariant_factors[i] % s.invariant_factors[i - 1] == 0);
}

} // namespace

TEST_CASE("hermite form") {
  auto h = hermite_form(IntMatrix::identity(3));
  CHECK(h.H == IntMatrix::identity(3));
  CHECK(h.U == IntMatrix::identity(3));

  IntMatrix A = M({{2, 4}, {6, 8}});
  h = hermite_form(A);
  CHECK(h.U * A == h.H);
  CHECK(abs(determinant(h.U)) == 1);
  // Euclid on the first column: gcd(2, 6) = 2, then |det| / 2 = 4.
  CHECK(h.H(0, 0) == 2);
  CHECK(h.H(1, 0) == 0);
  CHECK(h.H(1, 1) == 4);
  CHECK(h.H(0, 1) == 0);
  CHECK(hermite_form(h.H).H == h.H);

  IntMatrix Z(2, 3);
  h = hermite_form(Z);
  CHECK(h.H == Z);
  CHECK(h.U == IntMatrix::identity(2));
  CHECK(h.rank == 0);
}

TEST_CASE("smith form") {
  CHECK(factors(M({{2, 0}, {0, 3}})) == std::vector<Int>{1, 6});
  CHECK(factors(IntMatrix::identity(4)) == std::vector<Int>(4, Int(1)));
  CHECK(factors(M({{2, 4}, {6, 8}})) == std::vector<Int>{2, 4});
  check_smith(M({{2, 4}, {6, 8}}));
  check_smith(M({{0, 0, 0}, {0, 0, 0}}));
  CHECK(factors(M({{0, 0}, {0, 0}})).empty());
}

TEST_CASE("smith form agrees with the gcd-of-minors oracle") {
  oracle::Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = static_cast<std::size_t>(g.uniform(1, 3)), c = static_cast<std::size_t>(g.uniform(1, 3));
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < r; ++i)
      rows.push_back(g.point(c, -6, 6));
    IntMatrix A = IntMatrix::from_rows(rows, c);
    check_smith(A);
    // d_1 ... d_k = gcd of k-minors
    std::vector<Int> d = factors(A);
    Int prod = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      Int gk = 0;
      oracle::for_each_subset(r, k, [&](const std::vector<std::size_t> &rs) {
        oracle::for_each_subset(c, k, [&](const std::vector<std::size_t> &cs) {
          std::vector<IntVector> m;
          for (std::size_t i : rs) {
            IntVector row;
            for (std::size_t j : cs)
              row.push_back(rows[i][j]);
            m.push_back(row);
          }
          gk = gcd(gk, oracle::det(m));
        });
      });
      if (gk == 0) {
        CHECK(d.size() < k);
        break;
      }
      REQUIRE(d.size() >= k);
      prod *= d[k - 1];
      CHECK(prod == gk);
    }
  }
}

TEST_CASE("integer kernel") {
  auto k = integer_kernel(M({{1, 1, 1}}));
  CHECK(k.size() == 2);
  for (const auto &v : k)
    CHECK(dot(v, IntVector{1, 1, 1}) == 0);
  CHECK(integer_kernel(M({{2, 1}, {1, 1}})).empty());
  k = integer_kernel(M({{2, -2}}));
  REQUIRE(k.size() == 1);
  CHECK((k[0] == IntVector{1, 1} || k[0] == IntVector{-1, -1}));
}

TEST_CASE("kernel bases are saturated") {
  oracle::Gen g(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<IntVector> rows{g.point(4, -5, 5), g.point(4, -5, 5)};
    IntMatrix A = IntMatrix::from_rows(rows, 4);
    auto ker = integer_kernel(A);
    CHECK(ker.size() + rank(A) == 4);
    for (const auto &v : ker)
      CHECK(is_zero(A * v));
    if (ker.empty())
      continue;
    // saturation: the invariant factors of the basis are all 1
    for (const Int &d : smith_form(IntMatrix::from_rows(ker, 4)).invariant_factors)
      CHECK(d == 1);
  }
}

TEST_CASE("diophantine systems") {
  CHECK_FALSE(solve_diophantine(M({{2}}), IntVector{3}).has_value());
  IntVector b{4, -7, 9};
  auto x = solve_diophantine(IntMatrix::identity(3), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);
  IntMatrix A = M({{2, 3}});
  x = solve_diophantine(A, IntVector{1});
  REQUIRE(x.has_value());
  CHECK(A * *x == IntVector{1});
}

TEST_CASE("rational helpers") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-5")) == "-5");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(floor_rat(Rat(-3, 2)) == -2);
  CHECK(ceil_rat(Rat(-3, 2)) == -1);
  CHECK(primitive_direction(RatVector{Rat(1, 2), Rat(-1, 3)}) == IntVector{3, -2});
  CHECK(determinant(M({{1, 2}, {3, 4}})) == -2);
  CHECK(is_unimodular(M({{2, 1}, {1, 1}})));
}

namespace {

// Gram-Schmidt over the rationals, written out here so the check does not reuse the reduction.
struct GramSchmidt {
  std::vector<RatVector> star;
  std::vector<std::vector<Rat>> mu;
};

GramSchmidt gram_schmidt(const std::vector<IntVector> &b) {
  GramSchmidt g;
  const std::size_t k = b.size(), n = b[0].size();
  g.mu.assign(k, std::vector<Rat>(k));
  for (std::size_t i = 0; i < k; ++i) {
    RatVector v(n);
    for (std::size_t c = 0; c < n; ++c)
      v[c] = b[i][c];
    for (std::size_t j = 0; j < i; ++j) {
      Rat num = 0, den = 0;
      for (std::size_t c = 0; c < n; ++c) {
        num += Rat(b[i][c]) * g.star[j][c];
        den += g.star[j][c] * g.star[j][c];
      }
      g.mu[i][j] = num / den;
      for (std::size_t c = 0; c < n; ++c)
        v[c] -= g.mu[i][j] * g.star[j][c];
    }
    g.star.push_back(v);
  }
  return g;
}

Rat norm2(const RatVector &v) {
  Rat s = 0;
  for (const Rat &x : v)
    s += x * x;
  return s;
}

} // namespace

TEST_CASE("LLL reduction") {
  std::vector<IntVector> rows{{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
  auto r = lll_reduce(rows);
  CHECK(r.basis.size() == 3);
  // the reduced basis of this lattice starts with a unit vector
  Int first = 0;
  for (const Int &x : r.basis[0])
    first += x * x;
  CHECK(first == 1);

  oracle::Gen g(41);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.uniform(2, 5));
    std::vector<IntVector> b;
    do {
      b.clear();
      for (std::size_t i = 0; i < n; ++i)
        b.push_back(g.point(n, -30, 30));
    } while (oracle::det(b) == 0);
    auto red = lll_reduce(b);
    CHECK(abs(determinant(red.transform)) == 1);
    CHECK(red.transform * IntMatrix::from_rows(b, n) == IntMatrix::from_rows(red.basis, n));
    CHECK(abs(oracle::det(red.basis)) == abs(oracle::det(b)));
    auto gs = gram_schmidt(red.basis);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        CHECK(abs(gs.mu[i][j]) <= Rat(1, 2));
    for (std::size_t i = 1; i < n; ++i) {
      Rat m = gs.mu[i][i - 1];
      CHECK(norm2(gs.star[i]) >= (Rat(3, 4) - m * m) * norm2(gs.star[i - 1]));
    }
  }
  CHECK_THROWS(lll_reduce({{1, 2}, {2, 4}}));
}
