#include "doctest.h"
#include "oracle.hpp"

#include "toricsr/condition_m.hpp"
#include "toricsr/constructions.hpp"

#include <set>

using namespace toricsr;

namespace {

std::set<IntVector> vertex_set(const LatticePolytope &P) {
  return {P.vertices().begin(), P.vertices().end()};
}

Int degree(const IntVector &v) {
  Int s = 0;
  for (const Int &x : v)
    s += x;
  return s;
}

} // namespace

TEST_CASE("named families") {
  CHECK(vertex_set(hpt()) == std::set<IntVector>{{0, 0, 0, 0, 0},
                                                 {2, 0, 0, 0, 0},
                                                 {0, 2, 0, 0, 0},
                                                 {0, 1, 2, 0, 0},
                                                 {1, 0, 0, 2, 0},
                                                 {1, 1, 0, 0, 2}});
  CHECK(vertex_set(kollar_totaro(4, 4)) ==
        std::set<IntVector>{{2, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 3, 1, 0, 0}, {0, 0, 3, 1, 0},
                            {0, 0, 0, 3, 1}, {0, 0, 0, 0, 3}});
  CHECK(vertex_set(cubic_empty(3)) ==
        std::set<IntVector>{{1, 0, 0}, {2, 1, 0}, {0, 2, 1}, {0, 0, 2}});
  CHECK_THROWS_AS(cubic_empty(4), PreconditionViolation);
  CHECK_THROWS_AS(empty_tetrahedron(2, 4), PreconditionViolation);
  CHECK_THROWS_AS(empty_tetrahedron(5, 3), PreconditionViolation);
  CHECK(double_cover_polytope(4, 3).dim() == 4);
  CHECK(simplex_product({{2, 3}, {3, 4}}).ambient_dim() == 7);
  CHECK(build({"simplex_product", {2, 3, 3, 4}}) == simplex_product({{2, 3}, {3, 4}}));
  CHECK(build({"tpq", {3, 7}}) == empty_tetrahedron(3, 7));
  CHECK(build({"hpt", {}}) == hpt());
  CHECK_THROWS_AS(build({"hpt", {1}}), PreconditionViolation);
  CHECK_THROWS_AS(build({"nonsense", {}}), PreconditionViolation);
}

TEST_CASE("empty simplices among the families") {
  auto K = kollar_totaro(4, 4);
  auto ck = classify(K);
  CHECK(ck.is_empty_simplex);
  CHECK(fine_interior(K).empty());
  auto G = general_type_simplex();
  CHECK(classify(G).is_empty_simplex);
  CHECK(fine_interior(G).dim == 4);
  CHECK(lattice_width(G).width == 4);

  for (std::size_t n : {3, 5, 7, 9}) {
    CAPTURE(n);
    CHECK(classify(cubic_empty(n)).is_empty_simplex);
  }
  for (long q = 1; q <= 12; ++q)
    for (long p = 1; p <= q; ++p) {
      if (std::gcd(p, q) != 1)
        continue;
      auto T = empty_tetrahedron(p, q);
      CHECK(classify(T).is_empty_simplex);
      CHECK(lattice_width(T).width == 1);
    }

  // emptiness agrees with a brute-force count; several parameters are not empty
  int nonempty = 0;
  for (std::size_t n = 2; n <= 5; ++n)
    for (long d = 2; d <= 6; ++d) {
      auto P = kollar_totaro(n, d);
      const bool brute = oracle::lattice_points(P.vertices(), false).size() == n + 2;
      CHECK(classify(P).is_empty_simplex == brute);
      nonempty += brute ? 0 : 1;
    }
  CHECK(nonempty > 0);
  // (1,1,1,1) is the barycenter of the cyclic quartic's exponents
  CHECK(kollar_totaro(3, 4).contains(IntVector{0, 1, 1, 1}));
}

TEST_CASE("Schreieder simplices") {
  auto S = schreieder(3);
  CHECK(S.degree == 5);
  CHECK(S.epsilons.size() == 4);
  CHECK(S.epsilons.front() == std::vector<int>{0, 0, 0});
  REQUIRE(S.polytope.ambient_dim() == 10);
  CHECK(S.polytope.dim() == 10);
  CHECK(S.polytope.is_simplex());
  std::set<IntVector> want{zero_vector(10)};
  for (std::size_t i = 0; i < 6; ++i)
    want.insert(scale(unit_vector(10, i), 5));
  want.insert({0, 0, 0, 0, 0, 0, 2, 0, 0, 0});
  want.insert({0, 0, 1, 0, 0, 0, 0, 2, 0, 0});
  want.insert({0, 1, 0, 0, 0, 0, 0, 0, 2, 0});
  want.insert({1, 0, 0, 0, 0, 0, 0, 0, 0, 2});
  CHECK(vertex_set(S.polytope) == want);

  // the facet system: 2x_i - sum eps_i x_eps >= 0, x_j >= 0 for j >= n, and the degree bound
  for (std::size_t n : {3, 4}) {
    auto T = schreieder(n);
    const std::size_t dim = T.polytope.ambient_dim();
    std::set<IntHalfspace, decltype([](const IntHalfspace &a, const IntHalfspace &b) {
               return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
             })>
        got(T.polytope.chart_facets().begin(), T.polytope.chart_facets().end()), expect;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector a = scale(unit_vector(dim, i), 2);
      for (std::size_t k = 0; k < T.epsilons.size(); ++k)
        a[T.coordinate(k)] -= T.epsilons[k][i];
      expect.insert({a, 0});
    }
    for (std::size_t j = n; j < dim; ++j)
      expect.insert({unit_vector(dim, j), 0});
    IntVector top(dim);
    for (std::size_t i = 0; i < 2 * n; ++i)
      top[i] = -2;
    for (std::size_t k = 0; k < T.epsilons.size(); ++k) {
      int w = 0;
      for (int e : T.epsilons[k])
        w += e;
      top[T.coordinate(k)] = -(T.degree - w);
    }
    expect.insert({top, -2 * T.degree});
    CHECK(got.size() == expect.size());
    CHECK(std::equal(got.begin(), got.end(), expect.begin(), expect.end()));
  }

  auto order = default_epsilon_order(3);
  std::reverse(order.begin(), order.end());
  CHECK(schreieder(3, order).polytope.dim() == 10);
  order.pop_back();
  CHECK_THROWS_AS(schreieder(3, order), PreconditionViolation);
}

TEST_CASE("Schreieder simplices satisfy condition (M)") {
  // n = 2 has only the zero epsilon, so the normals 2e_i are not primitive and no torsion appears
  CHECK(class_group(schreieder(2).polytope).to_string() == "Z");
  for (std::size_t n : {3, 4}) {
    CAPTURE(n);
    auto S = schreieder(n);
    auto G = class_group(S.polytope);
    CHECK(G.free_rank == 1);
    CHECK(G.torsion == std::vector<Int>(n, 2));
    CHECK(G.ample.free == IntVector{2 * S.degree});
    CHECK(G.ample.torsion == std::vector<Int>(n, 0));
    CHECK(check_condition_m(S.polytope).holds);
    CHECK(containment_certificate(S.polytope, dilated_simplex(S.degree, S.polytope.ambient_dim()),
                                  AffineUnimodularMap::identity(S.polytope.ambient_dim()))
              .contained);
  }
}

TEST_CASE("double cones") {
  auto seg = LatticePolytope::hull({{-1}, {1}});
  auto oct = double_cone(seg, {{{0, 1, 0}, {0, -1, 0}}, {{0, 0, 1}, {0, 0, -1}}});
  CHECK(oct == LatticePolytope::hull(
                   {{-1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}));
  CHECK(double_cone(hpt(), {}) == hpt());
  const std::vector<ConePair> same_side{{{0, 1, 0}, {0, 1, 0}}, {{0, 0, 1}, {0, 0, -1}}};
  CHECK_THROWS_AS(double_cone(seg, same_side), PreconditionViolation);
  const std::vector<ConePair> short_pair{ConePair{IntVector{0, 1}, IntVector{0, -1, 0}}};
  CHECK_THROWS_AS(double_cone(seg, short_pair), DimensionMismatch);

  auto D = hpt_double_cone();
  CHECK(D.num_vertices() == 10);
  CHECK(D.dim() == 7);
  // the seed is the slice x6 = x7 = 0
  const auto H = hpt();
  for (const IntVector &v : H.vertices()) {
    IntVector w = v;
    w.push_back(0);
    w.push_back(0);
    CHECK(D.contains(w));
  }
  CHECK_FALSE(D.contains(IntVector{0, 0, 0, 0, 0, 1, 0}));
}

TEST_CASE("the (2,3) containment certificate") {
  auto D = hpt_double_cone();
  auto T = hpt_double_cone_map();
  CHECK(abs(determinant(T.linear())) == 1);
  CHECK(vertex_set(apply(T, D)) == std::set<IntVector>{{0, 0, 0, 0, 1, 0, 0},
                                                      {0, 0, 0, 0, 3, 0, 0},
                                                      {0, 1, 0, 0, 2, 0, 0},
                                                      {0, 0, 0, 0, 1, 1, 0},
                                                      {1, 0, 0, 0, 2, 0, 0},
                                                      {0, 0, 0, 0, 1, 0, 1},
                                                      {0, 0, 0, 2, 1, 0, 0},
                                                      {0, 2, 0, 0, 0, 2, 0},
                                                      {2, 0, 0, 1, 0, 0, 2},
                                                      {0, 0, 2, 1, 1, 0, 0}});
  auto target = simplex_product({{2, 3}, {3, 4}});
  auto c = containment_certificate(D, target, T);
  CHECK(c.contained);
  CHECK(c.violation.empty());

  // the translation applied after the linear part misses
  auto late = AffineUnimodularMap(T.linear(), unit_vector(7, 0));
  auto bad = containment_certificate(D, target, late);
  CHECK_FALSE(bad.contained);
  CHECK(bad.violation.find("violating") != std::string::npos);
  CHECK_FALSE(containment_certificate(D, target, AffineUnimodularMap::identity(7)).contained);
}

TEST_CASE("degree-preserving extensions") {
  auto S = schreieder(3);
  auto none = extend_schreieder(S, {});
  CHECK(none.polytope == S.polytope);

  auto one = extend_schreieder(S, {0});
  CHECK(one.polytope.ambient_dim() == 11);
  CHECK(one.polytope.dim() == 11);
  CHECK(containment_certificate(one.cone, dilated_simplex(5, 11), one.map).contained);
  CHECK_FALSE(
      containment_certificate(one.cone, dilated_simplex(4, 11), one.map).contained);

  auto steps = all_extension_steps(S);
  CHECK(steps.size() == 4);
  CHECK(Int(static_cast<long>(steps.size())) == sum_identity(3).lhs);
  auto full = extend_schreieder(S, steps);
  CHECK(full.polytope.dim() == 14);
  CHECK(containment_certificate(full.cone, dilated_simplex(5, 14), full.map).contained);
  Int top = 0;
  for (const IntVector &v : full.polytope.vertices())
    top = std::max(top, degree(v));
  CHECK(top == 5);

  auto more = steps;
  more.push_back(0);
  CHECK_THROWS_AS(extend_schreieder(S, more), PreconditionViolation);
  CHECK_THROWS_AS(extend_schreieder(S, {9}), PreconditionViolation);

  // the cone meets the old space in the simplex
  for (const IntVector &v : S.polytope.vertices()) {
    IntVector w = v;
    w.resize(14, 0);
    CHECK(full.cone.contains(w));
  }

  auto S4 = schreieder(4);
  auto F4 = extend_schreieder(S4, all_extension_steps(S4), {false});
  CHECK(F4.steps.size() == 12);
  CHECK(F4.generators.size() == S4.polytope.num_vertices() + 24);
  CHECK(containment_certificate(F4.generators, dilated_simplex(6, F4.map.dim()), F4.map).contained);
  CHECK_FALSE(containment_certificate(F4.generators, dilated_simplex(5, F4.map.dim()), F4.map).contained);
  CHECK(containment_certificate(full.generators, dilated_simplex(5, 14), full.map).contained);
}

TEST_CASE("sum identity") {
  for (std::size_t n = 2; n <= 12; ++n) {
    CAPTURE(n);
    auto s = sum_identity(n);
    CHECK(s.equal());
    // oracle: binomial form of the same sum
    Int b = 0;
    for (long k = 0; k <= static_cast<long>(n) - 2; ++k)
      b += oracle::binomial(static_cast<long>(n), k) * ((static_cast<long>(n) - k) / 2);
    CHECK(s.lhs == b);
  }
  CHECK(sum_identity(4).lhs == 12);
  CHECK(sum_identity(3).lhs == 4);
}

TEST_CASE("bounds tables") {
  auto rows = bounds_table(2, 8, BoundKind::Hypersurface);
  REQUIRE(rows.size() == 7);
  CHECK(rows[1].n == 3);
  CHECK(rows[1].degree == 5);
  CHECK(rows[1].N_min == 5);
  CHECK(rows[1].N_max == 13);
  CHECK(rows[1].baseline_N_max == 9);
  CHECK(rows[2].degree == 6);
  CHECK(rows[2].N_min == 10);
  CHECK(rows[2].N_max == 30);
  CHECK(rows[2].baseline_N_max == 18);
  for (const auto &r : rows)
    CHECK(r.r_max == r.r_max_formula_value);

  auto dc = bounds_table(2, 8, BoundKind::DoubleCover);
  CHECK(dc[2].degree == 6);
  CHECK(dc[2].r_max == 16 - 2 + 4 * 3 - 2);
  for (const auto &r : dc)
    CHECK(r.r_max == r.r_max_formula_value);

  auto grid = bounds_grid(BoundKind::Hypersurface, 36, 7);
  auto status = [&](long N, long d) {
    for (const auto &c : grid)
      if (c.N == N && c.degree == d)
        return c.status;
    FAIL("missing cell");
    return GridStatus::Open;
  };
  CHECK(status(9, 5) == GridStatus::Baseline);
  for (long N = 10; N <= 13; ++N)
    CHECK(status(N, 5) == GridStatus::New);
  CHECK(status(14, 5) == GridStatus::Open);
  CHECK(status(18, 6) == GridStatus::Baseline);
  CHECK(status(19, 6) == GridStatus::New);
  CHECK(status(30, 6) == GridStatus::New);
  CHECK(status(31, 6) == GridStatus::Open);
  CHECK(status(3, 3) == GridStatus::Open);
  // the baseline contains d >= log2(N) + 2
  for (const auto &c : grid)
    if ((Int(1) << static_cast<unsigned>(c.degree - 2)) >= c.N)
      CHECK(c.status == GridStatus::Baseline);
  for (const auto &c : bounds_grid(BoundKind::DoubleCover, 40, 8))
    CHECK(c.degree % 2 == 0);
}
