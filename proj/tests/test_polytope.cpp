#include "doctest.h"
#include "oracle.hpp"

#include "toricsr/polytope.hpp"

#include <set>

using namespace toricsr;

namespace {

IntVector e(std::size_t n, std::size_t i, long k = 1) { return scale(unit_vector(n, i), k); }

LatticePolytope hpt() {
  const std::size_t n = 5;
  return LatticePolytope::hull({zero_vector(n), e(n, 0, 2), e(n, 1, 2), add(e(n, 1), e(n, 2, 2)),
                                add(e(n, 0), e(n, 3, 2)), add(add(e(n, 0), e(n, 1)), e(n, 4, 2))});
}

LatticePolytope tpq(long p, long q) {
  return LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {p, q, 1}});
}

std::set<IntVector> as_set(const std::vector<IntVector> &v) { return {v.begin(), v.end()}; }

LatticePolytope random_polytope(oracle::Gen &g, std::size_t n) {
  return LatticePolytope::hull(
      g.full_dim_points(n, static_cast<std::size_t>(g.uniform(static_cast<long>(n) + 1, 8)), -3, 3));
}

} // namespace

TEST_CASE("hull") {
  auto sq = LatticePolytope::hull({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}});
  CHECK(sq.num_vertices() == 4);
  CHECK(sq.dim() == 2);
  CHECK(sq.vertices().front() == IntVector{0, 0});

  auto h = hpt();
  CHECK(h.num_vertices() == 6);
  CHECK(h.dim() == 5);
  CHECK(h.is_simplex());

  auto seg = LatticePolytope::hull({{0, 0}, {1, 0}, {2, 0}});
  CHECK(seg.dim() == 1);
  CHECK(seg.vertices() == std::vector<IntVector>{{0, 0}, {2, 0}});

  CHECK_THROWS_AS(LatticePolytope::hull({{0, 0}, {1, 0, 0}}), DimensionMismatch);
  CHECK_THROWS_AS(LatticePolytope::hull({}), DegenerateInput);
}

TEST_CASE("hull matches the subset oracle") {
  oracle::Gen g(101);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(g.uniform(2, 4));
    auto pts = g.full_dim_points(n, static_cast<std::size_t>(g.uniform(n + 1, 9)), -3, 3);
    auto P = LatticePolytope::hull(pts);
    CHECK(as_set(P.vertices()) == as_set(oracle::vertices(pts)));
    std::set<oracle::Halfspace> fs;
    for (const auto &h : P.chart_facets())
      fs.insert({h.normal, h.offset});
    CHECK(fs == oracle::facets(pts));
  }
}

TEST_CASE("facets and ord") {
  auto S = dilated_simplex(4, 3);
  RationalPolytope F = facets(S);
  REQUIRE(F.halfspaces().size() == 4);
  std::vector<Int> ords;
  for (const auto &h : F.halfspaces())
    ords.push_back(ord(S, h.normal));
  std::sort(ords.begin(), ords.end(), [](const Int &a, const Int &b) { return a > b; });
  CHECK(ords == std::vector<Int>{0, 0, 0, -4});
  for (const auto &h : F.halfspaces())
    CHECK(h.offset == ord(S, h.normal));

  auto seg = dilated_simplex(5, 1);
  F = facets(seg);
  REQUIRE(F.halfspaces().size() == 2);
  CHECK(F.halfspaces()[0].normal == IntVector{-1});
  CHECK(F.halfspaces()[0].offset == -5);
  CHECK(F.halfspaces()[1].normal == IntVector{1});
  CHECK(F.halfspaces()[1].offset == 0);

  CHECK(ord(S, IntVector{1, 0, 0}) == 0);
  CHECK(ord(S, IntVector{-1, -1, -1}) == -4);
  CHECK(ord(S, IntVector{0, 0, 0}) == 0);
}

TEST_CASE("lattice points") {
  auto S = dilated_simplex(4, 3);
  CHECK(lattice_points(S, true) == std::vector<IntVector>{{1, 1, 1}});
  CHECK(lattice_points(dilated_simplex(5, 3), true).size() == 4);
  CHECK(as_set(lattice_points(tpq(1, 2))) == as_set(tpq(1, 2).vertices()));
  // serial and parallel agree
  CHECK(lattice_points(dilated_simplex(7, 4), false, kDefaultPointLimit, Exec::Serial) ==
        lattice_points(dilated_simplex(7, 4), false, kDefaultPointLimit, Exec::Parallel));
  CHECK_THROWS_AS(lattice_points(dilated_simplex(30, 4), false, 1000), ResourceLimitExceeded);
}

TEST_CASE("lattice points match the box-scan oracle") {
  oracle::Gen g(202);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(g.uniform(1, 4));
    auto pts = g.full_dim_points(n, static_cast<std::size_t>(g.uniform(n + 1, 8)), -4, 4);
    auto P = LatticePolytope::hull(pts);
    CHECK(lattice_points(P) == oracle::lattice_points(pts, false));
    CHECK(lattice_points(P, true) == oracle::lattice_points(pts, true));
    // vertex recovery
    CHECK(LatticePolytope::hull(lattice_points(P)) == P);
  }
}

TEST_CASE("lower-dimensional polytopes") {
  auto tri = LatticePolytope::hull({{0, 0, 0}, {3, 0, 0}, {0, 3, 0}});
  CHECK(tri.dim() == 2);
  auto N = normalize_full_dimensional(tri);
  CHECK(N.polytope.ambient_dim() == 2);
  CHECK(lattice_points(N.polytope).size() == 10);
  CHECK(lattice_points(tri).size() == 10);
  CHECK(lattice_points(tri, true) == std::vector<IntVector>{{1, 1, 0}});

  auto seg = LatticePolytope::hull({{0, 0}, {2, 2}});
  N = normalize_full_dimensional(seg);
  CHECK(N.polytope.ambient_dim() == 1);
  CHECK(lattice_points(N.polytope).size() == 3);
  CHECK(lattice_points(seg).size() == 3);
  CHECK(lattice_width(seg).width == 2);
  CHECK(normalized_volume(seg) == 2);

  auto sq = dilated_simplex(2, 2);
  N = normalize_full_dimensional(sq);
  CHECK(N.chart.is_identity());
  CHECK(N.polytope == sq);

  // ambient halfspaces describe the same set
  RationalPolytope R = facets(tri);
  CHECK(as_set(R.lattice_points()) == as_set(lattice_points(tri)));
  CHECK(R.dim() == 2);
}

TEST_CASE("lower-dimensional embeddings preserve invariants") {
  oracle::Gen g(303);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t k = static_cast<std::size_t>(g.uniform(1, 3));
    auto P = random_polytope(g, k);
    // embed Z^k into Z^(k+2) via a random unimodular map of the padded space
    std::size_t n = k + 2;
    auto U = g.unimodular(n, 12);
    IntVector shift = g.point(n, -3, 3);
    std::vector<IntVector> img;
    for (const auto &v : P.vertices()) {
      IntVector w = v;
      w.resize(n);
      IntVector x(n);
      for (std::size_t i = 0; i < n; ++i)
        x[i] = oracle::dotp(U[i], w) + shift[i];
      img.push_back(x);
    }
    auto Q = LatticePolytope::hull(img);
    CHECK(Q.dim() == P.dim());
    CHECK(lattice_points(Q).size() == lattice_points(P).size());
    CHECK(lattice_points(Q, true).size() == lattice_points(P, true).size());
    CHECK(lattice_width(Q).width == lattice_width(P).width);
    CHECK(normalized_volume(Q) == normalized_volume(P));
    CHECK(face_vector(Q) == face_vector(P));
  }
}

TEST_CASE("faces") {
  auto sq = LatticePolytope::hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(faces(sq, 1).size() == 4);
  CHECK(faces(dilated_simplex(4, 3), 2).size() == 4);
  for (std::size_t n = 1; n <= 5; ++n) {
    auto S = dilated_simplex(1, n);
    for (std::size_t k = 0; k <= n; ++k)
      CHECK(Int(faces(S, static_cast<int>(k)).size()) == oracle::binomial(long(n) + 1, long(k) + 1));
  }
  auto cube = product(product(dilated_simplex(1, 1), dilated_simplex(1, 1)), dilated_simplex(1, 1));
  CHECK(face_vector(cube) == std::vector<std::size_t>{8, 12, 6, 1});
  CHECK_THROWS_AS(faces(sq, 3), PreconditionViolation);
}

TEST_CASE("Euler relation on random polytopes") {
  oracle::Gen g(404);
  for (int trial = 0; trial < 60; ++trial) {
    auto P = random_polytope(g, static_cast<std::size_t>(g.uniform(1, 4)));
    long chi = 0;
    auto f = face_vector(P);
    for (std::size_t k = 0; k < f.size(); ++k)
      chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(f[k]);
    CHECK(chi == 1);
    // every face is the tight set of its own supporting facets
    for (int k = 0; k <= P.dim(); ++k)
      for (const auto &F : faces(P, k))
        CHECK(F.dim() == k);
  }
}

TEST_CASE("lattice width") {
  CHECK(lattice_width(tpq(3, 7)).width == 1);
  auto S = dilated_simplex(5, 3);
  auto w = lattice_width(S);
  CHECK(w.width == 5);
  CHECK(w.certificate == IntVector{1, 0, 0});
  CHECK(lattice_width(dilated_simplex(1, 1)).width == 1);
  CHECK_THROWS_AS(lattice_width(LatticePolytope::hull({{1, 2}})), DegenerateInput);
  // the unique width-4 empty 4-simplex
  auto gt = LatticePolytope::hull({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {6, 14, 17, 65}});
  CHECK(lattice_width(gt).width == 4);
}

TEST_CASE("lattice width matches the dual-box oracle") {
  oracle::Gen g(505);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(g.uniform(1, 3));
    auto pts = g.full_dim_points(n, static_cast<std::size_t>(g.uniform(n + 1, 7)), -4, 4);
    auto P = LatticePolytope::hull(pts);
    auto w = lattice_width(P);
    // widths are at most 8 here and every functional with width <= 8 lies in [-8, 8]^n
    CHECK(w.width == oracle::width(pts, 8));
    CHECK(width_along(P, w.certificate) == w.width);
    CHECK(content(w.certificate) == 1);
    CHECK(lattice_width(P, Exec::Serial).width == w.width);
    CHECK(lattice_width(P, Exec::Serial).certificate == w.certificate);
  }
}

TEST_CASE("lattice width is invariant under unimodular maps") {
  oracle::Gen g(606);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(g.uniform(2, 4));
    auto P = random_polytope(g, n);
    auto U = g.unimodular(n, 10);
    AffineUnimodularMap T(IntMatrix::from_rows(U, n), g.point(n, -5, 5));
    auto Q = apply(T, P);
    CHECK(lattice_width(Q).width == lattice_width(P).width);
  }
}

TEST_CASE("classification") {
  auto kt = LatticePolytope::hull({{2, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 3, 1, 0, 0}, {0, 0, 3, 1, 0}, {0, 0, 0, 3, 1}, {0, 0, 0, 0, 3}});
  auto c = classify(kt);
  CHECK(c.is_empty_simplex);
  CHECK(c.is_relatively_empty);
  CHECK(c.is_hollow);

  auto gt = LatticePolytope::hull({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {6, 14, 17, 65}});
  CHECK(classify(gt).is_empty_simplex);

  c = classify(dilated_simplex(3, 2));
  CHECK_FALSE(c.is_hollow);
  CHECK(c.interior_point_count == 1);

  // an empty square is not relatively empty
  c = classify(LatticePolytope::hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(c.is_empty_polytope);
  CHECK_FALSE(c.is_relatively_empty);
  CHECK(c.is_hollow);
}

TEST_CASE("classification chain on random polytopes") {
  oracle::Gen g(707);
  for (int trial = 0; trial < 80; ++trial) {
    auto P = random_polytope(g, static_cast<std::size_t>(g.uniform(1, 4)));
    auto c = classify(P);
    CHECK(P.num_vertices() <= c.lattice_point_count);
    if (c.is_empty_simplex)
      CHECK(c.is_relatively_empty);
    if (c.is_relatively_empty)
      CHECK(c.is_hollow);
  }
}

TEST_CASE("normalized volume") {
  CHECK(normalized_volume(dilated_simplex(4, 3)) == 64);
  CHECK(normalized_volume(LatticePolytope::hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}})) == 2);
  CHECK(normalized_volume(tpq(1, 2)) == 2);
}

TEST_CASE("unimodular equivalence") {
  auto S = dilated_simplex(4, 3);
  auto r = unimodular_equivalence(S, translate(S, IntVector{1, 0, 0}));
  REQUIRE(r.status == EquivalenceStatus::Found);
  CHECK(r.map->translation() == IntVector{1, 0, 0});
  CHECK(r.map->linear() == IntMatrix::identity(3));

  auto red = LatticePolytope::hull({{0, 0, 0}, {0, 0, 2}, {4, 0, 0}, {0, 4, 0}});
  auto blue = LatticePolytope::hull({{0, 0, 2}, {0, 0, 4}, {4, 0, 0}, {0, 4, 0}});
  r = unimodular_equivalence(red, blue);
  REQUIRE(r.status == EquivalenceStatus::Found);
  CHECK(maps_onto(*r.map, red, blue));
  AffineUnimodularMap witness(IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {-1, -1, -1}}), IntVector{0, 0, 4});
  CHECK(maps_onto(witness, red, blue));
  CHECK(unimodular_equivalence(blue, red).status == EquivalenceStatus::Found);

  r = unimodular_equivalence(dilated_simplex(2, 2), LatticePolytope::hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(r.status == EquivalenceStatus::NotEquivalent);
}

TEST_CASE("unimodular equivalence on random images") {
  oracle::Gen g(808);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(g.uniform(2, 4));
    auto P = random_polytope(g, n);
    AffineUnimodularMap T(IntMatrix::from_rows(g.unimodular(n, 10), n), g.point(n, -5, 5));
    auto Q = apply(T, P);
    auto r = unimodular_equivalence(P, Q);
    REQUIRE(r.status == EquivalenceStatus::Found);
    CHECK(apply(*r.map, P) == Q);
    CHECK(fingerprint(P) == fingerprint(Q));
    CHECK(unimodular_equivalence(Q, P).status == EquivalenceStatus::Found);
  }
}

TEST_CASE("polytope algebra") {
  auto D2 = dilated_simplex(1, 2);
  CHECK(dilate(D2, 4) == dilated_simplex(4, 2));
  auto prod = product(dilated_simplex(2, 3), dilated_simplex(3, 4));
  CHECK(prod.dim() == 7);
  CHECK(prod.num_vertices() == 20);
  auto U = convex_union(D2, translate(D2, IntVector{3, 1}));
  for (const auto &v : D2.vertices())
    CHECK(U.contains(v));
  CHECK_THROWS_AS(convex_union(D2, dilated_simplex(1, 3)), DimensionMismatch);
}

TEST_CASE("rational polytopes") {
  // 2x >= 1, x <= 2, y >= 0, x + y <= 3
  RationalPolytope R(2, {{{2, 0}, Rat(1)}, {{-1, 0}, Rat(-2)}, {{0, 1}, Rat(0)}, {{-1, -1}, Rat(-3)}, {{-2, -2}, Rat(-8)}});
  CHECK(R.halfspaces().size() == 4);
  CHECK(R.dim() == 2);
  CHECK_FALSE(R.is_lattice());
  CHECK(R.vertices().front() == RatVector{Rat(1, 2), Rat(0)});
  CHECK(R.lattice_points().size() == 5);
  RationalPolytope E(1, {{{1}, Rat(1, 2)}, {{-1}, Rat(-1, 3)}});
  CHECK(E.empty());
  CHECK_FALSE(E.has_lattice_point());
  CHECK_THROWS_AS(RationalPolytope(1, {{{1}, Rat(0)}}), UnsupportedInput);
}
