#include "doctest.h"
#include "oracle.hpp"

#include "toricsr/ledger.hpp"

using namespace toricsr;

namespace {

IntVector e(std::size_t n, std::size_t i, long k = 1) { return scale(unit_vector(n, i), k); }

LatticePolytope hpt() {
  const std::size_t n = 5;
  return LatticePolytope::hull({zero_vector(n), e(n, 0, 2), e(n, 1, 2), add(e(n, 1), e(n, 2, 2)),
                                add(e(n, 0), e(n, 3, 2)), add(add(e(n, 0), e(n, 1)), e(n, 4, 2))});
}

HeightFunction height_by(const LatticePolytope &P, const std::function<Rat(const IntVector &)> &f) {
  HeightFunction h;
  for (const IntVector &x : lattice_points(P))
    h.emplace(x, f(x));
  return h;
}

Subdivision figure_one() {
  auto P = dilated_simplex(4, 3);
  return regular_subdivision(
      P, height_by(P, [](const IntVector &x) { return Rat(abs(x[0] + x[1] + 2 * x[2] - 4)); }));
}

// Conv{2e1, e2, 3e2 + e3, 3e3 + e4, 3e4}
LatticePolytope quartic_double_solid() {
  return LatticePolytope::hull({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 3, 1, 0}, {0, 0, 3, 1}, {0, 0, 0, 3}});
}

Ledger point_ledger(long c) {
  Ledger L;
  L.dim = 2;
  LedgerEntry pt;
  pt.kind = TagKind::Rational;
  pt.label = "pt";
  pt.coefficient = c;
  L.entries.push_back(pt);
  return L;
}

} // namespace

TEST_CASE("cell classification") {
  SeedRegistry seeds;
  seeds.add("hpt", hpt(), "not stably rational");
  CHECK(classify_cell(dilated_simplex(1, 4), seeds).kind == TagKind::Rational);
  CHECK(classify_cell(dilated_simplex(2, 3), seeds).kind == TagKind::Rational);
  CHECK(classify_cell(LatticePolytope::hull({{0, 0, 0}, {5, 0, 0}}), seeds).justification ==
        "dimension at most 1");
  CHECK(classify_cell(dilated_simplex(4, 3), seeds).kind == TagKind::StronglyVarying);

  // a unimodular image of HPT placed in a bigger space
  std::vector<IntVector> moved;
  const auto H = hpt();
  for (const IntVector &v : H.vertices()) {
    IntVector w{v[0] + v[1], v[1], v[2] + 3, v[3] - v[0], v[4], 7};
    moved.push_back(w);
  }
  auto t = classify_cell(LatticePolytope::hull(moved), seeds);
  CHECK(t.kind == TagKind::SeedMatch);
  CHECK(t.seed_id == "hpt");
  CHECK(seeds.match(dilated_simplex(2, 5)) == std::nullopt);
}

TEST_CASE("ledger of the cut 4-dilated tetrahedron") {
  auto S = figure_one();
  auto L = volume_ledger(S, SeedRegistry{});
  // both halves are three-dimensional with an empty Fine interior, so they fold into the point class
  REQUIRE(L.entries.size() == 2);
  CHECK(L.point().coefficient == 2);
  CHECK(L.entries[1].coefficient == -1);
  CHECK(L.entries[1].kind == TagKind::StronglyVarying);
  CHECK(L.entries[1].representative.dim() == 2);
  CHECK(classify(L.entries[1].representative).interior_point_count == 1);
  std::size_t halves = 0;
  for (std::size_t c : L.point().cells)
    if (S.cells[c].dim == 3)
      ++halves;
  CHECK(halves == 2);
  CHECK(L.to_string() == "2*[pt] - 1*[class1]");
  CHECK(verdict(L).kind == VerdictKind::Obstructed);

  // keeping the halves as a class shows them unimodularly equivalent
  auto U = volume_ledger(S, SeedRegistry{}, Exec::Parallel, LedgerOptions{false});
  REQUIRE(U.entries.size() == 3);
  CHECK(U.point().coefficient == 0);
  CHECK(U.entries[1].kind == TagKind::StronglyVarying);
  CHECK(U.entries[1].coefficient == -1);
  CHECK(U.entries[2].kind == TagKind::Rational);
  CHECK(U.entries[2].coefficient == 2);
  CHECK(U.entries[2].cells.size() == 2);
  CHECK(verdict(U).kind == VerdictKind::Obstructed);
}

TEST_CASE("unobstructed ledgers") {
  auto P = dilated_simplex(2, 2);
  auto S = regular_subdivision(P, height_by(P, [](const IntVector &x) {
                                 return Rat(x[0] * x[0] + x[1] * x[1] + x[0] * x[1]);
                               }));
  REQUIRE(S.maximal_cells.size() == 4);
  auto L = volume_ledger(S, SeedRegistry{});
  CHECK(L.to_string() == "1*[pt]");
  CHECK(verdict(L).kind == VerdictKind::Unobstructed);
  CHECK(verdict(volume_ledger(S, SeedRegistry{}, Exec::Serial, LedgerOptions{false})).kind ==
        VerdictKind::Unobstructed);

  auto slab = LatticePolytope::hull({{0, 0, 0}, {3, 0, 0}, {0, 4, 0}, {0, 0, 1}, {2, 2, 1}});
  auto T = regular_subdivision(slab, height_by(slab, [](const IntVector &) { return Rat(0); }));
  CHECK(verdict(volume_ledger(T, SeedRegistry{})).kind == VerdictKind::Unobstructed);

  CHECK_THROWS_AS(volume_ledger(trivial_subdivision(P), SeedRegistry{}), PreconditionViolation);
}

TEST_CASE("segments count their points") {
  auto seg = LatticePolytope::hull({{0}, {3}});
  auto L = volume_ledger(regular_subdivision(seg, height_by(seg, [](const IntVector &) {
                                               return Rat(0);
                                             })),
                         SeedRegistry{});
  CHECK(L.point().coefficient == 3);
  CHECK(verdict(L).kind == VerdictKind::Obstructed);
}

TEST_CASE("verdict bookkeeping") {
  CHECK(verdict(point_ledger(1)).kind == VerdictKind::Unobstructed);
  CHECK(verdict(point_ledger(0)).kind == VerdictKind::Obstructed);

  auto L = point_ledger(1);
  LedgerEntry u;
  u.kind = TagKind::Unknown;
  u.label = "class1";
  u.coefficient = 0;
  L.entries.push_back(u);
  CHECK(verdict(L).kind == VerdictKind::Unobstructed);
  L.entries.back().coefficient = 1;
  CHECK(verdict(L).kind == VerdictKind::Inconclusive);
  LedgerEntry s;
  s.kind = TagKind::StronglyVarying;
  s.label = "class2";
  s.coefficient = -1;
  L.entries.push_back(s);
  auto v = verdict(L);
  CHECK(v.kind == VerdictKind::Obstructed);
  CHECK(v.justification.size() == 1);
}

TEST_CASE("all-rational ledgers of hollow polytopes are a point") {
  oracle::Gen g(12);
  int checked = 0;
  for (int t = 0; t < 60 && checked < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.uniform(2, 3));
    auto P = LatticePolytope::hull(
        g.full_dim_points(n, static_cast<std::size_t>(g.uniform(static_cast<long>(n) + 1, 6)), -1, 2));
    if (!classify(P).is_hollow)
      continue;
    auto S = regular_subdivision(P, height_by(P, [&](const IntVector &) { return Rat(g.uniform(0, 3)); }));
    auto L = volume_ledger(S, SeedRegistry{});
    bool all_rational = L.entries.size() == 1;
    if (all_rational) {
      CHECK(L.point().coefficient == 1);
      ++checked;
    }
    // grouping never merges different fingerprints
    for (std::size_t k = 1; k < L.entries.size(); ++k)
      for (std::size_t c : L.entries[k].cells)
        CHECK(fingerprint(normalize_full_dimensional(S.cells[c].polytope).polytope) ==
              L.entries[k].fingerprint);
  }
  CHECK(checked >= 10);
}

TEST_CASE("pulling inside rational cells keeps an obstruction") {
  oracle::Gen g(31);
  auto P = dilated_simplex(3, 2);
  for (int t = 0; t < 8; ++t) {
    auto S = regular_subdivision(P, height_by(P, [&](const IntVector &) { return Rat(g.uniform(0, 3)); }));
    auto before = verdict(volume_ledger(S, SeedRegistry{})).kind;
    for (const auto &C : S.maximal_cells) {
      if (classify_cell(C, SeedRegistry{}).kind != TagKind::Rational)
        continue;
      for (const IntVector &p : lattice_points(C)) {
        bool is_vertex = std::find(C.vertices().begin(), C.vertices().end(), p) != C.vertices().end();
        if (is_vertex)
          continue;
        auto R = pulling_refinement(S, p);
        if (before == VerdictKind::Obstructed)
          CHECK(verdict(volume_ledger(R, SeedRegistry{})).kind == VerdictKind::Obstructed);
      }
    }
  }
}

TEST_CASE("dimension four pipeline") {
  auto delta = quartic_double_solid();
  REQUIRE(delta.dim() == 4);
  // (0,1,1,1) is a non-vertex lattice point; only the empty Fine interior matters here
  CHECK_FALSE(classify(delta).is_empty_simplex);
  CHECK(fine_interior(delta).empty());
  SeedRegistry seeds;
  seeds.add("quartic-double-solid", delta, "very general quartic double solid");
  auto Delta = dilated_simplex(4, 4);
  auto r = dim4_pipeline(Delta, delta, seeds);
  CHECK(r.verdict.kind == VerdictKind::Obstructed);
  if (r.ledger) {
    MESSAGE(r.ledger->to_string());
    REQUIRE(r.subdivision);
    CHECK(r.subdivision->find_cell(delta));
  }

  auto face = LatticePolytope::hull({{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  SeedRegistry fs;
  fs.add("face", face, "test");
  CHECK_THROWS_AS(dim4_pipeline(Delta, face, fs), PreconditionViolation);
  CHECK_THROWS_AS(dim4_pipeline(Delta, delta, SeedRegistry{}), PreconditionViolation);
}
