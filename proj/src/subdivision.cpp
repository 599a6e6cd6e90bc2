#include "toricsr/subdivision.hpp"

#include <algorithm>
#include <set>

namespace toricsr {

namespace {

using VertexKey = std::vector<IntVector>;

VertexKey key_of(const LatticePolytope &P) {
  VertexKey k = P.vertices();
  std::sort(k.begin(), k.end(), lex_less);
  return k;
}

bool cell_less(const Cell &a, const Cell &b) {
  if (a.dim != b.dim)
    return a.dim < b.dim;
  return key_of(a.polytope) < key_of(b.polytope);
}

// Vertices of P indexed by idx.
std::vector<IntVector> pick(const LatticePolytope &P, const std::vector<std::size_t> &idx) {
  std::vector<IntVector> out;
  for (std::size_t i : idx)
    out.push_back(P.vertices()[i]);
  return out;
}

bool in_boundary(const LatticePolytope &support, const LatticePolytope &c) {
  if (c.dim() == support.dim())
    return false;
  std::vector<IntVector> ys;
  for (const IntVector &v : c.vertices())
    ys.push_back(support.chart().forward(v));
  for (const IntHalfspace &h : support.chart_facets())
    if (std::all_of(ys.begin(), ys.end(), [&](const IntVector &y) { return dot(h.normal, y) == h.offset; }))
      return true;
  return false;
}

struct Affine {
  RatVector grad; // in support chart coordinates
  Rat constant;
  Rat at(const IntVector &y) const {
    Rat s = constant;
    for (std::size_t i = 0; i < y.size(); ++i)
      s += grad[i] * y[i];
    return s;
  }
};

// Affine function on the support chart interpolating the heights at the given points, if the
// heights are affine there. The points must span the chart.
std::optional<Affine> affine_fit(const std::vector<IntVector> &ys, const std::vector<Rat> &vals) {
  const std::size_t k = ys.front().size();
  std::vector<IntVector> rows;
  for (const IntVector &y : ys) {
    IntVector r = y;
    r.push_back(1);
    rows.push_back(std::move(r));
  }
  auto idx = independent_rows(rows);
  if (idx.size() != k + 1)
    throw PreconditionViolation("cell is not full-dimensional in the support");
  std::vector<IntVector> sub_rows;
  RatVector rhs;
  for (std::size_t i : idx) {
    sub_rows.push_back(rows[i]);
    rhs.push_back(vals[i]);
  }
  RatVector sol = solve(IntMatrix::from_rows(sub_rows, k + 1), rhs);
  Affine a;
  a.grad.assign(sol.begin(), sol.begin() + static_cast<long>(k));
  a.constant = sol[k];
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (a.at(ys[i]) != vals[i])
      return std::nullopt;
  return a;
}

Rat height_at(const HeightFunction &h, const IntVector &x) {
  auto it = h.find(x);
  if (it == h.end())
    throw PreconditionViolation("height function is missing the point " + to_string(x));
  Rat v = it->second;
  v.canonicalize();
  return v;
}

std::optional<Affine> cell_affine(const LatticePolytope &support, const LatticePolytope &cell,
                                  const HeightFunction &h) {
  std::vector<IntVector> ys;
  std::vector<Rat> vals;
  for (const IntVector &v : cell.vertices()) {
    ys.push_back(support.chart().forward(v));
    vals.push_back(height_at(h, v));
  }
  return affine_fit(ys, vals);
}

std::set<VertexKey> maximal_keys(const std::vector<LatticePolytope> &cells) {
  std::set<VertexKey> out;
  for (const auto &c : cells)
    out.insert(key_of(c));
  return out;
}

std::vector<RatHalfspace> to_rat_halfspaces(const std::vector<IntHalfspace> &hs) {
  std::vector<RatHalfspace> out;
  for (const IntHalfspace &h : hs)
    out.push_back(RatHalfspace{h.normal, Rat(h.offset)});
  return out;
}

// Indices of the vertices of P in the rational polytope I, if I is a face of P.
bool is_face_of(const LatticePolytope &P, const RationalPolytope &I) {
  std::vector<std::size_t> idx;
  std::set<RatVector> in;
  for (std::size_t i = 0; i < P.num_vertices(); ++i)
    if (I.contains(P.vertices()[i])) {
      idx.push_back(i);
      in.insert(to_rat(P.vertices()[i]));
    }
  for (const RatVector &v : I.vertices())
    if (!in.count(v))
      return false;
  const auto &levels = P.face_sets();
  const auto &level = levels[static_cast<std::size_t>(I.dim())];
  return std::find(level.begin(), level.end(), idx) != level.end();
}

} // namespace

std::optional<std::size_t> Subdivision::find_cell(const LatticePolytope &c) const {
  VertexKey k = key_of(c);
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].dim == c.dim() && key_of(cells[i].polytope) == k)
      return i;
  return std::nullopt;
}

Subdivision make_subdivision(const LatticePolytope &support, std::vector<LatticePolytope> maximal,
                             std::optional<HeightFunction> heights) {
  Subdivision S;
  S.support = support;
  S.heights = std::move(heights);
  std::sort(maximal.begin(), maximal.end(),
            [](const LatticePolytope &a, const LatticePolytope &b) { return key_of(a) < key_of(b); });
  S.maximal_cells = std::move(maximal);

  std::map<VertexKey, LatticePolytope> all;
  for (const LatticePolytope &C : S.maximal_cells) {
    const auto &levels = C.face_sets();
    for (std::size_t k = 0; k < levels.size(); ++k)
      for (const auto &f : levels[k]) {
        auto verts = pick(C, f);
        std::sort(verts.begin(), verts.end(), lex_less);
        if (!all.count(verts))
          all.emplace(verts, k + 1 == levels.size() ? C : LatticePolytope::hull(verts));
      }
  }
  for (auto &[k, P] : all)
    S.cells.push_back(Cell{P, P.dim(), in_boundary(support, P)});
  std::sort(S.cells.begin(), S.cells.end(), cell_less);

  std::map<VertexKey, std::size_t> index;
  for (std::size_t i = 0; i < S.cells.size(); ++i)
    index.emplace(key_of(S.cells[i].polytope), i);
  for (std::size_t j = 0; j < S.cells.size(); ++j) {
    const LatticePolytope &C = S.cells[j].polytope;
    if (C.dim() < 1)
      continue;
    for (const auto &f : C.facet_vertices()) {
      auto verts = pick(C, f);
      std::sort(verts.begin(), verts.end(), lex_less);
      S.facet_of.emplace_back(index.at(verts), j);
    }
  }
  std::sort(S.facet_of.begin(), S.facet_of.end());
  return S;
}

Subdivision trivial_subdivision(const LatticePolytope &P) { return make_subdivision(P, {P}); }

Subdivision regular_subdivision(const LatticePolytope &P, const HeightFunction &h) {
  const auto pts = lattice_points(P);
  const std::size_t k = static_cast<std::size_t>(P.dim());
  if (k == 0) {
    HeightFunction hh{{pts.front(), height_at(h, pts.front())}};
    return make_subdivision(P, {P}, hh);
  }
  RatVector vals;
  for (const IntVector &x : pts)
    vals.push_back(height_at(h, x));
  const Int L = lcm_of_denominators(vals);
  std::vector<IntVector> lifted;
  Int top = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    IntVector y = P.chart().forward(pts[i]);
    Rat z = vals[i] * L;
    y.push_back(z.get_num());
    top = i == 0 ? y.back() : std::max(top, y.back());
    lifted.push_back(std::move(y));
  }
  // A point above the envelope over a vertex makes the lift full-dimensional without adding
  // lower faces.
  IntVector apex = P.chart().forward(P.vertices().front());
  apex.push_back(top + 1);
  auto all = lifted;
  all.push_back(apex);
  LatticePolytope H = LatticePolytope::hull(all);

  std::vector<LatticePolytope> cells;
  std::set<VertexKey> seen;
  for (const IntHalfspace &f : H.chart_facets()) {
    if (f.normal[k] <= 0)
      continue;
    std::vector<IntVector> cell;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (dot(f.normal, lifted[i]) == f.offset)
        cell.push_back(P.chart().backward(IntVector(lifted[i].begin(), lifted[i].begin() + static_cast<long>(k))));
    LatticePolytope C = LatticePolytope::hull(cell);
    if (seen.insert(key_of(C)).second)
      cells.push_back(std::move(C));
  }
  HeightFunction hh;
  for (std::size_t i = 0; i < pts.size(); ++i)
    hh.emplace(pts[i], vals[i]);
  return make_subdivision(P, std::move(cells), std::move(hh));
}

Subdivision pulling_refinement(const Subdivision &S, const LatticePoint &p) {
  const LatticePolytope &P = S.support;
  if (!P.contains(p))
    throw PreconditionViolation("pulled point " + to_string(p) + " is outside the polytope");
  std::vector<LatticePolytope> cells;
  std::set<VertexKey> seen;
  auto add_cell = [&](LatticePolytope C) {
    if (seen.insert(key_of(C)).second)
      cells.push_back(std::move(C));
  };
  for (const LatticePolytope &C : S.maximal_cells) {
    if (!C.contains(p)) {
      add_cell(C);
      continue;
    }
    const IntVector y = C.chart().forward(p);
    for (std::size_t f = 0; f < C.chart_facets().size(); ++f) {
      const IntHalfspace &h = C.chart_facets()[f];
      if (dot(h.normal, y) == h.offset)
        continue;
      auto verts = pick(C, C.facet_vertices()[f]);
      verts.push_back(p);
      add_cell(LatticePolytope::hull(verts));
    }
    if (C.dim() == 0)
      add_cell(C);
  }

  std::optional<HeightFunction> heights;
  if (S.heights) {
    const std::set<VertexKey> want = maximal_keys(cells);
    std::optional<Rat> envelope;
    for (const LatticePolytope &C : S.maximal_cells)
      if (C.contains(p)) {
        auto a = cell_affine(P, C, *S.heights);
        if (!a)
          throw PreconditionViolation("height function is not affine on a cell");
        envelope = a->at(P.chart().forward(p));
        break;
      }
    Rat eps = 1;
    for (int k = 0; k < 64 && !heights; ++k) {
      HeightFunction h = *S.heights;
      h[p] = *envelope - eps;
      if (maximal_keys(regular_subdivision(P, h).maximal_cells) == want)
        heights = std::move(h);
      eps /= 2;
    }
    if (!heights)
      throw InternalConsistencyError("no pulled height reproduces the pulling refinement");
  }
  Subdivision R = make_subdivision(P, std::move(cells), std::move(heights));
  R.pulled = S.pulled;
  R.pulled.push_back(p);
  return R;
}

Rat squared_distance(const LatticePolytope &delta, const RatVector &x) {
  if (x.size() != delta.ambient_dim())
    throw DimensionMismatch("point and polytope live in different spaces");
  auto dist2 = [&](const RatVector &q) {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += (x[i] - q[i]) * (x[i] - q[i]);
    return s;
  };
  std::optional<Rat> best;
  const auto &levels = delta.face_sets();
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (const auto &f : levels[k]) {
      auto verts = pick(delta, f);
      RatVector q;
      if (k == 0) {
        q = to_rat(verts.front());
      } else {
        std::vector<IntVector> diffs;
        for (std::size_t i = 1; i < verts.size(); ++i)
          diffs.push_back(sub(verts[i], verts.front()));
        std::vector<IntVector> B;
        for (std::size_t i : independent_rows(diffs))
          B.push_back(diffs[i]);
        IntMatrix G(B.size(), B.size());
        RatVector rhs(B.size());
        RatVector rel = x;
        for (std::size_t c = 0; c < rel.size(); ++c)
          rel[c] -= verts.front()[c];
        for (std::size_t i = 0; i < B.size(); ++i) {
          for (std::size_t j = 0; j < B.size(); ++j)
            G(i, j) = dot(B[i], B[j]);
          for (std::size_t c = 0; c < rel.size(); ++c)
            rhs[i] += rel[c] * B[i][c];
        }
        RatVector lam = solve(G, rhs);
        q = to_rat(verts.front());
        for (std::size_t i = 0; i < B.size(); ++i)
          for (std::size_t c = 0; c < q.size(); ++c)
            q[c] += lam[i] * B[i][c];
        if (!delta.contains(q))
          continue;
      }
      Rat d = dist2(q);
      if (!best || d < *best)
        best = d;
    }
  return *best;
}

HeightFunction distance_height(const LatticePolytope &P, const LatticePolytope &delta) {
  for (const IntVector &v : delta.vertices())
    if (!P.contains(v))
      throw PreconditionViolation("the inner polytope is not contained in the outer one");
  HeightFunction h;
  for (const IntVector &x : lattice_points(P))
    h.emplace(x, squared_distance(delta, to_rat(x)));
  return h;
}

HeightFunction staged_distance_height(const LatticePolytope &P, const LatticePolytope &outer,
                                      const std::vector<std::size_t> &sliced_coords) {
  const std::size_t n = outer.ambient_dim();
  std::vector<LatticePolytope> slices{outer};
  std::vector<RatHalfspace> hs = to_rat_halfspaces(ambient_halfspaces(outer));
  for (std::size_t c : sliced_coords) {
    if (c >= n)
      throw PreconditionViolation("sliced coordinate out of range");
    hs.push_back(RatHalfspace{unit_vector(n, c), Rat(0)});
    hs.push_back(RatHalfspace{neg(unit_vector(n, c)), Rat(0)});
    RationalPolytope slice(n, hs);
    auto lp = slice.to_lattice_polytope();
    if (slice.empty() || !lp)
      throw PreconditionViolation("inconsistent slice chain: slice " +
                                  std::to_string(slices.size()) +
                                  " is empty or not a lattice polytope");
    slices.push_back(std::move(*lp));
  }
  HeightFunction h;
  for (const IntVector &x : lattice_points(P)) {
    Rat s = 0;
    for (const LatticePolytope &a : slices)
      s += squared_distance(a, to_rat(x));
    h.emplace(x, s);
  }
  return h;
}

ValidationReport validate(const Subdivision &S, Exec exec) {
  ValidationReport rep;
  const LatticePolytope &P = S.support;
  const auto &M = S.maximal_cells;

  Int vol = 0;
  for (const LatticePolytope &C : M) {
    if (C.dim() != P.dim()) {
      rep.cover = false;
      rep.problems.push_back("maximal cell of dimension " + std::to_string(C.dim()));
      continue;
    }
    for (const IntVector &v : C.vertices())
      if (!P.contains(v)) {
        rep.cover = false;
        rep.problems.push_back("cell vertex " + to_string(v) + " outside the polytope");
      }
    vol += normalized_volume(C);
  }
  if (vol != normalized_volume(P)) {
    rep.cover = false;
    rep.problems.push_back("cell volumes sum to " + to_string(vol) + ", polytope volume is " +
                           to_string(normalized_volume(P)));
  }
  for (const LatticePolytope &C : M)
    for (const IntVector &v : C.vertices())
      if (!P.chart().in_span(v)) {
        rep.integral = false;
        rep.problems.push_back("cell vertex " + to_string(v) + " off the affine lattice");
      }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = i + 1; j < M.size(); ++j)
      pairs.emplace_back(i, j);
  std::vector<std::string> pair_problems(pairs.size());
  const long np = static_cast<long>(pairs.size());
  auto check_pair = [&](long t) {
    auto [i, j] = pairs[static_cast<std::size_t>(t)];
    auto hs = to_rat_halfspaces(ambient_halfspaces(M[i]));
    auto hj = to_rat_halfspaces(ambient_halfspaces(M[j]));
    hs.insert(hs.end(), hj.begin(), hj.end());
    RationalPolytope I(P.ambient_dim(), std::move(hs));
    if (I.empty())
      return;
    if (!is_face_of(M[i], I) || !is_face_of(M[j], I))
      pair_problems[static_cast<std::size_t>(t)] =
          "cells " + std::to_string(i) + " and " + std::to_string(j) + " meet outside a common face";
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long t = 0; t < np; ++t)
      check_pair(t);
  } else {
    for (long t = 0; t < np; ++t)
      check_pair(t);
  }
  for (auto &s : pair_problems)
    if (!s.empty()) {
      rep.faces = false;
      rep.problems.push_back(std::move(s));
    }

  if (S.heights && rep.cover) {
    const auto pts = lattice_points(P);
    for (std::size_t i = 0; i < M.size(); ++i) {
      auto a = cell_affine(P, M[i], *S.heights);
      if (!a) {
        rep.witness_affine = false;
        rep.problems.push_back("heights are not affine on cell " + std::to_string(i));
        continue;
      }
      for (const IntVector &x : pts) {
        const Rat hx = height_at(*S.heights, x), ax = a->at(P.chart().forward(x));
        if (M[i].contains(x) ? hx < ax : hx <= ax) {
          rep.witness_convex = false;
          rep.problems.push_back("heights are not strictly convex across cell " +
                                 std::to_string(i) + " at " + to_string(x));
          break;
        }
      }
    }
  }
  return rep;
}

std::vector<std::size_t> interior_cells(const Subdivision &S) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < S.cells.size(); ++i)
    if (!S.cells[i].boundary)
      out.push_back(i);
  return out;
}

} // namespace toricsr
