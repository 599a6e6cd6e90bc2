#pragma once

#include "toricsr/polytope.hpp"

#include <map>

namespace toricsr {

// Exact height on every lattice point of a polytope.
using HeightFunction = std::map<LatticePoint, Rat>;

struct Cell {
  LatticePolytope polytope;
  int dim = 0;
  bool boundary = false; // contained in the relative boundary of the subdivided polytope
};

struct Subdivision {
  LatticePolytope support;
  std::vector<LatticePolytope> maximal_cells;
  // Every cell of every dimension, sorted by dimension and then by vertex list.
  std::vector<Cell> cells;
  // (i, j): cell i is a facet of cell j.
  std::vector<std::pair<std::size_t, std::size_t>> facet_of;
  // Regularity witness; absent for hand-built subdivisions.
  std::optional<HeightFunction> heights;
  std::vector<LatticePoint> pulled;

  std::optional<std::size_t> find_cell(const LatticePolytope &c) const;
};

// Builds the full cell complex (faces, incidences, boundary flags) from maximal cells.
Subdivision make_subdivision(const LatticePolytope &support, std::vector<LatticePolytope> maximal,
                             std::optional<HeightFunction> heights = std::nullopt);

Subdivision trivial_subdivision(const LatticePolytope &P);

// Cells are the projections of the lower faces of {(m, h(m)) : m in P ∩ Z^n}. Non-simplicial
// cells are kept as they come.
Subdivision regular_subdivision(const LatticePolytope &P, const HeightFunction &h);

// Each maximal cell containing p is replaced by Conv(p, F) over its facets F missing p. When a
// height function is present, the height at p is lowered below the envelope until the lower hull
// reproduces the refined cells.
Subdivision pulling_refinement(const Subdivision &S, const LatticePoint &p);

// Squared Euclidean distance from each lattice point of P to delta.
HeightFunction distance_height(const LatticePolytope &P, const LatticePolytope &delta);
Rat squared_distance(const LatticePolytope &delta, const RatVector &x);

// Sum over i = 0..r of the squared distance to the slice of outer with the coordinates
// sliced_coords[0..i) set to zero (i = 0 is outer itself). Every slice must be a nonempty lattice
// polytope.
HeightFunction staged_distance_height(const LatticePolytope &P, const LatticePolytope &outer,
                                      const std::vector<std::size_t> &sliced_coords);

struct ValidationReport {
  bool cover = true;
  bool faces = true;
  bool integral = true;
  bool witness_affine = true;
  bool witness_convex = true;
  std::vector<std::string> problems;
  bool ok() const { return cover && faces && integral && witness_affine && witness_convex; }
};

ValidationReport validate(const Subdivision &S, Exec exec = Exec::Parallel);

// Cells of every dimension not contained in the boundary.
std::vector<std::size_t> interior_cells(const Subdivision &S);

} // namespace toricsr
