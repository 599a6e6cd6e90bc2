#pragma once

#include "toricsr/polytope.hpp"

namespace toricsr {

struct RationalCone {
  std::vector<IntVector> generators;
};

// Inner normal fan of a full-dimensional lattice polytope. Ray i is the primitive inner normal
// of facet i (facet order of the polytope).
struct NormalFan {
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::vector<Int> ord;                                 // ord_P(ray)
  std::vector<std::vector<std::size_t>> facet_vertices; // vertex indices on each facet
  std::vector<std::vector<std::size_t>> vertex_cones;   // rays of the facets through each vertex
};

NormalFan normal_fan(const LatticePolytope &P);

// Minimal generating set of C ∩ Z^d, sorted lexicographically. Throws UnsupportedInput for
// cones containing a line.
std::vector<IntVector> hilbert_basis(const RationalCone &C, Exec exec = Exec::Parallel);

// Elements of C ∩ Z^d in the half-open parallelepiped of each simplicial piece of a
// triangulation, together with the triangulation rays. A superset of the Hilbert basis.
std::vector<IntVector> hilbert_candidates(const RationalCone &C, Exec exec = Exec::Parallel);

struct FineInteriorResult {
  RationalPolytope polytope;
  int dim = -1; // -1 when empty
  bool is_lattice = false;
  bool empty() const { return dim < 0; }
};

// CuttingPlane starts from the facet halfspaces shifted by one and, at every vertex q of the
// current polytope, looks for a normal u with <q, u> < ord(u) + 1 among the lattice points of the
// body {u : <q - p, u> <= 1 for all vertices p}; the most violated one is added until no vertex
// violates any normal. The cone routes take the Hilbert bases of the normal cones at every vertex
// (or at every face), whose size grows with the cone determinants.
enum class FineInteriorGenerators { CuttingPlane, VertexCones, AllFaceCones };
FineInteriorResult fine_interior(const LatticePolytope &P,
                                 FineInteriorGenerators gens = FineInteriorGenerators::CuttingPlane,
                                 Exec exec = Exec::Parallel);

struct KodairaDimension {
  bool negative_infinity = true;
  int value = 0; // meaningful when !negative_infinity
  int fine_interior_dim = -1;
  bool general_type = false;
  std::string to_string() const;
};
KodairaDimension kodaira_dimension(const LatticePolytope &P);

struct SmoothnessReport {
  std::vector<bool> vertex_smooth;
  bool smooth = false;
};
SmoothnessReport is_smooth(const LatticePolytope &P);

// Coefficients a_ρ per ray.
using TorusDivisor = std::vector<Int>;

// D_P, with a_ρ = -ord_P(u_ρ).
TorusDivisor polytope_divisor(const NormalFan &F);
// {m : <m, u_ρ> + a_ρ >= 0}
RationalPolytope divisor_polytope(const NormalFan &F, const TorusDivisor &D);
// The facet of ray rho moved inward by one; all other facets kept.
RationalPolytope facet_shift(const LatticePolytope &P, std::size_t rho);

struct ClassElement {
  IntVector free;
  std::vector<Int> torsion; // residues, one per torsion factor, in [0, factor)
  bool operator==(const ClassElement &) const = default;
  bool is_zero() const;
  std::string to_string() const;
};

// Cl = Z^rays / image of m ↦ (<m, u_ρ>)_ρ.
struct DivisorClassGroup {
  std::size_t num_rays = 0;
  std::size_t free_rank = 0;
  std::vector<Int> torsion; // invariant factors > 1, each dividing the next
  std::vector<ClassElement> ray_degrees;
  ClassElement ample;       // [D_P]
  // Linear forms on Z^rays giving the coordinates of a class (free forms canonicalized by HNF).
  std::vector<IntVector> free_forms;
  std::vector<IntVector> torsion_forms;
  std::string to_string() const; // e.g. "Z x Z/2 x Z/2"
};

DivisorClassGroup class_group(const NormalFan &F);
DivisorClassGroup class_group(const LatticePolytope &P);
ClassElement divisor_class(const DivisorClassGroup &G, const TorusDivisor &D);

// Normalized lattice volume of each facet. The relation sum_ρ c_ρ u_ρ = 0 makes
// w ↦ sum_ρ c_ρ w_ρ a linear function on Cl that is positive on effective classes.
std::vector<Int> minkowski_weights(const LatticePolytope &P);

} // namespace toricsr
