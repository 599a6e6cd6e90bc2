#pragma once

#include "toricsr/exact.hpp"
#include "toricsr/lattice_enum.hpp"
#include "toricsr/linalg.hpp"

#include <memory>

namespace toricsr {

using LatticePoint = IntVector;

// <normal, x> >= offset
struct IntHalfspace {
  IntVector normal;
  Int offset;
  bool operator==(const IntHalfspace &) const = default;
};

struct RatHalfspace {
  IntVector normal; // primitive
  Rat offset;
  bool operator==(const RatHalfspace &) const = default;
};

class AffineUnimodularMap {
public:
  AffineUnimodularMap() = default;
  AffineUnimodularMap(IntMatrix linear, IntVector translation);

  static AffineUnimodularMap identity(std::size_t n);
  static AffineUnimodularMap translation_by(IntVector t);

  std::size_t dim() const { return translation_.size(); }
  const IntMatrix &linear() const { return linear_; }
  const IntVector &translation() const { return translation_; }

  IntVector apply(const IntVector &x) const;
  RatVector apply(const RatVector &x) const;
  AffineUnimodularMap inverse() const;
  // (next ∘ this)
  AffineUnimodularMap then(const AffineUnimodularMap &next) const;
  // Dual vector l' with <l', x> = <l, linear x> for all x.
  IntVector pull_back_dual(const IntVector &l) const;

  bool operator==(const AffineUnimodularMap &) const = default;

private:
  IntMatrix linear_;
  IntVector translation_;
};

// Identifies the affine lattice aff(P) ∩ Z^N with Z^k: x ↦ first k coordinates of
// to_standard(x), where to_standard maps aff(P) onto Z^k × {0}.
class LatticeChart {
public:
  LatticeChart() = default;
  LatticeChart(std::size_t ambient_dim, std::size_t dim, AffineUnimodularMap to_standard);
  static LatticeChart identity(std::size_t n);
  // Chart of the affine lattice spanned by the points (first point is the origin of the chart
  // unless the points are full-dimensional, in which case the chart is the identity).
  static LatticeChart of_points(const std::vector<IntVector> &points);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return dim_; }
  bool is_identity() const { return identity_; }
  const AffineUnimodularMap &to_standard() const { return to_standard_; }

  bool in_span(const IntVector &x) const;
  bool in_span(const RatVector &x) const;
  IntVector forward(const IntVector &x) const;
  RatVector forward(const RatVector &x) const;
  IntVector backward(const IntVector &y) const;
  RatVector backward(const RatVector &y) const;
  // Functional on Z^N restricting to l on the chart.
  IntVector dual_to_ambient(const IntVector &l) const;

private:
  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  bool identity_ = true;
  AffineUnimodularMap to_standard_;
  AffineUnimodularMap from_standard_;
};

class LatticePolytope {
public:
  LatticePolytope() = default;
  static LatticePolytope hull(const std::vector<LatticePoint> &points);

  bool valid() const { return static_cast<bool>(data_); }
  std::size_t ambient_dim() const;
  int dim() const;
  bool is_full_dimensional() const { return static_cast<std::size_t>(dim()) == ambient_dim(); }
  bool is_simplex() const { return num_vertices() == static_cast<std::size_t>(dim()) + 1; }

  const std::vector<LatticePoint> &vertices() const;
  std::size_t num_vertices() const { return vertices().size(); }
  const LatticeChart &chart() const;
  // Vertices in chart coordinates, in the same order as vertices().
  const std::vector<IntVector> &chart_vertices() const;
  // Facets in chart coordinates; in ambient coordinates when the polytope is full-dimensional.
  const std::vector<IntHalfspace> &chart_facets() const;
  // Sorted vertex indices on each facet.
  const std::vector<std::vector<std::size_t>> &facet_vertices() const;
  // Vertex-index sets of the k-faces, indexed by k = 0..dim; computed on first use.
  const std::vector<std::vector<std::vector<std::size_t>>> &face_sets() const;

  bool contains(const IntVector &x) const;
  bool contains(const RatVector &x) const;
  bool in_relative_interior(const IntVector &x) const;

  bool operator==(const LatticePolytope &o) const;

private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

class RationalPolytope {
public:
  RationalPolytope() = default;
  // Canonicalizes (primitive normals, duplicates merged), computes the vertices and, when the
  // polytope is full-dimensional, drops redundant halfspaces. Throws UnsupportedInput when the
  // system is nonempty and unbounded.
  RationalPolytope(std::size_t ambient_dim, std::vector<RatHalfspace> halfspaces);

  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<RatHalfspace> &halfspaces() const { return halfspaces_; }
  const std::vector<RatVector> &vertices() const { return vertices_; }
  bool empty() const { return vertices_.empty(); }
  // -1 when empty
  int dim() const { return dim_; }
  bool is_lattice() const;
  std::optional<LatticePolytope> to_lattice_polytope() const;
  bool contains(const IntVector &x) const;
  bool contains(const RatVector &x) const;
  std::vector<LatticePoint> lattice_points(std::size_t limit = kDefaultPointLimit) const;
  bool has_lattice_point() const;

private:
  friend RationalPolytope facets(const LatticePolytope &P);
  RationalPolytope(std::size_t ambient_dim, std::vector<RatHalfspace> halfspaces,
                   std::vector<RatVector> vertices, int dim);

  std::size_t ambient_dim_ = 0;
  std::vector<RatHalfspace> halfspaces_;
  std::vector<RatVector> vertices_;
  int dim_ = -1;
};

// Affine dimension of a point set (-1 when empty).
int affine_dimension(const std::vector<IntVector> &points);
int affine_dimension(const std::vector<RatVector> &points);

// ---- operations ----

// Facet inequalities in ambient coordinates, followed by a pair of opposite inequalities for
// each equation of the affine span when P is not full-dimensional.
std::vector<IntHalfspace> ambient_halfspaces(const LatticePolytope &P);
RationalPolytope facets(const LatticePolytope &P);
Int ord(const LatticePolytope &P, const IntVector &n);

std::vector<LatticePoint> lattice_points(const LatticePolytope &P, bool interior_only = false,
                                         std::size_t limit = kDefaultPointLimit,
                                         Exec exec = Exec::Parallel);

// Vertex-index sets of all k-faces, for k = 0..dim.
std::vector<std::vector<std::vector<std::size_t>>> face_index_sets(const LatticePolytope &P);
std::vector<LatticePolytope> faces(const LatticePolytope &P, int k);
std::vector<std::size_t> face_vector(const LatticePolytope &P);
// Pairs of vertex indices joined by an edge.
std::vector<std::vector<std::size_t>> vertex_adjacency(const LatticePolytope &P);

struct WidthResult {
  Int width;
  IntVector certificate; // primitive dual vector in ambient coordinates
};
WidthResult lattice_width(const LatticePolytope &P, Exec exec = Exec::Parallel);
Int width_along(const LatticePolytope &P, const IntVector &l);

struct Normalized {
  LatticePolytope polytope;
  LatticeChart chart;
};
Normalized normalize_full_dimensional(const LatticePolytope &P);

// Normalized volume dim! * vol in the lattice of the affine span.
Int normalized_volume(const LatticePolytope &P);

struct PolytopeClassification {
  bool is_empty_polytope = false;
  bool is_empty_simplex = false;
  bool is_hollow = false;
  bool is_relatively_empty = false;
  // Facets F with exactly one lattice point of P off F. A face with that property lies in such
  // a facet, so these witness relative emptiness.
  std::vector<std::size_t> relatively_empty_facets;
  std::size_t lattice_point_count = 0;
  std::size_t interior_point_count = 0;
};
PolytopeClassification classify(const LatticePolytope &P);

struct Fingerprint {
  int dim = 0;
  std::size_t vertices = 0;
  std::size_t lattice_points = 0;
  std::size_t interior_points = 0;
  std::vector<std::size_t> faces;
  Int width = 0;
  Int volume = 0;
  bool operator==(const Fingerprint &) const = default;
  bool operator<(const Fingerprint &o) const;
};
Fingerprint fingerprint(const LatticePolytope &P);

enum class EquivalenceStatus { Found, NotEquivalent, NotFoundBudget };
struct EquivalenceResult {
  EquivalenceStatus status = EquivalenceStatus::NotEquivalent;
  std::optional<AffineUnimodularMap> map;
  std::string reason;
};
inline constexpr std::size_t kDefaultEquivalenceBudget = 2'000'000;
EquivalenceResult unimodular_equivalence(const LatticePolytope &P, const LatticePolytope &Q,
                                         std::size_t node_budget = kDefaultEquivalenceBudget);
bool maps_onto(const AffineUnimodularMap &T, const LatticePolytope &P, const LatticePolytope &Q);

// ---- polytope algebra ----
LatticePolytope dilate(const LatticePolytope &P, const Int &k);
LatticePolytope product(const LatticePolytope &P, const LatticePolytope &Q);
LatticePolytope translate(const LatticePolytope &P, const IntVector &v);
LatticePolytope convex_union(const LatticePolytope &P, const LatticePolytope &Q);
LatticePolytope apply(const AffineUnimodularMap &T, const LatticePolytope &P);
// Conv(0, d e_1, ..., d e_n)
LatticePolytope dilated_simplex(const Int &d, std::size_t n);

} // namespace toricsr
