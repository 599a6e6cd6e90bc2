#pragma once

#include "toricsr/polytope.hpp"

#include <string>

namespace toricsr {

// ---- named families ----

// Conv{0, 2e1, 2e2, e2 + 2e3, e1 + 2e4, e1 + e2 + 2e5}: Newton polytope of the (2,2) divisor
// in P^2 x P^3 that is not stably rational.
LatticePolytope hpt();

// Conv{2e1, e2, (d-1)e2 + e3, ..., (d-1)e_n + e_{n+1}, (d-1)e_{n+1}} in Z^{n+1}: the double
// cover of P^n branched along a cyclic degree d hypersurface.
LatticePolytope kollar_totaro(std::size_t n, long d);

// Conv{e1, 2e1 + e2, ..., 2e_{n-1} + e_n, 2e_n} for odd n: exponents of the cyclic cubic
// x0^2 x1 + ... + x_n^2 x0 on x0 = 1.
LatticePolytope cubic_empty(std::size_t n);

// Conv{0, e1, e3, p e1 + q e2 + e3}; requires 1 <= p <= q, gcd(p, q) = 1.
LatticePolytope empty_tetrahedron(long p, long q);

// Conv{0, d e1, ..., d e_N, 2 e_{N+1}}: double cover of P^N branched in degree d.
LatticePolytope double_cover_polytope(long d, std::size_t N);

// d_1 Δ_{n_1} x ... x d_k Δ_{n_k}
LatticePolytope simplex_product(const std::vector<std::pair<long, std::size_t>> &factors);

// Conv{e1, e2, e3, e4, 6e1 + 14e2 + 17e3 + 65e4}: the empty 4-simplex of width 4, whose
// Fine interior is full-dimensional.
LatticePolytope general_type_simplex();

// ---- Schreieder simplices ----

// Conv{0, d e1, ..., d e_{2n}, eps.e + 2 e_{2n+k(eps)}} for eps in {0,1}^n with |eps| <= n-2,
// d = n + 2. Coordinates are 0-based, so the vertex of epsilons[k] uses coordinate 2n + k.
struct SchreiederSimplex {
  std::size_t n = 0;
  long degree = 0;
  std::vector<std::vector<int>> epsilons;
  LatticePolytope polytope;
  std::size_t coordinate(std::size_t k) const { return 2 * n + k; }
  IntVector epsilon_vertex(std::size_t k) const;
};

// Default order of the epsilons: all zeros first, then the rest lexicographically. An explicit
// order must be a permutation of that set.
std::vector<std::vector<int>> default_epsilon_order(std::size_t n);
SchreiederSimplex schreieder(std::size_t n);
SchreiederSimplex schreieder(std::size_t n, std::vector<std::vector<int>> order);

// ---- double cones ----

struct ConePair {
  IntVector plus;  // projects to +e_k on the new coordinates
  IntVector minus; // projects to -e_k
};

// Hull of P x {0} and the pairs, in Z^{n + pairs.size()}.
LatticePolytope double_cone(const LatticePolytope &P, const std::vector<ConePair> &pairs);

// The ten-vertex double cone over hpt() in Z^7 with pairs (e1 + e4 + e6, e1 - e6) and
// (e1 + e5 + e7, e1 - e7).
LatticePolytope hpt_double_cone();
// x ↦ L(x + e1) with L: e1→e5, e2→e4, e3→e3, e4→e2-e5+e6, e5→e1-e5+e7, e6→e5-e6, e7→e5-e7.
AffineUnimodularMap hpt_double_cone_map();

// ---- degree-preserving extensions of a Schreieder simplex ----

struct SchreiederExtension {
  // Vertices of the simplex followed by the pair (e_c, e_k - e_c) of each step, c a new
  // coordinate. The cone is their hull.
  std::vector<IntVector> generators;
  LatticePolytope cone;
  // e_k ↦ e_k + sum of the new e_c of the steps at k; maps the cone into (n+2)Δ.
  AffineUnimodularMap map;
  LatticePolytope polytope; // map(cone)
  std::vector<std::size_t> steps;
};

struct ExtensionOptions {
  // The double cone has about 2^steps facets; without the hull only generators and map are set.
  bool hull = true;
};

// Each step names an epsilon index k. The epsilon vertex gains degree 2 per step, so index k
// allows floor((n - |eps_k|)/2) steps; more throws PreconditionViolation.
SchreiederExtension extend_schreieder(const SchreiederSimplex &S,
                                      const std::vector<std::size_t> &steps,
                                      const ExtensionOptions &opts = {});
// Every step the budget allows, epsilon by epsilon.
std::vector<std::size_t> all_extension_steps(const SchreiederSimplex &S);

// ---- containment ----

struct ContainmentCertificate {
  bool contained = false;
  std::string violation; // first failing vertex and halfspace
};
ContainmentCertificate containment_certificate(const LatticePolytope &P,
                                               const LatticePolytope &target,
                                               const AffineUnimodularMap &map);
// Same test on the hull of points, which need not be vertices.
ContainmentCertificate containment_certificate(const std::vector<IntVector> &points,
                                               const LatticePolytope &target,
                                               const AffineUnimodularMap &map);

// ---- bounds ----

struct SumIdentity {
  Int lhs; // by enumeration over epsilons
  Int rhs; // 2^{n-2} (n-1)
  bool equal() const { return lhs == rhs; }
};
SumIdentity sum_identity(std::size_t n);

enum class BoundKind { Hypersurface, DoubleCover };

struct BoundsRow {
  std::size_t n = 0;
  Int degree;         // smallest degree covered
  Int r_min, r_max;   // N = n + r
  Int N_min, N_max;
  std::string r_max_formula;
  Int r_max_formula_value; // r_max evaluated term by term from the formula
  Int baseline_N_max;      // largest N the earlier construction covers in this degree
};
std::vector<BoundsRow> bounds_table(std::size_t n_min, std::size_t n_max, BoundKind kind);

enum class GridStatus { Baseline, New, Open };
std::string to_string(GridStatus s);
struct GridCell {
  long N = 0;
  long degree = 0;
  GridStatus status = GridStatus::Open;
};
// Status of each (N, d) for 3 <= N <= N_max, 3 <= d <= d_max (even d only for double covers).
std::vector<GridCell> bounds_grid(BoundKind kind, long N_max, long d_max);

// ---- dispatch by name ----

struct FamilySpec {
  std::string family; // hpt, kollar_totaro, cubic_empty, tpq, double_cover, schreieder,
                      // dilated_simplex, simplex_product, general_type, hpt_double_cone
  std::vector<long> params;
};
LatticePolytope build(const FamilySpec &spec);

} // namespace toricsr
