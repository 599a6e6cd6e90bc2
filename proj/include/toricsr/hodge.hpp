#pragma once

#include "toricsr/polytope.hpp"

namespace toricsr {

// e^{p,0} of the open hypersurface in the torus cut out by a general f with Newton polytope P:
// (-1)^{dim P - 1} * sum over faces of dimension p+1 of their relative interior points.
// Valid for p >= 1; p = 0 is returned by the same sum but does not see the punctures.
Int e_p0_open(const LatticePolytope &P, int p, Exec exec = Exec::Parallel);

struct HodgeRow {
  int n = 0;                // dimension of the compact hypersurface, dim P - 1
  std::vector<Int> closed;  // h^{p,0}, p = 0..n: 1, 0, ..., 0, |P° ∩ M|
  std::vector<Int> face_sum; // h^{p,0} from the stratified sum over pairs of faces; entry 0 is 1
  bool agree() const { return closed == face_sum; }
};

// Requires dim P >= 2. The face sum adds e^{p,0} of every torus orbit of the compactification,
// sign-corrected to h^{p,0} = (-1)^p e^{p,0}; the proper faces cancel because every star is
// contractible, which the comparison with the closed form checks.
HodgeRow h_p0_compact(const LatticePolytope &P, Exec exec = Exec::Parallel);

struct RationalityTest {
  bool rational = false;       // Fine interior empty
  std::optional<Int> genus;    // h^{1,0} from the face sum, dim P = 3 only
};
// dim P <= 3; throws PreconditionViolation otherwise.
RationalityTest rational_dim3_test(const LatticePolytope &P);

} // namespace toricsr
