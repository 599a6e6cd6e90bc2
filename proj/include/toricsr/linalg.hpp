#pragma once

#include "toricsr/exact.hpp"

namespace toricsr {

struct HermiteDecomposition {
  IntMatrix H; // row echelon, positive pivots, entries above a pivot reduced into [0, pivot)
  IntMatrix U; // unimodular, U * A = H
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

struct SmithDecomposition {
  IntMatrix S; // diagonal, nonnegative
  IntMatrix U; // unimodular
  IntMatrix V; // unimodular, U * A * V = S
  std::vector<Int> invariant_factors; // nonzero diagonal entries, d_i | d_{i+1}
};

HermiteDecomposition hermite_form(const IntMatrix &A);
SmithDecomposition smith_form(const IntMatrix &A);

// Lattice basis of {x in Z^cols : A x = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix &A);
std::optional<IntVector> solve_diophantine(const IntMatrix &A, const IntVector &b);

Int determinant(const IntMatrix &A);
std::size_t rank(const IntMatrix &A);
std::size_t rank(const std::vector<IntVector> &rows);

// Rational matrices as row lists.
using RatMatrix = std::vector<RatVector>;
RatMatrix to_rat(const IntMatrix &A);
// Inverse of a square nonsingular integer matrix; throws DegenerateInput when singular.
RatMatrix inverse(const IntMatrix &A);
RatVector mul(const RatMatrix &A, const RatVector &x);
// Unique solution of A x = b for square nonsingular A.
RatVector solve(const IntMatrix &A, const RatVector &b);

// Indices of a maximal linearly independent subset of rows, chosen greedily in order.
std::vector<std::size_t> independent_rows(const std::vector<IntVector> &rows);

bool is_unimodular(const IntMatrix &A);

struct LllReduction {
  std::vector<IntVector> basis; // LLL-reduced, same lattice
  IntMatrix transform;          // unimodular, transform * input rows = basis rows
};
// Exact LLL reduction (parameter 3/4) of linearly independent integer rows.
LllReduction lll_reduce(const std::vector<IntVector> &rows);

} // namespace toricsr
