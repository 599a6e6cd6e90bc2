#pragma once

#include "toricsr/exact.hpp"

#include <boost/dynamic_bitset.hpp>

namespace toricsr {

using Bitset = boost::dynamic_bitset<>;

struct ExtremeRays {
  std::vector<IntVector> rays;  // primitive, one per extreme ray
  std::vector<Bitset> tight;    // tight[r][i] set iff <rows[i], rays[r]> = 0
};

// Extreme rays of {y in R^d : <row, y> >= 0 for every row}. The rows must span R^d
// (the cone is then pointed); otherwise DegenerateInput is thrown.
ExtremeRays extreme_rays(const std::vector<IntVector> &rows, std::size_t d);

// Placing triangulation of the cone generated by gens (which must span R^d and
// generate a pointed cone). Each simplex is a sorted list of d generator indices.
std::vector<std::vector<std::size_t>> placing_triangulation(const std::vector<IntVector> &gens);

// Primitive normal of the hyperplane spanned by d-1 independent vectors in Z^d.
IntVector hyperplane_normal(const std::vector<IntVector> &vecs, std::size_t d);

} // namespace toricsr
