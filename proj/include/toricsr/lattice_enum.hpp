#pragma once

#include "toricsr/exact.hpp"

namespace toricsr {

enum class Exec { Serial, Parallel };

// Integer points x with lower <= x <= upper and <normals[j], x> >= offsets[j] for all j.
struct EnumerationProblem {
  std::vector<IntVector> normals;
  std::vector<Int> offsets;
  IntVector lower;
  IntVector upper;
};

inline constexpr std::size_t kDefaultPointLimit = 20'000'000;

// Plain scan of every box point with a membership test. Reference for tests and benchmarks.
std::vector<IntVector> enumerate_box_reference(const EnumerationProblem &prob,
                                               std::size_t limit = kDefaultPointLimit);

// Depth-first scan with per-coordinate bounds propagated from the halfspaces. Output is
// sorted lexicographically for either execution mode. Throws ResourceLimitExceeded when
// more than limit points exist.
std::vector<IntVector> enumerate_lattice_points(const EnumerationProblem &prob,
                                                std::size_t limit = kDefaultPointLimit,
                                                Exec exec = Exec::Parallel);

// True iff at least one point exists (early exit).
bool has_lattice_point(const EnumerationProblem &prob);

} // namespace toricsr
