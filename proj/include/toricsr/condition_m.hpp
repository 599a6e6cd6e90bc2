#pragma once

#include "toricsr/toric.hpp"

namespace toricsr {

enum class ConditionMMode { Reduced, Unrestricted };

struct ConditionMReport {
  ConditionMMode mode = ConditionMMode::Reduced;
  bool holds = false;
  // Exponent vector over the rays for each ray, with w >= 0, w[rho] >= 1 and class [D_P].
  // Reduced witnesses are 0/1 vectors.
  std::vector<std::optional<std::vector<Int>>> witnesses;
};

ConditionMReport check_condition_m(const LatticePolytope &P,
                                   ConditionMMode mode = ConditionMMode::Reduced,
                                   Exec exec = Exec::Parallel);

// True when w is a valid witness for ray rho in the given mode.
bool verify_witness(const LatticePolytope &P, std::size_t rho, const std::vector<Int> &w,
                    ConditionMMode mode);

struct Section {
  LatticePoint point;     // m in P_D
  std::vector<Int> exponents; // <m, u_ρ> + a_ρ
};
std::vector<Section> sections_of_class(const LatticePolytope &P, const TorusDivisor &D);

// Compares "some exponent vector w >= 0 with w_rho >= 1 has class [D_P]" (enumerated
// directly over exponent vectors) against "the facet shift at rho has a lattice point".
// Returns the common answer; throws InternalConsistencyError when they differ.
inline constexpr std::size_t kDefaultExponentNodeLimit = 5'000'000;
bool cross_check_unrestricted(const LatticePolytope &P, std::size_t rho,
                              std::size_t node_limit = kDefaultExponentNodeLimit);

// width 1, dimension <= 1, or dimension <= 3 with empty Fine interior. Lower-dimensional
// polytopes are measured in their own lattice.
bool is_provably_rational(const LatticePolytope &P);

enum class VariationTag {
  None,
  UniqueInteriorPoint,
  HasInteriorPoints,
  ConditionM,
  SmoothWithUnobstructedShifts
};
std::string to_string(VariationTag t);

struct VariationCertificate {
  VariationTag tag = VariationTag::None;
  std::optional<ConditionMReport> condition_m; // set for ConditionM
  // For SmoothWithUnobstructedShifts: each facet shift, as a lattice polytope judged rational.
  std::vector<LatticePolytope> shifted_facets;
};

// Checked in order: provably rational (None), a single interior point, interior points,
// reduced condition (M), smooth with every facet shift a nonempty provably rational lattice
// polytope. None makes no claim.
VariationCertificate strong_variation_certificate(const LatticePolytope &P,
                                                  Exec exec = Exec::Parallel);

} // namespace toricsr
