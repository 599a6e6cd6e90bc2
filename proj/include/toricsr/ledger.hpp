#pragma once

#include "toricsr/condition_m.hpp"
#include "toricsr/subdivision.hpp"

namespace toricsr {

// Polytopes known not to be stably rational, each with the reason it is registered.
struct Seed {
  std::string id;
  LatticePolytope polytope; // normalized to its span
  std::string reason;
};

class SeedRegistry {
public:
  void add(std::string id, const LatticePolytope &P, std::string reason);
  const std::vector<Seed> &seeds() const { return seeds_; }
  // Id of a seed unimodularly equivalent to P (P is normalized first).
  std::optional<std::string> match(const LatticePolytope &P) const;

private:
  std::vector<Seed> seeds_;
  std::vector<Fingerprint> prints_;
};

enum class TagKind { Rational, SeedMatch, StronglyVarying, Unknown };
std::string to_string(TagKind k);

struct CellClassTag {
  TagKind kind = TagKind::Unknown;
  std::string seed_id;       // SeedMatch
  std::string justification; // rule that assigned the tag
  Fingerprint fingerprint;   // of the normalized cell
};

CellClassTag classify_cell(const LatticePolytope &cell, const SeedRegistry &seeds,
                           Exec exec = Exec::Parallel);

struct LedgerEntry {
  TagKind kind = TagKind::Unknown;
  std::string label; // "pt", "seed:<id>", or "class<k>"
  std::string justification;
  Fingerprint fingerprint;
  LatticePolytope representative;
  std::vector<std::size_t> cells; // indices into Subdivision::cells
  Int coefficient = 0;
};

// (-1)^dim P * sum over interior cells of (-1)^dim(cell) [class]. Rational cells collapse to the
// point class: a 0-cell contributes nothing, a segment with r interior points r + 1 points, other
// rational cells one point. Entry 0 is always the point class.
struct Ledger {
  int dim = 0;
  std::vector<LedgerEntry> entries;
  const LedgerEntry &point() const { return entries.front(); }
  std::string to_string() const;
};

struct LedgerOptions {
  // false keeps rational cells of dimension >= 2 as their own unimodular classes, which shows
  // the class structure before rational classes are identified with points
  bool collapse_rational = true;
};

Ledger volume_ledger(const Subdivision &S, const SeedRegistry &seeds, Exec exec = Exec::Parallel,
                     const LedgerOptions &opts = {});

enum class VerdictKind { Obstructed, Unobstructed, Inconclusive };
std::string to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::vector<std::string> justification;
};

// Unobstructed iff the ledger is 1·[pt]. Obstructed when a seed or strongly varying class keeps a
// nonzero coefficient, or when only point classes remain with a coefficient other than 1.
Verdict verdict(const Ledger &L);

struct Dim4Result {
  Verdict verdict;
  std::optional<Subdivision> subdivision; // absent when the Fine interior settles it
  std::optional<Ledger> ledger;
};

// For delta inside Delta (dim Delta <= 4, delta off the boundary, delta matching a seed).
Dim4Result dim4_pipeline(const LatticePolytope &Delta, const LatticePolytope &delta,
                         const SeedRegistry &seeds, Exec exec = Exec::Parallel);

} // namespace toricsr
