#include "toricsr/ledger.hpp"

namespace toricsr {

namespace {

LatticePolytope normalized(const LatticePolytope &P) {
  return P.is_full_dimensional() ? P : normalize_full_dimensional(P).polytope;
}

// Same unimodular class; the budget running out is reported rather than guessed.
bool equivalent(const LatticePolytope &P, const LatticePolytope &Q) {
  auto r = unimodular_equivalence(P, Q);
  if (r.status == EquivalenceStatus::NotFoundBudget)
    throw ResourceLimitExceeded("unimodular equivalence undecided within budget: " + r.reason);
  return r.status == EquivalenceStatus::Found;
}

bool on_boundary(const LatticePolytope &Delta, const LatticePolytope &delta) {
  for (const IntHalfspace &h : Delta.chart_facets()) {
    bool all = true;
    for (const IntVector &v : delta.vertices())
      if (dot(h.normal, Delta.chart().forward(v)) != h.offset) {
        all = false;
        break;
      }
    if (all)
      return true;
  }
  return false;
}

std::string term(const Int &c, const std::string &label, bool first) {
  std::string s;
  if (c < 0)
    s = first ? "-" : " - ";
  else if (!first)
    s = " + ";
  return s + toricsr::to_string(Int(abs(c))) + "*[" + label + "]";
}

} // namespace

void SeedRegistry::add(std::string id, const LatticePolytope &P, std::string reason) {
  LatticePolytope Q = normalized(P);
  prints_.push_back(fingerprint(Q));
  seeds_.push_back(Seed{std::move(id), std::move(Q), std::move(reason)});
}

std::optional<std::string> SeedRegistry::match(const LatticePolytope &P) const {
  LatticePolytope Q = normalized(P);
  Fingerprint f = fingerprint(Q);
  for (std::size_t i = 0; i < seeds_.size(); ++i)
    if (prints_[i] == f && equivalent(seeds_[i].polytope, Q))
      return seeds_[i].id;
  return std::nullopt;
}

std::string to_string(TagKind k) {
  switch (k) {
  case TagKind::Rational:
    return "Rational";
  case TagKind::SeedMatch:
    return "SeedMatch";
  case TagKind::StronglyVarying:
    return "StronglyVarying";
  case TagKind::Unknown:
    return "Unknown";
  }
  return "Unknown";
}

std::string to_string(VerdictKind k) {
  switch (k) {
  case VerdictKind::Obstructed:
    return "Obstructed";
  case VerdictKind::Unobstructed:
    return "Unobstructed";
  case VerdictKind::Inconclusive:
    return "Inconclusive";
  }
  return "Inconclusive";
}

CellClassTag classify_cell(const LatticePolytope &cell, const SeedRegistry &seeds, Exec exec) {
  CellClassTag t;
  LatticePolytope Q = normalized(cell);
  t.fingerprint = fingerprint(Q);
  if (Q.dim() <= 1) {
    t.kind = TagKind::Rational;
    t.justification = "dimension at most 1";
    return t;
  }
  if (t.fingerprint.width == 1) {
    t.kind = TagKind::Rational;
    t.justification = "lattice width 1";
    return t;
  }
  if (Q.dim() <= 3 && fine_interior(Q, FineInteriorGenerators::VertexCones, exec).empty()) {
    t.kind = TagKind::Rational;
    t.justification = "dimension at most 3 with empty Fine interior";
    return t;
  }
  if (auto id = seeds.match(Q)) {
    t.kind = TagKind::SeedMatch;
    t.seed_id = *id;
    t.justification = "unimodularly equivalent to seed " + *id;
    return t;
  }
  VariationCertificate c = strong_variation_certificate(Q, exec);
  switch (c.tag) {
  case VariationTag::UniqueInteriorPoint:
  case VariationTag::HasInteriorPoints:
  case VariationTag::ConditionM:
    t.kind = TagKind::StronglyVarying;
    t.justification = to_string(c.tag);
    break;
  default:
    t.justification = "no rule applies";
    break;
  }
  return t;
}

std::string Ledger::to_string() const {
  std::string s;
  bool first = true;
  for (const LedgerEntry &e : entries) {
    if (e.coefficient == 0)
      continue;
    s += term(e.coefficient, e.label, first);
    first = false;
  }
  return first ? "0" : s;
}

Ledger volume_ledger(const Subdivision &S, const SeedRegistry &seeds, Exec exec,
                     const LedgerOptions &opts) {
  if (!S.heights)
    throw PreconditionViolation("the ledger needs a regular subdivision with a height witness");
  ValidationReport rep = validate(S, exec);
  if (!rep.ok())
    throw PreconditionViolation("invalid subdivision: " + rep.problems.front());

  const auto interior = interior_cells(S);
  std::vector<CellClassTag> tags(interior.size());
  const long ni = static_cast<long>(interior.size());
  // Cell-level work is serial inside; the loop over cells carries the parallelism.
  auto work = [&](long i) {
    tags[static_cast<std::size_t>(i)] =
        classify_cell(S.cells[interior[static_cast<std::size_t>(i)]].polytope, seeds, Exec::Serial);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < ni; ++i)
      work(i);
  } else {
    for (long i = 0; i < ni; ++i)
      work(i);
  }

  Ledger L;
  L.dim = S.support.dim();
  LedgerEntry pt;
  pt.kind = TagKind::Rational;
  pt.label = "pt";
  pt.justification = "rational cells";
  pt.representative = LatticePolytope::hull({IntVector{0}});
  L.entries.push_back(std::move(pt));
  std::size_t unnamed = 0;
  for (std::size_t k = 0; k < interior.size(); ++k) {
    const std::size_t ci = interior[k];
    const LatticePolytope &cell = S.cells[ci].polytope;
    const int sign = (L.dim + cell.dim()) % 2 == 0 ? 1 : -1;
    const CellClassTag &t = tags[k];
    if (t.kind == TagKind::Rational && (opts.collapse_rational || cell.dim() <= 1)) {
      Int mult = 1;
      if (cell.dim() == 0)
        mult = 0;
      else if (cell.dim() == 1)
        mult = static_cast<long>(lattice_points(cell, true).size()) + 1;
      L.entries[0].coefficient += sign * mult;
      L.entries[0].cells.push_back(ci);
      continue;
    }
    LatticePolytope Q = normalized(cell);
    LedgerEntry *target = nullptr;
    for (std::size_t e = 1; e < L.entries.size() && !target; ++e) {
      LedgerEntry &E = L.entries[e];
      if (t.kind == TagKind::SeedMatch) {
        if (E.label == "seed:" + t.seed_id)
          target = &E;
      } else if (E.kind == t.kind && E.fingerprint == t.fingerprint &&
                 equivalent(E.representative, Q)) {
        target = &E;
      }
    }
    if (!target) {
      LedgerEntry E;
      E.kind = t.kind;
      E.label = t.kind == TagKind::SeedMatch ? "seed:" + t.seed_id
                                             : "class" + std::to_string(++unnamed);
      E.justification = t.justification;
      E.fingerprint = t.fingerprint;
      E.representative = Q;
      L.entries.push_back(std::move(E));
      target = &L.entries.back();
    }
    target->coefficient += sign;
    target->cells.push_back(ci);
  }
  return L;
}

Verdict verdict(const Ledger &L) {
  Verdict v;
  std::vector<const LedgerEntry *> varying, unknown;
  // uncollapsed rational classes still count as points
  Int points = L.point().coefficient;
  for (std::size_t e = 1; e < L.entries.size(); ++e) {
    const LedgerEntry &E = L.entries[e];
    if (E.kind == TagKind::Rational)
      points += E.coefficient;
    if (E.coefficient == 0 || E.kind == TagKind::Rational)
      continue;
    (E.kind == TagKind::Unknown ? unknown : varying).push_back(&E);
  }
  if (!varying.empty()) {
    v.kind = VerdictKind::Obstructed;
    for (const LedgerEntry *E : varying)
      v.justification.push_back("class [" + E->label + "] keeps coefficient " +
                                to_string(E->coefficient) + " (" + E->justification +
                                "); a strongly varying class cancels with no other term");
    return v;
  }
  if (unknown.empty()) {
    if (points == 1) {
      v.kind = VerdictKind::Unobstructed;
      v.justification.push_back("ledger reduces to 1*[pt]");
    } else {
      v.kind = VerdictKind::Obstructed;
      v.justification.push_back("ledger reduces to " + to_string(points) +
                                "*[pt], which differs from [pt]");
    }
    return v;
  }
  v.kind = VerdictKind::Inconclusive;
  for (const LedgerEntry *E : unknown)
    v.justification.push_back("class [" + E->label + "] of unknown type keeps coefficient " +
                              to_string(E->coefficient));
  return v;
}

Dim4Result dim4_pipeline(const LatticePolytope &Delta, const LatticePolytope &delta,
                         const SeedRegistry &seeds, Exec exec) {
  if (Delta.dim() > 4)
    throw PreconditionViolation("the outer polytope has dimension above 4");
  for (const IntVector &v : delta.vertices())
    if (!Delta.contains(v))
      throw PreconditionViolation("the inner polytope is not contained in the outer one");
  if (on_boundary(Delta, delta))
    throw PreconditionViolation("the inner polytope lies in the boundary");
  auto seed = seeds.match(delta);
  if (!seed)
    throw PreconditionViolation("the inner polytope is not a registered seed");

  Dim4Result res;
  if (!fine_interior(normalized(delta), FineInteriorGenerators::VertexCones, exec).empty()) {
    res.verdict.kind = VerdictKind::Obstructed;
    res.verdict.justification.push_back(
        "the inner Fine interior is nonempty, hence so is the outer one: Kodaira dimension >= 0");
    return res;
  }
  Subdivision S = regular_subdivision(Delta, distance_height(Delta, delta));
  if (!S.find_cell(delta))
    throw InternalConsistencyError("the inner polytope is not a cell of the distance subdivision");
  Ledger L = volume_ledger(S, seeds, exec);

  const LedgerEntry *inner = nullptr;
  for (std::size_t e = 1; e < L.entries.size(); ++e) {
    const LedgerEntry &E = L.entries[e];
    if (E.label == "seed:" + *seed)
      inner = &E;
    if (E.representative.dim() < Delta.dim() && E.coefficient != 0) {
      res.verdict.kind = VerdictKind::Inconclusive;
      res.verdict.justification.push_back("lower-dimensional class [" + E.label +
                                          "] is not known to be rational");
    }
  }
  if (res.verdict.justification.empty()) {
    if (!inner || inner->coefficient <= 0)
      throw InternalConsistencyError("the seed cell is missing from the ledger");
    res.verdict.kind = VerdictKind::Obstructed;
    res.verdict.justification.push_back(
        "every lower-dimensional cell is rational and every full-dimensional cell enters with "
        "sign +1, so [" + inner->label + "] keeps coefficient " + to_string(inner->coefficient));
  }
  res.subdivision = std::move(S);
  res.ledger = std::move(L);
  return res;
}

} // namespace toricsr
