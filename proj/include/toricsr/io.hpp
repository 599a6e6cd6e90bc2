#pragma once

// JSON documents for polytopes, subdivision requests and reports. Keys come out sorted and
// rationals as canonical "p/q" strings, so equal values give equal bytes. Integers are JSON
// numbers while they fit in 64 bits and decimal strings beyond; both forms are accepted on input.

#include "toricsr/condition_m.hpp"
#include "toricsr/constructions.hpp"
#include "toricsr/hodge.hpp"
#include "toricsr/ledger.hpp"

#include "json.hpp"

namespace toricsr::io {

using Json = nlohmann::json;

// Malformed or missing input; the CLI maps it to exit status 2.
struct InputError : Error {
  using Error::Error;
};

Json to_json(const Int &x);
Json to_json(const Rat &x);
Json to_json(const IntVector &v);
Json to_json(const RatVector &v);
Int int_from_json(const Json &j, const std::string &where);
Rat rat_from_json(const Json &j, const std::string &where);
IntVector int_vector_from_json(const Json &j, const std::string &where);

// {"ambient_dim", "name", "vertices"}. Vertices are written in the polytope's sorted order, so a
// written document reads back to the same bytes.
struct PolytopeDocument {
  std::string name;
  LatticePolytope polytope;
};
Json to_json(const PolytopeDocument &doc);
PolytopeDocument polytope_from_json(const Json &j);

Json read_json_file(const std::string &path);
PolytopeDocument read_polytope_file(const std::string &path);
// Two-space indent and a trailing newline.
std::string dump(const Json &j);

// {"polytope": <document>, "heights": [{"point", "height"}...]} or
// {"polytope": <document>, "recipe": {"name", ...}} with recipes
//   plane     |<normal, x> - offset|
//   distance  squared distance to Conv(delta)
//   quadratic sum of x_i^2
struct SubdivisionRequest {
  PolytopeDocument polytope;
  HeightFunction heights;
  std::string recipe; // "table" for an explicit height list
};
SubdivisionRequest subdivision_request_from_json(const Json &j);
HeightFunction height_recipe(const LatticePolytope &P, const Json &recipe);

Json to_json(const WidthResult &w);
Json to_json(const FineInteriorResult &fi);
Json to_json(const KodairaDimension &k);
Json to_json(const PolytopeClassification &c);
Json to_json(const ClassElement &c);
Json to_json(const DivisorClassGroup &G);
// Per-ray table: ray, ord, witness (null when none).
Json to_json(const ConditionMReport &r, const NormalFan &F);
Json to_json(const HodgeRow &h);
Json to_json(const Subdivision &S);
Json to_json(const ValidationReport &v);
Json to_json(const Ledger &L);
Json to_json(const Verdict &v);
Json to_json(const BoundsRow &r);
Json to_json(const GridCell &c);

} // namespace toricsr::io
