#include "toricsr/io.hpp"

#include <fstream>
#include <sstream>

namespace toricsr::io {

namespace {

[[noreturn]] void bad(const std::string &where, const std::string &what) {
  throw InputError(where + ": " + what);
}

const Json &field(const Json &j, const char *key, const std::string &where) {
  if (!j.is_object())
    bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    bad(where, std::string("missing field '") + key + "'");
  return *it;
}

Json points_to_json(const std::vector<IntVector> &pts) {
  Json a = Json::array();
  for (const IntVector &p : pts)
    a.push_back(to_json(p));
  return a;
}

Json polytope_json(const LatticePolytope &P) { return points_to_json(P.vertices()); }

} // namespace

Json to_json(const Int &x) {
  if (fits_int64(x))
    return to_int64(x);
  return to_string(x);
}

Json to_json(const Rat &x) { return to_string(x); }

Json to_json(const IntVector &v) {
  Json a = Json::array();
  for (const Int &x : v)
    a.push_back(to_json(x));
  return a;
}

Json to_json(const RatVector &v) {
  Json a = Json::array();
  for (const Rat &x : v)
    a.push_back(to_json(x));
  return a;
}

Int int_from_json(const Json &j, const std::string &where) {
  if (j.is_number_integer())
    return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    const auto &s = j.get_ref<const std::string &>();
    if (s.empty() || x.set_str(s, 10) != 0)
      bad(where, "not an integer: '" + s + "'");
    return x;
  }
  bad(where, "expected an integer, got " + j.dump());
}

Rat rat_from_json(const Json &j, const std::string &where) {
  if (j.is_number_integer())
    return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error &e) {
      bad(where, e.what());
    }
  }
  bad(where, "expected a rational, got " + j.dump());
}

IntVector int_vector_from_json(const Json &j, const std::string &where) {
  if (!j.is_array())
    bad(where, "expected an integer array");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(int_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Json to_json(const PolytopeDocument &doc) {
  return Json{{"name", doc.name},
              {"ambient_dim", doc.polytope.ambient_dim()},
              {"vertices", polytope_json(doc.polytope)}};
}

PolytopeDocument polytope_from_json(const Json &j) {
  const std::string where = "polytope document";
  PolytopeDocument doc;
  const Json &name = field(j, "name", where);
  if (!name.is_string())
    bad(where, "name must be a string");
  doc.name = name.get<std::string>();
  const Json &dim = field(j, "ambient_dim", where);
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0)
    bad(where, "ambient_dim must be a positive integer");
  const std::size_t n = dim.get<std::size_t>();
  const Json &verts = field(j, "vertices", where);
  if (!verts.is_array() || verts.empty())
    bad(where, "vertices must be a nonempty array");
  std::vector<IntVector> pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    auto v = int_vector_from_json(verts[i], "vertices[" + std::to_string(i) + "]");
    if (v.size() != n)
      bad(where, "vertex " + std::to_string(i) + " has " + std::to_string(v.size()) +
                     " coordinates, ambient_dim is " + std::to_string(n));
    pts.push_back(std::move(v));
  }
  doc.polytope = LatticePolytope::hull(pts);
  return doc;
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw InputError("'" + path + "' is empty");
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

PolytopeDocument read_polytope_file(const std::string &path) {
  return polytope_from_json(read_json_file(path));
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

HeightFunction height_recipe(const LatticePolytope &P, const Json &recipe) {
  const std::string where = "recipe";
  const Json &name = field(recipe, "name", where);
  if (!name.is_string())
    bad(where, "name must be a string");
  const std::string kind = name.get<std::string>();
  if (kind == "distance") {
    std::vector<IntVector> pts;
    const Json &delta = field(recipe, "delta", where);
    if (!delta.is_array() || delta.empty())
      bad(where, "delta must be a nonempty point array");
    for (const Json &p : delta) {
      pts.push_back(int_vector_from_json(p, "delta"));
      if (pts.back().size() != P.ambient_dim())
        bad(where, "delta point has the wrong dimension");
    }
    return distance_height(P, LatticePolytope::hull(pts));
  }
  HeightFunction h;
  if (kind == "plane") {
    const IntVector a = int_vector_from_json(field(recipe, "normal", where), "normal");
    const Int b = int_from_json(field(recipe, "offset", where), "offset");
    if (a.size() != P.ambient_dim())
      bad(where, "normal has the wrong dimension");
    for (const IntVector &x : lattice_points(P))
      h.emplace(x, Rat(abs(dot(a, x) - b)));
    return h;
  }
  if (kind == "quadratic") {
    for (const IntVector &x : lattice_points(P))
      h.emplace(x, Rat(dot(x, x)));
    return h;
  }
  bad(where, "unknown recipe '" + kind + "' (plane, distance, quadratic)");
}

SubdivisionRequest subdivision_request_from_json(const Json &j) {
  const std::string where = "subdivision request";
  SubdivisionRequest r;
  r.polytope = polytope_from_json(field(j, "polytope", where));
  const bool has_heights = j.contains("heights"), has_recipe = j.contains("recipe");
  if (has_heights == has_recipe)
    bad(where, "give exactly one of 'heights' and 'recipe'");
  if (has_recipe) {
    r.heights = height_recipe(r.polytope.polytope, j["recipe"]);
    r.recipe = j["recipe"].value("name", "");
    return r;
  }
  r.recipe = "table";
  const Json &hs = j["heights"];
  if (!hs.is_array())
    bad(where, "heights must be an array");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const std::string at = "heights[" + std::to_string(i) + "]";
    IntVector p = int_vector_from_json(field(hs[i], "point", at), at + ".point");
    if (!r.polytope.polytope.contains(p))
      bad(at, "point " + to_string(p) + " is outside the polytope");
    r.heights[p] = rat_from_json(field(hs[i], "height", at), at + ".height");
  }
  for (const IntVector &x : lattice_points(r.polytope.polytope))
    if (!r.heights.count(x))
      bad(where, "no height for lattice point " + to_string(x));
  return r;
}

Json to_json(const WidthResult &w) {
  return Json{{"width", to_json(w.width)}, {"direction", to_json(w.certificate)}};
}

Json to_json(const FineInteriorResult &fi) {
  Json verts = Json::array();
  for (const RatVector &v : fi.polytope.vertices())
    verts.push_back(to_json(v));
  return Json{{"dim", fi.dim}, {"is_lattice", fi.is_lattice}, {"vertices", verts}};
}

Json to_json(const KodairaDimension &k) {
  return Json{{"kappa", k.to_string()},
              {"fine_interior_dim", k.fine_interior_dim},
              {"general_type", k.general_type}};
}

Json to_json(const PolytopeClassification &c) {
  return Json{{"empty_polytope", c.is_empty_polytope},
              {"empty_simplex", c.is_empty_simplex},
              {"hollow", c.is_hollow},
              {"relatively_empty", c.is_relatively_empty},
              {"lattice_points", c.lattice_point_count},
              {"interior_points", c.interior_point_count}};
}

Json to_json(const ClassElement &c) {
  Json t = Json::array();
  for (const Int &x : c.torsion)
    t.push_back(to_json(x));
  return Json{{"free", to_json(c.free)}, {"torsion", t}};
}

Json to_json(const DivisorClassGroup &G) {
  Json tors = Json::array(), degs = Json::array();
  for (const Int &x : G.torsion)
    tors.push_back(to_json(x));
  for (const ClassElement &c : G.ray_degrees)
    degs.push_back(to_json(c));
  return Json{{"group", G.to_string()},
              {"free_rank", G.free_rank},
              {"torsion", tors},
              {"ray_degrees", degs},
              {"ample", to_json(G.ample)}};
}

Json to_json(const ConditionMReport &r, const NormalFan &F) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    Json w = nullptr;
    if (r.witnesses[i])
      w = to_json(IntVector(r.witnesses[i]->begin(), r.witnesses[i]->end()));
    rows.push_back(Json{{"ray", to_json(F.rays[i])}, {"ord", to_json(F.ord[i])}, {"witness", w}});
  }
  return Json{{"mode", r.mode == ConditionMMode::Reduced ? "reduced" : "unrestricted"},
              {"holds", r.holds},
              {"rays", rows}};
}

Json to_json(const HodgeRow &h) {
  Json closed = Json::array(), sum = Json::array();
  for (const Int &x : h.closed)
    closed.push_back(to_json(x));
  for (const Int &x : h.face_sum)
    sum.push_back(to_json(x));
  return Json{{"n", h.n}, {"closed_form", closed}, {"face_sum", sum}, {"agree", h.agree()}};
}

Json to_json(const Subdivision &S) {
  Json cells = Json::array();
  for (const Cell &c : S.cells)
    cells.push_back(
        Json{{"dim", c.dim}, {"boundary", c.boundary}, {"vertices", polytope_json(c.polytope)}});
  Json maximal = Json::array();
  for (const LatticePolytope &c : S.maximal_cells)
    maximal.push_back(polytope_json(c));
  Json j{{"support", polytope_json(S.support)}, {"cells", cells}, {"maximal_cells", maximal}};
  if (S.heights) {
    Json hs = Json::array();
    for (const auto &[p, h] : *S.heights)
      hs.push_back(Json{{"point", to_json(p)}, {"height", to_json(h)}});
    j["heights"] = hs;
  }
  return j;
}

Json to_json(const ValidationReport &v) {
  return Json{{"ok", v.ok()},
              {"cover", v.cover},
              {"faces", v.faces},
              {"integral", v.integral},
              {"witness_affine", v.witness_affine},
              {"witness_convex", v.witness_convex},
              {"problems", v.problems}};
}

Json to_json(const Ledger &L) {
  Json entries = Json::array();
  for (const LedgerEntry &e : L.entries)
    entries.push_back(Json{{"label", e.label},
                           {"kind", to_string(e.kind)},
                           {"coefficient", to_json(e.coefficient)},
                           {"justification", e.justification},
                           {"cells", e.cells},
                           {"representative",
                            e.representative.valid() ? polytope_json(e.representative) : Json()}});
  return Json{{"dim", L.dim}, {"entries", entries}, {"sum", L.to_string()}};
}

Json to_json(const Verdict &v) {
  return Json{{"verdict", to_string(v.kind)}, {"justification", v.justification}};
}

Json to_json(const BoundsRow &r) {
  return Json{{"n", r.n},
              {"degree", to_json(r.degree)},
              {"r_min", to_json(r.r_min)},
              {"r_max", to_json(r.r_max)},
              {"N_min", to_json(r.N_min)},
              {"N_max", to_json(r.N_max)},
              {"r_max_formula", r.r_max_formula},
              {"r_max_formula_value", to_json(r.r_max_formula_value)},
              {"baseline_N_max", to_json(r.baseline_N_max)}};
}

Json to_json(const GridCell &c) {
  return Json{{"N", c.N}, {"degree", c.degree}, {"status", to_string(c.status)}};
}

} // namespace toricsr::io
