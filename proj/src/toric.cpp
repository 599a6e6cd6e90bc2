#include "toricsr/toric.hpp"

#include "toricsr/cone.hpp"

#include <algorithm>
#include <set>

namespace toricsr {

namespace {

Int mod_nonneg(const Int &a, const Int &m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntMatrix integral_inverse(const IntMatrix &A) {
  RatMatrix R = inverse(A);
  IntMatrix M(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (R[i][j].get_den() != 1)
        throw InternalConsistencyError("inverse of a unimodular matrix is not integral");
      M(i, j) = R[i][j].get_num();
    }
  return M;
}

void require_full_dimensional(const LatticePolytope &P, const char *what) {
  if (!P.is_full_dimensional())
    throw PreconditionViolation(std::string(what) +
                                " needs a full-dimensional polytope; normalize it first");
}

// A cone expressed in coordinates of the lattice of its linear span.
struct SpanFrame {
  std::size_t d = 0, r = 0;
  IntMatrix from_span; // d×d unimodular; x = from_span * (y, 0)
  std::vector<IntVector> gens;

  IntVector lift(const IntVector &y) const {
    IntVector z = y;
    z.resize(d);
    return from_span * z;
  }
};

SpanFrame span_frame(const std::vector<IntVector> &gens, std::size_t d) {
  SpanFrame f;
  f.d = d;
  std::vector<IntVector> nz;
  for (const IntVector &g : gens) {
    if (g.size() != d)
      throw DimensionMismatch("cone generators of mixed length");
    if (!is_zero(g))
      nz.push_back(g);
  }
  if (nz.empty()) {
    f.from_span = IntMatrix::identity(d);
    return f;
  }
  HermiteDecomposition h = hermite_form(IntMatrix::from_columns(nz, d));
  f.r = h.rank;
  f.from_span = integral_inverse(h.U);
  for (const IntVector &g : nz) {
    IntVector y = h.U * g;
    y.resize(f.r);
    f.gens.push_back(std::move(y));
  }
  return f;
}

struct PointedCone {
  std::vector<IntVector> facets;  // inner normals, full-dimensional cone in Z^r
  std::vector<IntVector> extreme; // primitive extreme ray generators
};

PointedCone pointed_cone(const std::vector<IntVector> &gens, std::size_t r) {
  PointedCone c;
  ExtremeRays dual = extreme_rays(gens, r);
  if (rank(dual.rays) < r)
    throw UnsupportedInput("cone contains a line");
  c.facets = dual.rays;
  std::set<IntVector> seen;
  for (const IntVector &g : gens) {
    std::vector<IntVector> tight;
    for (const IntVector &n : c.facets)
      if (dot(n, g) == 0)
        tight.push_back(n);
    if (r == 1 || (tight.size() + 1 >= r && rank(tight) + 1 == r)) {
      IntVector p = primitive(g);
      if (seen.insert(p).second)
        c.extreme.push_back(std::move(p));
    }
  }
  return c;
}

// Lattice points of the half-open parallelepiped spanned by the columns of G.
std::vector<IntVector> parallelepiped_points(const std::vector<IntVector> &cols, std::size_t r) {
  IntMatrix G = IntMatrix::from_columns(cols, r);
  SmithDecomposition s = smith_form(G);
  IntMatrix Uinv = integral_inverse(s.U);
  RatMatrix Ginv = inverse(G);
  std::vector<Int> mods(r);
  for (std::size_t i = 0; i < r; ++i)
    mods[i] = s.S(i, i);
  std::vector<IntVector> out;
  IntVector y(r);
  for (;;) {
    IntVector x = Uinv * y;
    RatVector lam = mul(Ginv, to_rat(x));
    RatVector frac(r);
    for (std::size_t i = 0; i < r; ++i)
      frac[i] = lam[i] - floor_rat(lam[i]);
    RatVector p(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        p[i] += G(i, j) * frac[j];
    IntVector q(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (p[i].get_den() != 1)
        throw InternalConsistencyError("parallelepiped representative is not integral");
      q[i] = p[i].get_num();
    }
    if (!is_zero(q))
      out.push_back(std::move(q));
    std::size_t k = r;
    bool done = true;
    while (k-- > 0) {
      if (y[k] + 1 < mods[k]) {
        ++y[k];
        done = false;
        break;
      }
      y[k] = 0;
    }
    if (done)
      break;
  }
  return out;
}

std::vector<IntVector> candidates_in_span(const PointedCone &c, std::size_t r, Exec exec) {
  std::vector<std::vector<std::size_t>> simplices = placing_triangulation(c.extreme);
  Int total = 0;
  for (const auto &s : simplices) {
    std::vector<IntVector> cols;
    for (std::size_t i : s)
      cols.push_back(c.extreme[i]);
    total += abs(determinant(IntMatrix::from_columns(cols, r)));
  }
  if (total > Int(static_cast<unsigned long>(kDefaultPointLimit)))
    throw ResourceLimitExceeded("Hilbert basis candidate set exceeds " +
                                std::to_string(kDefaultPointLimit) + " points");
  std::vector<std::vector<IntVector>> parts(simplices.size());
  const long ns = static_cast<long>(simplices.size());
  auto work = [&](long i) {
    std::vector<IntVector> cols;
    for (std::size_t j : simplices[static_cast<std::size_t>(i)])
      cols.push_back(c.extreme[j]);
    parts[static_cast<std::size_t>(i)] = parallelepiped_points(cols, r);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < ns; ++i)
      work(i);
  } else {
    for (long i = 0; i < ns; ++i)
      work(i);
  }
  std::set<IntVector> all(c.extreme.begin(), c.extreme.end());
  for (auto &part : parts)
    for (auto &p : part)
      all.insert(std::move(p));
  return {all.begin(), all.end()};
}

} // namespace

std::vector<IntVector> hilbert_candidates(const RationalCone &C, Exec exec) {
  if (C.generators.empty())
    return {};
  SpanFrame f = span_frame(C.generators, C.generators.front().size());
  if (f.r == 0)
    return {};
  PointedCone pc = pointed_cone(f.gens, f.r);
  std::vector<IntVector> out;
  for (const IntVector &y : candidates_in_span(pc, f.r, exec))
    out.push_back(f.lift(y));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<IntVector> hilbert_basis(const RationalCone &C, Exec exec) {
  if (C.generators.empty())
    return {};
  SpanFrame f = span_frame(C.generators, C.generators.front().size());
  if (f.r == 0)
    return {};
  PointedCone pc = pointed_cone(f.gens, f.r);
  std::vector<IntVector> cands = candidates_in_span(pc, f.r, exec);

  IntVector grading = zero_vector(f.r);
  for (const IntVector &n : pc.facets)
    grading = add(grading, n);
  std::vector<std::pair<Int, IntVector>> graded;
  for (IntVector &x : cands)
    graded.emplace_back(dot(grading, x), std::move(x));
  std::sort(graded.begin(), graded.end(), [](const auto &a, const auto &b) {
    if (a.first != b.first)
      return a.first < b.first;
    return lex_less(a.second, b.second);
  });

  std::vector<std::pair<Int, IntVector>> basis;
  for (auto &[deg, x] : graded) {
    bool reducible = false;
    for (const auto &[hdeg, h] : basis) {
      if (hdeg >= deg)
        break;
      IntVector diff = sub(x, h);
      bool inside = true;
      for (const IntVector &n : pc.facets)
        if (dot(n, diff) < 0) {
          inside = false;
          break;
        }
      if (inside) {
        reducible = true;
        break;
      }
    }
    if (!reducible)
      basis.emplace_back(deg, std::move(x));
  }
  std::vector<IntVector> out;
  for (auto &b : basis)
    out.push_back(f.lift(b.second));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

NormalFan normal_fan(const LatticePolytope &P) {
  require_full_dimensional(P, "normal fan");
  NormalFan F;
  F.dim = P.ambient_dim();
  for (const IntHalfspace &h : P.chart_facets()) {
    F.rays.push_back(h.normal);
    F.ord.push_back(h.offset);
  }
  F.facet_vertices = P.facet_vertices();
  F.vertex_cones.assign(P.num_vertices(), {});
  for (std::size_t r = 0; r < F.facet_vertices.size(); ++r)
    for (std::size_t v : F.facet_vertices[r])
      F.vertex_cones[v].push_back(r);
  return F;
}

namespace {

// A normal violated at q: a nonzero lattice u with <q, u> - ord(u) < 1, the least such gap
// within the smallest of the bodies {u : <q - p, u> <= t}, t = 1/16, 1/4, 1, that contains one.
// Only a vertex that survives pays for the full body.
std::optional<IntVector> most_violated(const LatticePolytope &P, const RatVector &q) {
  const std::size_t n = P.ambient_dim();
  const Int L = lcm_of_denominators(q);
  std::vector<IntVector> normals;
  for (const IntVector &p : P.vertices()) {
    IntVector a(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rat c = (Rat(p[i]) - q[i]) * L;
      a[i] = c.get_num();
    }
    normals.push_back(std::move(a));
  }
  for (long t : {16, 4, 1}) {
    std::vector<RatHalfspace> hs;
    for (const IntVector &a : normals) {
      Rat off(-L, t);
      off.canonicalize();
      hs.push_back(RatHalfspace{a, off});
    }
    std::optional<IntVector> best;
    Rat best_gap = 1;
    for (const IntVector &u : RationalPolytope(n, std::move(hs)).lattice_points()) {
      if (is_zero(u))
        continue;
      Rat gap = dot(u, q) - Rat(ord(P, u));
      if (gap < best_gap) {
        best_gap = gap;
        best = u;
      }
    }
    if (best)
      return best;
  }
  return std::nullopt;
}

FineInteriorResult by_cutting_planes(const LatticePolytope &P, const NormalFan &F, Exec exec) {
  const std::size_t n = P.ambient_dim();
  std::vector<RatHalfspace> hs;
  for (std::size_t r = 0; r < F.rays.size(); ++r)
    hs.push_back(RatHalfspace{F.rays[r], Rat(F.ord[r] + 1)});
  RationalPolytope Q(n, hs);
  // Each round cuts a vertex with a normal from a fixed finite set, so the loop terminates.
  while (!Q.empty()) {
    const auto &vs = Q.vertices();
    std::vector<std::optional<IntVector>> cut(vs.size());
    const long nv = static_cast<long>(vs.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (long i = 0; i < nv; ++i)
        cut[static_cast<std::size_t>(i)] = most_violated(P, vs[static_cast<std::size_t>(i)]);
    } else {
      for (long i = 0; i < nv; ++i)
        cut[static_cast<std::size_t>(i)] = most_violated(P, vs[static_cast<std::size_t>(i)]);
    }
    std::set<IntVector> fresh;
    for (auto &u : cut)
      if (u)
        fresh.insert(*u);
    if (fresh.empty())
      break;
    hs = Q.halfspaces();
    for (const IntVector &u : fresh)
      hs.push_back(RatHalfspace{u, Rat(ord(P, u) + 1)});
    Q = RationalPolytope(n, std::move(hs));
  }
  FineInteriorResult res;
  res.polytope = std::move(Q);
  res.dim = res.polytope.dim();
  res.is_lattice = !res.polytope.empty() && res.polytope.is_lattice();
  return res;
}

} // namespace

FineInteriorResult fine_interior(const LatticePolytope &P, FineInteriorGenerators gens, Exec exec) {
  require_full_dimensional(P, "Fine interior");
  const std::size_t n = P.ambient_dim();
  NormalFan F = normal_fan(P);
  if (gens == FineInteriorGenerators::CuttingPlane)
    return by_cutting_planes(P, F, exec);
  std::vector<std::vector<std::size_t>> cones = F.vertex_cones;
  if (gens == FineInteriorGenerators::AllFaceCones) {
    cones.clear();
    const auto &levels = P.face_sets();
    for (std::size_t k = 0; k < n; ++k)
      for (const auto &face : levels[k]) {
        std::vector<std::size_t> rays;
        for (std::size_t r = 0; r < F.facet_vertices.size(); ++r)
          if (std::includes(F.facet_vertices[r].begin(), F.facet_vertices[r].end(), face.begin(),
                            face.end()))
            rays.push_back(r);
        cones.push_back(std::move(rays));
      }
  }
  std::set<IntVector> normals;
  for (const auto &cone : cones) {
    RationalCone C;
    for (std::size_t r : cone)
      C.generators.push_back(F.rays[r]);
    for (IntVector &h : hilbert_basis(C, exec))
      normals.insert(std::move(h));
  }
  std::vector<RatHalfspace> hs;
  for (const IntVector &u : normals)
    hs.push_back(RatHalfspace{u, Rat(ord(P, u) + 1)});
  FineInteriorResult res;
  res.polytope = RationalPolytope(n, std::move(hs));
  res.dim = res.polytope.dim();
  res.is_lattice = !res.polytope.empty() && res.polytope.is_lattice();
  return res;
}

std::string KodairaDimension::to_string() const {
  return negative_infinity ? std::string("-inf") : std::to_string(value);
}

KodairaDimension kodaira_dimension(const LatticePolytope &P) {
  if (P.dim() < 1)
    throw DegenerateInput("Kodaira dimension of a point");
  LatticePolytope Q = P.is_full_dimensional() ? P : normalize_full_dimensional(P).polytope;
  FineInteriorResult fi = fine_interior(Q);
  KodairaDimension k;
  k.fine_interior_dim = fi.dim;
  if (fi.empty())
    return k;
  k.negative_infinity = false;
  k.value = fi.dim < Q.dim() ? fi.dim : fi.dim - 1;
  k.general_type = k.value == Q.dim() - 1;
  return k;
}

SmoothnessReport is_smooth(const LatticePolytope &P) {
  require_full_dimensional(P, "smoothness test");
  const std::size_t n = P.ambient_dim();
  auto adj = vertex_adjacency(P);
  SmoothnessReport rep;
  rep.smooth = true;
  for (std::size_t v = 0; v < P.num_vertices(); ++v) {
    bool ok = adj[v].size() == n;
    if (ok) {
      std::vector<IntVector> dirs;
      for (std::size_t w : adj[v])
        dirs.push_back(primitive(sub(P.vertices()[w], P.vertices()[v])));
      ok = abs(determinant(IntMatrix::from_rows(dirs, n))) == 1;
    }
    rep.vertex_smooth.push_back(ok);
    rep.smooth = rep.smooth && ok;
  }
  return rep;
}

TorusDivisor polytope_divisor(const NormalFan &F) {
  TorusDivisor D;
  for (const Int &o : F.ord)
    D.push_back(-o);
  return D;
}

RationalPolytope divisor_polytope(const NormalFan &F, const TorusDivisor &D) {
  if (D.size() != F.rays.size())
    throw DimensionMismatch("divisor length differs from the number of rays");
  std::vector<RatHalfspace> hs;
  for (std::size_t r = 0; r < F.rays.size(); ++r)
    hs.push_back(RatHalfspace{F.rays[r], Rat(-D[r])});
  return RationalPolytope(F.dim, std::move(hs));
}

RationalPolytope facet_shift(const LatticePolytope &P, std::size_t rho) {
  NormalFan F = normal_fan(P);
  if (rho >= F.rays.size())
    throw PreconditionViolation("ray index out of range");
  TorusDivisor D = polytope_divisor(F);
  D[rho] -= 1;
  return divisor_polytope(F, D);
}

bool ClassElement::is_zero() const {
  return toricsr::is_zero(free) &&
         std::all_of(torsion.begin(), torsion.end(), [](const Int &x) { return x == 0; });
}

std::string ClassElement::to_string() const {
  std::string s = "(";
  bool first = true;
  for (const Int &x : free) {
    s += (first ? "" : ",") + toricsr::to_string(x);
    first = false;
  }
  s += ";";
  first = true;
  for (const Int &x : torsion) {
    s += (first ? "" : ",") + toricsr::to_string(x);
    first = false;
  }
  return s + ")";
}

std::string DivisorClassGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1)
    parts.push_back("Z");
  else if (free_rank > 1)
    parts.push_back("Z^" + std::to_string(free_rank));
  for (const Int &d : torsion)
    parts.push_back("Z/" + toricsr::to_string(d));
  if (parts.empty())
    return "0";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    s += " x " + parts[i];
  return s;
}

DivisorClassGroup class_group(const NormalFan &F) {
  const std::size_t R = F.rays.size(), n = F.dim;
  IntMatrix A = IntMatrix::from_rows(F.rays, n);
  SmithDecomposition s = smith_form(A);
  const std::size_t r = s.invariant_factors.size();
  DivisorClassGroup G;
  G.num_rays = R;
  for (std::size_t i = 0; i < r; ++i)
    if (s.invariant_factors[i] > 1) {
      G.torsion.push_back(s.invariant_factors[i]);
      G.torsion_forms.push_back(s.U.row(i));
    }
  G.free_rank = R - r;
  if (G.free_rank > 0) {
    std::vector<IntVector> free_rows;
    for (std::size_t i = r; i < R; ++i)
      free_rows.push_back(s.U.row(i));
    HermiteDecomposition h = hermite_form(IntMatrix::from_rows(free_rows, R));
    for (std::size_t i = 0; i < G.free_rank; ++i)
      G.free_forms.push_back(h.H.row(i));
  }
  for (std::size_t rho = 0; rho < R; ++rho) {
    TorusDivisor e(R);
    e[rho] = 1;
    G.ray_degrees.push_back(divisor_class(G, e));
  }
  G.ample = divisor_class(G, polytope_divisor(F));
  return G;
}

DivisorClassGroup class_group(const LatticePolytope &P) { return class_group(normal_fan(P)); }

ClassElement divisor_class(const DivisorClassGroup &G, const TorusDivisor &D) {
  if (D.size() != G.num_rays)
    throw DimensionMismatch("divisor length differs from the number of rays");
  ClassElement c;
  for (const IntVector &f : G.free_forms)
    c.free.push_back(dot(f, D));
  for (std::size_t i = 0; i < G.torsion.size(); ++i)
    c.torsion.push_back(mod_nonneg(dot(G.torsion_forms[i], D), G.torsion[i]));
  return c;
}

std::vector<Int> minkowski_weights(const LatticePolytope &P) {
  require_full_dimensional(P, "Minkowski weights");
  std::vector<Int> w;
  for (const auto &fv : P.facet_vertices()) {
    std::vector<IntVector> pts;
    for (std::size_t v : fv)
      pts.push_back(P.vertices()[v]);
    w.push_back(normalized_volume(LatticePolytope::hull(pts)));
  }
  return w;
}

} // namespace toricsr
