#include "toricsr/polytope.hpp"

#include "toricsr/cone.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace toricsr {

namespace {

struct LexLess {
  bool operator()(const IntVector &a, const IntVector &b) const { return lex_less(a, b); }
};

IntMatrix integral(const RatMatrix &R) {
  const std::size_t n = R.size();
  IntMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (R[i][j].get_den() != 1)
        throw InternalConsistencyError("expected an integral matrix");
      M(i, j) = R[i][j].get_num();
    }
  return M;
}

RatVector mul(const IntMatrix &A, const RatVector &x) {
  RatVector y(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      y[i] += A(i, j) * x[j];
  return y;
}

void check_dim(const IntVector &x, std::size_t n) {
  if (x.size() != n)
    throw DimensionMismatch("vector of length " + std::to_string(x.size()) + ", expected " +
                            std::to_string(n));
}

void check_dim(const RatVector &x, std::size_t n) {
  if (x.size() != n)
    throw DimensionMismatch("vector of length " + std::to_string(x.size()) + ", expected " +
                            std::to_string(n));
}

Int spread(const std::vector<IntVector> &pts, const IntVector &l) {
  Int lo = dot(l, pts.front()), hi = lo;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Int v = dot(l, pts[i]);
    if (v < lo)
      lo = v;
    if (v > hi)
      hi = v;
  }
  return hi - lo;
}

} // namespace

// ---------------------------------------------------------------- AffineUnimodularMap

AffineUnimodularMap::AffineUnimodularMap(IntMatrix linear, IntVector translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (linear_.rows() != linear_.cols() || linear_.rows() != translation_.size())
    throw DimensionMismatch("affine map with inconsistent shapes");
  if (!translation_.empty() && !is_unimodular(linear_))
    throw PreconditionViolation("linear part is not unimodular");
}

AffineUnimodularMap AffineUnimodularMap::identity(std::size_t n) {
  return AffineUnimodularMap(IntMatrix::identity(n), zero_vector(n));
}

AffineUnimodularMap AffineUnimodularMap::translation_by(IntVector t) {
  const std::size_t n = t.size();
  return AffineUnimodularMap(IntMatrix::identity(n), std::move(t));
}

IntVector AffineUnimodularMap::apply(const IntVector &x) const {
  check_dim(x, dim());
  return add(linear_ * x, translation_);
}

RatVector AffineUnimodularMap::apply(const RatVector &x) const {
  check_dim(x, dim());
  RatVector y = mul(linear_, x);
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] += translation_[i];
  return y;
}

AffineUnimodularMap AffineUnimodularMap::inverse() const {
  if (dim() == 0)
    return *this;
  IntMatrix inv = integral(toricsr::inverse(linear_));
  return AffineUnimodularMap(inv, neg(inv * translation_));
}

AffineUnimodularMap AffineUnimodularMap::then(const AffineUnimodularMap &next) const {
  if (next.dim() != dim())
    throw DimensionMismatch("composing affine maps of different dimensions");
  return AffineUnimodularMap(next.linear_ * linear_, next.apply(translation_));
}

IntVector AffineUnimodularMap::pull_back_dual(const IntVector &l) const {
  check_dim(l, dim());
  return linear_.transpose() * l;
}

// ---------------------------------------------------------------- LatticeChart

LatticeChart::LatticeChart(std::size_t ambient_dim, std::size_t dim,
                           AffineUnimodularMap to_standard)
    : ambient_dim_(ambient_dim), dim_(dim), to_standard_(std::move(to_standard)) {
  if (to_standard_.dim() != ambient_dim || dim > ambient_dim)
    throw DimensionMismatch("chart with inconsistent dimensions");
  from_standard_ = to_standard_.inverse();
  identity_ = dim == ambient_dim && to_standard_ == AffineUnimodularMap::identity(ambient_dim);
}

LatticeChart LatticeChart::identity(std::size_t n) {
  return LatticeChart(n, n, AffineUnimodularMap::identity(n));
}

LatticeChart LatticeChart::of_points(const std::vector<IntVector> &points) {
  if (points.empty())
    throw DegenerateInput("chart of an empty point set");
  const std::size_t n = points.front().size();
  IntVector origin = points.front();
  for (const IntVector &p : points) {
    check_dim(p, n);
    if (lex_less(p, origin))
      origin = p;
  }
  std::vector<IntVector> diffs;
  for (const IntVector &p : points)
    diffs.push_back(sub(p, origin));
  IntMatrix D = IntMatrix::from_columns(diffs, n);
  HermiteDecomposition h = hermite_form(D);
  if (h.rank == n)
    return identity(n);
  return LatticeChart(n, h.rank, AffineUnimodularMap(h.U, neg(h.U * origin)));
}

bool LatticeChart::in_span(const IntVector &x) const {
  check_dim(x, ambient_dim_);
  if (identity_)
    return true;
  IntVector y = to_standard_.apply(x);
  for (std::size_t i = dim_; i < ambient_dim_; ++i)
    if (y[i] != 0)
      return false;
  return true;
}

bool LatticeChart::in_span(const RatVector &x) const {
  check_dim(x, ambient_dim_);
  if (identity_)
    return true;
  RatVector y = to_standard_.apply(x);
  for (std::size_t i = dim_; i < ambient_dim_; ++i)
    if (y[i] != 0)
      return false;
  return true;
}

IntVector LatticeChart::forward(const IntVector &x) const {
  if (identity_) {
    check_dim(x, ambient_dim_);
    return x;
  }
  if (!in_span(x))
    throw PreconditionViolation("point outside the affine span of the chart");
  IntVector y = to_standard_.apply(x);
  y.resize(dim_);
  return y;
}

RatVector LatticeChart::forward(const RatVector &x) const {
  if (identity_) {
    check_dim(x, ambient_dim_);
    return x;
  }
  if (!in_span(x))
    throw PreconditionViolation("point outside the affine span of the chart");
  RatVector y = to_standard_.apply(x);
  y.resize(dim_);
  return y;
}

IntVector LatticeChart::backward(const IntVector &y) const {
  check_dim(y, dim_);
  if (identity_)
    return y;
  IntVector z = y;
  z.resize(ambient_dim_);
  return from_standard_.apply(z);
}

RatVector LatticeChart::backward(const RatVector &y) const {
  check_dim(y, dim_);
  if (identity_)
    return y;
  RatVector z = y;
  z.resize(ambient_dim_);
  return from_standard_.apply(z);
}

IntVector LatticeChart::dual_to_ambient(const IntVector &l) const {
  check_dim(l, dim_);
  if (identity_)
    return l;
  IntVector z = l;
  z.resize(ambient_dim_);
  return to_standard_.pull_back_dual(z);
}

// ---------------------------------------------------------------- LatticePolytope

struct LatticePolytope::Data {
  std::size_t ambient = 0;
  int dim = 0;
  std::vector<LatticePoint> vertices;
  LatticeChart chart;
  std::vector<IntVector> chart_vertices;
  std::vector<IntHalfspace> chart_facets;
  std::vector<std::vector<std::size_t>> facet_vertices;

  mutable std::once_flag faces_once;
  mutable std::vector<std::vector<std::vector<std::size_t>>> faces;
};

LatticePolytope LatticePolytope::hull(const std::vector<LatticePoint> &points) {
  if (points.empty())
    throw DegenerateInput("hull of an empty point set");
  const std::size_t n = points.front().size();
  for (const LatticePoint &p : points)
    if (p.size() != n)
      throw DimensionMismatch("points of mixed ambient dimension");
  std::vector<LatticePoint> pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto d = std::make_shared<Data>();
  d->ambient = n;
  d->chart = LatticeChart::of_points(pts);
  const std::size_t k = d->chart.dim();
  d->dim = static_cast<int>(k);

  std::vector<IntVector> cps;
  cps.reserve(pts.size());
  for (const LatticePoint &p : pts)
    cps.push_back(d->chart.forward(p));

  if (k == 0) {
    d->vertices = {pts.front()};
    d->chart_vertices = {cps.front()};
    LatticePolytope P;
    P.data_ = d;
    return P;
  }

  std::vector<IntVector> rows;
  rows.reserve(cps.size());
  for (const IntVector &y : cps) {
    IntVector r = y;
    r.push_back(1);
    rows.push_back(std::move(r));
  }
  ExtremeRays er = extreme_rays(rows, k + 1);

  struct Facet {
    IntHalfspace h;
    Bitset tight;
  };
  std::vector<Facet> fs;
  for (std::size_t r = 0; r < er.rays.size(); ++r) {
    IntVector a(er.rays[r].begin(), er.rays[r].begin() + static_cast<std::ptrdiff_t>(k));
    if (is_zero(a))
      continue;
    Int g = content(a);
    Int c = er.rays[r][k];
    for (Int &x : a)
      x /= g;
    fs.push_back(Facet{IntHalfspace{std::move(a), Int(-c / g)}, er.tight[r]});
  }
  std::sort(fs.begin(), fs.end(), [](const Facet &x, const Facet &y) {
    if (x.h.normal != y.h.normal)
      return lex_less(x.h.normal, y.h.normal);
    return x.h.offset < y.h.offset;
  });

  for (std::size_t i = 0; i < cps.size(); ++i) {
    std::vector<IntVector> normals;
    for (const Facet &f : fs)
      if (f.tight[i])
        normals.push_back(f.h.normal);
    if (normals.size() >= k && rank(normals) == k) {
      d->vertices.push_back(pts[i]);
      d->chart_vertices.push_back(cps[i]);
    }
  }
  for (const Facet &f : fs) {
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < d->chart_vertices.size(); ++v)
      if (dot(f.h.normal, d->chart_vertices[v]) == f.h.offset)
        on.push_back(v);
    d->chart_facets.push_back(f.h);
    d->facet_vertices.push_back(std::move(on));
  }
  LatticePolytope P;
  P.data_ = d;
  return P;
}

std::size_t LatticePolytope::ambient_dim() const {
  if (!data_)
    throw PreconditionViolation("empty polytope handle");
  return data_->ambient;
}

int LatticePolytope::dim() const {
  if (!data_)
    throw PreconditionViolation("empty polytope handle");
  return data_->dim;
}

const std::vector<LatticePoint> &LatticePolytope::vertices() const {
  if (!data_)
    throw PreconditionViolation("empty polytope handle");
  return data_->vertices;
}

const LatticeChart &LatticePolytope::chart() const {
  if (!data_)
    throw PreconditionViolation("empty polytope handle");
  return data_->chart;
}

const std::vector<IntVector> &LatticePolytope::chart_vertices() const {
  if (!data_)
    throw PreconditionViolation("empty polytope handle");
  return data_->chart_vertices;
}

const std::vector<IntHalfspace> &LatticePolytope::chart_facets() const {
  if (!data_)
    throw PreconditionViolation("empty polytope handle");
  return data_->chart_facets;
}

const std::vector<std::vector<std::size_t>> &LatticePolytope::facet_vertices() const {
  if (!data_)
    throw PreconditionViolation("empty polytope handle");
  return data_->facet_vertices;
}

const std::vector<std::vector<std::vector<std::size_t>>> &LatticePolytope::face_sets() const {
  if (!data_)
    throw PreconditionViolation("empty polytope handle");
  const Data &d = *data_;
  std::call_once(d.faces_once, [&d] {
    const int k = d.dim;
    std::vector<std::vector<std::vector<std::size_t>>> levels(static_cast<std::size_t>(k) + 1);
    std::vector<std::size_t> all(d.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i)
      all[i] = i;
    levels[static_cast<std::size_t>(k)] = {all};
    if (k >= 1)
      levels[static_cast<std::size_t>(k) - 1] = d.facet_vertices;
    for (int j = k - 2; j >= 0; --j) {
      std::set<std::vector<std::size_t>> found;
      for (const auto &F : levels[static_cast<std::size_t>(j) + 1])
        for (const auto &G : d.facet_vertices) {
          std::vector<std::size_t> I;
          std::set_intersection(F.begin(), F.end(), G.begin(), G.end(), std::back_inserter(I));
          if (I.size() < static_cast<std::size_t>(j) + 1 || I.size() == F.size())
            continue;
          if (found.count(I))
            continue;
          std::vector<IntVector> pts;
          for (std::size_t v : I)
            pts.push_back(d.chart_vertices[v]);
          if (affine_dimension(pts) == j)
            found.insert(std::move(I));
        }
      levels[static_cast<std::size_t>(j)].assign(found.begin(), found.end());
    }
    d.faces = std::move(levels);
  });
  return d.faces;
}

bool LatticePolytope::contains(const IntVector &x) const {
  check_dim(x, ambient_dim());
  if (!chart().in_span(x))
    return false;
  IntVector y = chart().forward(x);
  for (const IntHalfspace &h : chart_facets())
    if (dot(h.normal, y) < h.offset)
      return false;
  return true;
}

bool LatticePolytope::contains(const RatVector &x) const {
  check_dim(x, ambient_dim());
  if (!chart().in_span(x))
    return false;
  RatVector y = chart().forward(x);
  for (const IntHalfspace &h : chart_facets())
    if (dot(h.normal, y) < h.offset)
      return false;
  return true;
}

bool LatticePolytope::in_relative_interior(const IntVector &x) const {
  check_dim(x, ambient_dim());
  if (!chart().in_span(x))
    return false;
  IntVector y = chart().forward(x);
  for (const IntHalfspace &h : chart_facets())
    if (dot(h.normal, y) <= h.offset)
      return false;
  return true;
}

bool LatticePolytope::operator==(const LatticePolytope &o) const {
  return ambient_dim() == o.ambient_dim() && vertices() == o.vertices();
}

// ---------------------------------------------------------------- RationalPolytope

RationalPolytope::RationalPolytope(std::size_t ambient_dim, std::vector<RatHalfspace> halfspaces,
                                   std::vector<RatVector> vertices, int dim)
    : ambient_dim_(ambient_dim), halfspaces_(std::move(halfspaces)),
      vertices_(std::move(vertices)), dim_(dim) {}

RationalPolytope::RationalPolytope(std::size_t ambient_dim, std::vector<RatHalfspace> halfspaces)
    : ambient_dim_(ambient_dim) {
  const std::size_t n = ambient_dim;
  std::map<IntVector, Rat, LexLess> merged;
  bool infeasible = false;
  for (RatHalfspace &h : halfspaces) {
    check_dim(h.normal, n);
    if (is_zero(h.normal)) {
      if (h.offset > 0)
        infeasible = true;
      continue;
    }
    Int g = content(h.normal);
    IntVector a = primitive(h.normal);
    Rat c = h.offset / g;
    c.canonicalize();
    auto it = merged.find(a);
    if (it == merged.end())
      merged.emplace(std::move(a), c);
    else if (c > it->second)
      it->second = c;
  }
  for (auto &[a, c] : merged)
    halfspaces_.push_back(RatHalfspace{a, c});
  if (infeasible)
    return;

  std::vector<IntVector> normals;
  for (const RatHalfspace &h : halfspaces_)
    normals.push_back(h.normal);
  if (rank(normals) < n)
    throw UnsupportedInput("halfspace normals do not span; the region is not a bounded polytope");

  std::vector<IntVector> rows;
  for (const RatHalfspace &h : halfspaces_) {
    IntVector r = scale(h.normal, h.offset.get_den());
    r.push_back(-h.offset.get_num());
    rows.push_back(std::move(r));
  }
  IntVector trow = zero_vector(n + 1);
  trow[n] = 1;
  rows.push_back(trow);
  ExtremeRays er = extreme_rays(rows, n + 1);
  bool recession = false;
  for (const IntVector &r : er.rays) {
    if (r[n] == 0) {
      recession = true;
      continue;
    }
    RatVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = Rat(r[i], r[n]);
      v[i].canonicalize();
    }
    vertices_.push_back(std::move(v));
  }
  if (vertices_.empty())
    return;
  if (recession)
    throw UnsupportedInput("halfspace system is unbounded");
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  dim_ = affine_dimension(vertices_);
  if (static_cast<std::size_t>(dim_) == n && n > 0) {
    std::vector<RatHalfspace> kept;
    for (const RatHalfspace &h : halfspaces_) {
      std::vector<RatVector> on;
      for (const RatVector &v : vertices_)
        if (dot(h.normal, v) == h.offset)
          on.push_back(v);
      if (affine_dimension(on) == static_cast<int>(n) - 1)
        kept.push_back(h);
    }
    halfspaces_ = std::move(kept);
  }
}

bool RationalPolytope::is_lattice() const {
  for (const RatVector &v : vertices_)
    for (const Rat &x : v)
      if (x.get_den() != 1)
        return false;
  return true;
}

std::optional<LatticePolytope> RationalPolytope::to_lattice_polytope() const {
  if (empty() || !is_lattice())
    return std::nullopt;
  std::vector<IntVector> pts;
  for (const RatVector &v : vertices_) {
    IntVector p;
    for (const Rat &x : v)
      p.push_back(x.get_num());
    pts.push_back(std::move(p));
  }
  return LatticePolytope::hull(pts);
}

bool RationalPolytope::contains(const IntVector &x) const {
  check_dim(x, ambient_dim_);
  if (empty())
    return false;
  for (const RatHalfspace &h : halfspaces_)
    if (dot(h.normal, x) < h.offset)
      return false;
  return true;
}

bool RationalPolytope::contains(const RatVector &x) const {
  check_dim(x, ambient_dim_);
  if (empty())
    return false;
  for (const RatHalfspace &h : halfspaces_)
    if (dot(h.normal, x) < h.offset)
      return false;
  return true;
}

namespace {

EnumerationProblem enumeration_problem(const RationalPolytope &R) {
  EnumerationProblem prob;
  const std::size_t n = R.ambient_dim();
  prob.lower.assign(n, Int(0));
  prob.upper.assign(n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    Rat lo = R.vertices().front()[i], hi = lo;
    for (const RatVector &v : R.vertices()) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    prob.lower[i] = ceil_rat(lo);
    prob.upper[i] = floor_rat(hi);
  }
  for (const RatHalfspace &h : R.halfspaces()) {
    prob.normals.push_back(h.normal);
    prob.offsets.push_back(ceil_rat(h.offset));
  }
  return prob;
}

} // namespace

std::vector<LatticePoint> RationalPolytope::lattice_points(std::size_t limit) const {
  if (empty())
    return {};
  return enumerate_lattice_points(enumeration_problem(*this), limit, Exec::Parallel);
}

bool RationalPolytope::has_lattice_point() const {
  if (empty())
    return false;
  return toricsr::has_lattice_point(enumeration_problem(*this));
}

// ---------------------------------------------------------------- operations

int affine_dimension(const std::vector<IntVector> &points) {
  if (points.empty())
    return -1;
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    IntVector d = sub(points[i], points.front());
    if (!is_zero(d))
      diffs.push_back(std::move(d));
  }
  return diffs.empty() ? 0 : static_cast<int>(rank(diffs));
}

int affine_dimension(const std::vector<RatVector> &points) {
  if (points.empty())
    return -1;
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RatVector d(points[i].size());
    bool nonzero = false;
    for (std::size_t j = 0; j < d.size(); ++j) {
      d[j] = points[i][j] - points.front()[j];
      if (d[j] != 0)
        nonzero = true;
    }
    if (nonzero)
      diffs.push_back(primitive_direction(d));
  }
  return diffs.empty() ? 0 : static_cast<int>(rank(diffs));
}

std::vector<IntHalfspace> ambient_halfspaces(const LatticePolytope &P) {
  if (P.is_full_dimensional())
    return P.chart_facets();
  const LatticeChart &C = P.chart();
  const std::size_t n = P.ambient_dim(), k = C.dim();
  const IntMatrix &L = C.to_standard().linear();
  const IntVector &c = C.to_standard().translation();
  std::vector<IntHalfspace> out;
  for (const IntHalfspace &h : P.chart_facets()) {
    IntVector l = h.normal;
    l.resize(n);
    out.push_back(IntHalfspace{L.transpose() * l, h.offset - dot(l, c)});
  }
  for (std::size_t i = k; i < n; ++i) {
    IntVector row = L.row(i);
    out.push_back(IntHalfspace{row, Int(-c[i])});
    out.push_back(IntHalfspace{neg(row), c[i]});
  }
  return out;
}

RationalPolytope facets(const LatticePolytope &P) {
  std::vector<RatHalfspace> hs;
  for (const IntHalfspace &h : ambient_halfspaces(P))
    hs.push_back(RatHalfspace{h.normal, Rat(h.offset)});
  std::vector<RatVector> vs;
  for (const LatticePoint &v : P.vertices())
    vs.push_back(to_rat(v));
  return RationalPolytope(P.ambient_dim(), std::move(hs), std::move(vs), P.dim());
}

Int ord(const LatticePolytope &P, const IntVector &n) {
  check_dim(n, P.ambient_dim());
  Int best = dot(n, P.vertices().front());
  for (const LatticePoint &v : P.vertices())
    best = std::min(best, Int(dot(n, v)));
  return best;
}

std::vector<LatticePoint> lattice_points(const LatticePolytope &P, bool interior_only,
                                         std::size_t limit, Exec exec) {
  if (P.dim() == 0)
    return {P.vertices().front()};
  const std::vector<IntVector> &cv = P.chart_vertices();
  const std::size_t k = static_cast<std::size_t>(P.dim());
  EnumerationProblem prob;
  prob.lower = cv.front();
  prob.upper = cv.front();
  for (const IntVector &v : cv)
    for (std::size_t i = 0; i < k; ++i) {
      if (v[i] < prob.lower[i])
        prob.lower[i] = v[i];
      if (v[i] > prob.upper[i])
        prob.upper[i] = v[i];
    }
  for (const IntHalfspace &h : P.chart_facets()) {
    prob.normals.push_back(h.normal);
    prob.offsets.push_back(interior_only ? Int(h.offset + 1) : h.offset);
  }
  std::vector<IntVector> pts = enumerate_lattice_points(prob, limit, exec);
  if (P.chart().is_identity())
    return pts;
  for (IntVector &p : pts)
    p = P.chart().backward(p);
  std::sort(pts.begin(), pts.end(), lex_less);
  return pts;
}

std::vector<std::vector<std::vector<std::size_t>>> face_index_sets(const LatticePolytope &P) {
  return P.face_sets();
}

std::vector<LatticePolytope> faces(const LatticePolytope &P, int k) {
  if (k < 0 || k > P.dim())
    throw PreconditionViolation("face dimension out of range");
  std::vector<LatticePolytope> out;
  for (const auto &F : P.face_sets()[static_cast<std::size_t>(k)]) {
    std::vector<IntVector> pts;
    for (std::size_t v : F)
      pts.push_back(P.vertices()[v]);
    out.push_back(LatticePolytope::hull(pts));
  }
  return out;
}

std::vector<std::size_t> face_vector(const LatticePolytope &P) {
  std::vector<std::size_t> f;
  for (const auto &level : P.face_sets())
    f.push_back(level.size());
  return f;
}

std::vector<std::vector<std::size_t>> vertex_adjacency(const LatticePolytope &P) {
  std::vector<std::vector<std::size_t>> adj(P.num_vertices());
  if (P.dim() < 1)
    return adj;
  for (const auto &e : P.face_sets()[1]) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto &a : adj)
    std::sort(a.begin(), a.end());
  return adj;
}

Int width_along(const LatticePolytope &P, const IntVector &l) {
  check_dim(l, P.ambient_dim());
  return spread(P.vertices(), l);
}

WidthResult lattice_width(const LatticePolytope &P, Exec exec) {
  const int kd = P.dim();
  if (kd == 0)
    throw DegenerateInput("lattice width of a point");
  const std::size_t k = static_cast<std::size_t>(kd);
  const std::vector<IntVector> &cv = P.chart_vertices();

  Int best;
  IntVector cert;
  for (std::size_t j = 0; j < k; ++j) {
    IntVector e = unit_vector(k, j);
    Int w = spread(cv, e);
    if (cert.empty() || w < best) {
      best = w;
      cert = e;
    }
  }
  if (best == 1)
    return WidthResult{best, P.chart().dual_to_ambient(cert)};

  // Facet normals tighten the search bound without changing which certificate wins.
  Int bound = best - 1;
  for (const IntHalfspace &h : P.chart_facets())
    bound = std::min(bound, spread(cv, h.normal));

  // Independent vertex differences, longest first, keep the search region small.
  std::vector<IntVector> diffs;
  for (std::size_t i = 0; i < cv.size(); ++i)
    for (std::size_t j = i + 1; j < cv.size(); ++j)
      diffs.push_back(sub(cv[j], cv[i]));
  std::stable_sort(diffs.begin(), diffs.end(), [](const IntVector &a, const IntVector &b) {
    return dot(a, a) > dot(b, b);
  });
  std::vector<IntVector> basis;
  for (std::size_t i : independent_rows(diffs))
    basis.push_back(diffs[i]);

  // Every candidate l satisfies |<l, v_i>| <= bound. With V the matrix of the v_i as rows,
  // substitute l = W^T l' where W reduces the rows of V^T, so the region is nearly a cube.
  IntMatrix V = IntMatrix::from_rows(basis, k);
  LllReduction red = lll_reduce(V.transpose().row_vectors());
  IntMatrix Wt = red.transform.transpose();
  IntMatrix R = V * Wt;
  RatMatrix Rinv = inverse(R);
  EnumerationProblem prob;
  prob.lower.assign(k, Int(0));
  prob.upper.assign(k, Int(0));
  for (std::size_t j = 0; j < k; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < k; ++i)
      s += abs(Rinv[j][i]);
    Int b = floor_rat(s * bound);
    prob.lower[j] = -b;
    prob.upper[j] = b;
  }
  for (const IntVector &r : R.row_vectors()) {
    prob.normals.push_back(r);
    prob.offsets.push_back(-bound);
    prob.normals.push_back(neg(r));
    prob.offsets.push_back(-bound);
  }
  std::vector<IntVector> cands;
  for (const IntVector &lp : enumerate_lattice_points(prob, kDefaultPointLimit, exec)) {
    IntVector l = Wt * lp;
    auto nz = std::find_if(l.begin(), l.end(), [](const Int &x) { return x != 0; });
    if (nz == l.end() || *nz < 0 || content(l) != 1)
      continue;
    cands.push_back(std::move(l));
  }
  std::sort(cands.begin(), cands.end(), lex_less);
  std::vector<Int> widths(cands.size());
  const long nc = static_cast<long>(cands.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < nc; ++i)
      widths[static_cast<std::size_t>(i)] = spread(cv, cands[static_cast<std::size_t>(i)]);
  } else {
    for (long i = 0; i < nc; ++i)
      widths[static_cast<std::size_t>(i)] = spread(cv, cands[static_cast<std::size_t>(i)]);
  }
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (widths[i] < best) {
      best = widths[i];
      cert = cands[i];
    }
  return WidthResult{best, P.chart().dual_to_ambient(cert)};
}

Normalized normalize_full_dimensional(const LatticePolytope &P) {
  return Normalized{LatticePolytope::hull(P.chart_vertices()), P.chart()};
}

Int normalized_volume(const LatticePolytope &P) {
  if (P.dim() == 0)
    return 1;
  std::vector<IntVector> gens;
  for (const IntVector &v : P.chart_vertices()) {
    IntVector g = v;
    g.push_back(1);
    gens.push_back(std::move(g));
  }
  Int vol = 0;
  for (const auto &s : placing_triangulation(gens)) {
    std::vector<IntVector> cols;
    for (std::size_t i : s)
      cols.push_back(gens[i]);
    vol += abs(determinant(IntMatrix::from_rows(cols)));
  }
  return vol;
}

PolytopeClassification classify(const LatticePolytope &P) {
  PolytopeClassification c;
  std::vector<LatticePoint> pts = lattice_points(P);
  c.lattice_point_count = pts.size();
  c.is_empty_polytope = pts.size() == P.num_vertices();
  c.is_empty_simplex = c.is_empty_polytope && P.is_simplex();
  if (P.dim() == 0) {
    c.is_hollow = true;
    c.interior_point_count = 1;
    return c;
  }
  std::vector<IntVector> cps;
  for (const LatticePoint &p : pts)
    cps.push_back(P.chart().forward(p));
  const auto &fs = P.chart_facets();
  for (const IntVector &y : cps) {
    bool interior = true;
    for (const IntHalfspace &h : fs)
      if (dot(h.normal, y) == h.offset) {
        interior = false;
        break;
      }
    if (interior)
      ++c.interior_point_count;
  }
  c.is_hollow = c.interior_point_count == 0;
  for (std::size_t f = 0; f < fs.size(); ++f) {
    std::size_t off = 0;
    for (const IntVector &y : cps)
      if (dot(fs[f].normal, y) != fs[f].offset)
        ++off;
    if (off == 1)
      c.relatively_empty_facets.push_back(f);
  }
  c.is_relatively_empty = !c.relatively_empty_facets.empty();
  return c;
}

bool Fingerprint::operator<(const Fingerprint &o) const {
  return std::tie(dim, vertices, lattice_points, interior_points, faces, width, volume) <
         std::tie(o.dim, o.vertices, o.lattice_points, o.interior_points, o.faces, o.width,
                  o.volume);
}

Fingerprint fingerprint(const LatticePolytope &P) {
  Fingerprint f;
  f.dim = P.dim();
  f.vertices = P.num_vertices();
  PolytopeClassification c = classify(P);
  f.lattice_points = c.lattice_point_count;
  f.interior_points = c.interior_point_count;
  f.faces = face_vector(P);
  f.width = P.dim() == 0 ? Int(0) : lattice_width(P).width;
  f.volume = normalized_volume(P);
  return f;
}

bool maps_onto(const AffineUnimodularMap &T, const LatticePolytope &P, const LatticePolytope &Q) {
  if (T.dim() != P.ambient_dim() || P.ambient_dim() != Q.ambient_dim() ||
      P.num_vertices() != Q.num_vertices())
    return false;
  std::vector<IntVector> img;
  for (const LatticePoint &v : P.vertices())
    img.push_back(T.apply(v));
  std::sort(img.begin(), img.end(), lex_less);
  return img == Q.vertices();
}

namespace {

// Search for A, t on chart coordinates with A * P + t = Q, anchored at an edge frame of P.
class FrameSearch {
public:
  FrameSearch(const LatticePolytope &P, const LatticePolytope &Q, std::size_t budget)
      : cp_(P.chart_vertices()), cq_(Q.chart_vertices()), adjp_(vertex_adjacency(P)),
        adjq_(vertex_adjacency(Q)), budget_(budget), k_(static_cast<std::size_t>(P.dim())) {
    for (const IntVector &v : cq_)
      qset_.insert(v);
  }

  EquivalenceStatus run() {
    std::size_t p0 = 0;
    for (std::size_t i = 0; i < cp_.size(); ++i)
      if (adjp_[i].size() < adjp_[p0].size())
        p0 = i;
    p0_ = p0;
    std::vector<IntVector> dirs;
    for (std::size_t j : adjp_[p0])
      dirs.push_back(sub(cp_[j], cp_[p0]));
    for (std::size_t i : independent_rows(dirs))
      frame_.push_back(adjp_[p0][i]);
    if (frame_.size() != k_)
      throw InternalConsistencyError("vertex edges do not span");
    std::vector<IntVector> cols;
    for (std::size_t j : frame_)
      cols.push_back(sub(cp_[j], cp_[p0]));
    MP_ = IntMatrix::from_columns(cols, k_);
    detp_ = abs(determinant(MP_));
    MPinv_ = inverse(MP_);

    for (std::size_t q0 = 0; q0 < cq_.size(); ++q0) {
      if (adjq_[q0].size() != adjp_[p0].size())
        continue;
      q0_ = q0;
      chosen_.clear();
      if (extend())
        return EquivalenceStatus::Found;
      if (exhausted_)
        return EquivalenceStatus::NotFoundBudget;
    }
    return EquivalenceStatus::NotEquivalent;
  }

  IntMatrix A;
  IntVector t;

private:
  bool extend() {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const std::size_t i = chosen_.size();
    if (i == k_)
      return check();
    for (std::size_t j : adjq_[q0_]) {
      if (std::find(chosen_.begin(), chosen_.end(), j) != chosen_.end())
        continue;
      if (adjq_[j].size() != adjp_[frame_[i]].size())
        continue;
      chosen_.push_back(j);
      if (extend())
        return true;
      chosen_.pop_back();
      if (exhausted_)
        return false;
    }
    return false;
  }

  bool check() {
    std::vector<IntVector> cols;
    for (std::size_t j : chosen_)
      cols.push_back(sub(cq_[j], cq_[q0_]));
    IntMatrix MQ = IntMatrix::from_columns(cols, k_);
    if (abs(determinant(MQ)) != detp_)
      return false;
    IntMatrix cand(k_, k_);
    for (std::size_t r = 0; r < k_; ++r)
      for (std::size_t c = 0; c < k_; ++c) {
        Rat s = 0;
        for (std::size_t m = 0; m < k_; ++m)
          s += MQ(r, m) * MPinv_[m][c];
        if (s.get_den() != 1)
          return false;
        cand(r, c) = s.get_num();
      }
    IntVector tt = sub(cq_[q0_], cand * cp_[p0_]);
    for (const IntVector &v : cp_)
      if (!qset_.count(add(cand * v, tt)))
        return false;
    A = std::move(cand);
    t = std::move(tt);
    return true;
  }

  const std::vector<IntVector> &cp_, &cq_;
  std::vector<std::vector<std::size_t>> adjp_, adjq_;
  std::set<IntVector, LexLess> qset_;
  std::size_t budget_, k_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::size_t p0_ = 0, q0_ = 0;
  std::vector<std::size_t> frame_, chosen_;
  IntMatrix MP_;
  RatMatrix MPinv_;
  Int detp_;
};

} // namespace

EquivalenceResult unimodular_equivalence(const LatticePolytope &P, const LatticePolytope &Q,
                                         std::size_t node_budget) {
  EquivalenceResult res;
  if (P.ambient_dim() != Q.ambient_dim()) {
    res.reason = "ambient dimensions differ";
    return res;
  }
  if (!(fingerprint(P) == fingerprint(Q))) {
    res.reason = "invariant fingerprints differ";
    return res;
  }
  const std::size_t n = P.ambient_dim(), k = static_cast<std::size_t>(P.dim());
  IntMatrix A;
  IntVector t;
  if (k == 0) {
    A = IntMatrix(0, 0);
  } else {
    FrameSearch search(P, Q, node_budget);
    EquivalenceStatus st = search.run();
    if (st != EquivalenceStatus::Found) {
      res.status = st;
      res.reason = st == EquivalenceStatus::NotFoundBudget ? "search budget exhausted"
                                                            : "no edge frame extends to a map";
      return res;
    }
    A = std::move(search.A);
    t = std::move(search.t);
  }
  IntMatrix block = IntMatrix::identity(n);
  IntVector shift = zero_vector(n);
  for (std::size_t i = 0; i < k; ++i) {
    shift[i] = t[i];
    for (std::size_t j = 0; j < k; ++j)
      block(i, j) = A(i, j);
  }
  AffineUnimodularMap T = P.chart()
                              .to_standard()
                              .then(AffineUnimodularMap(block, shift))
                              .then(Q.chart().to_standard().inverse());
  if (!maps_onto(T, P, Q))
    throw InternalConsistencyError("lifted equivalence does not map vertices onto vertices");
  res.status = EquivalenceStatus::Found;
  res.map = std::move(T);
  return res;
}

// ---------------------------------------------------------------- algebra

LatticePolytope dilate(const LatticePolytope &P, const Int &k) {
  std::vector<IntVector> pts;
  for (const LatticePoint &v : P.vertices())
    pts.push_back(scale(v, k));
  return LatticePolytope::hull(pts);
}

LatticePolytope product(const LatticePolytope &P, const LatticePolytope &Q) {
  std::vector<IntVector> pts;
  for (const LatticePoint &a : P.vertices())
    for (const LatticePoint &b : Q.vertices()) {
      IntVector c = a;
      c.insert(c.end(), b.begin(), b.end());
      pts.push_back(std::move(c));
    }
  return LatticePolytope::hull(pts);
}

LatticePolytope translate(const LatticePolytope &P, const IntVector &v) {
  check_dim(v, P.ambient_dim());
  std::vector<IntVector> pts;
  for (const LatticePoint &a : P.vertices())
    pts.push_back(add(a, v));
  return LatticePolytope::hull(pts);
}

LatticePolytope convex_union(const LatticePolytope &P, const LatticePolytope &Q) {
  if (P.ambient_dim() != Q.ambient_dim())
    throw DimensionMismatch("convex union of polytopes in different ambient spaces");
  std::vector<IntVector> pts = P.vertices();
  pts.insert(pts.end(), Q.vertices().begin(), Q.vertices().end());
  return LatticePolytope::hull(pts);
}

LatticePolytope apply(const AffineUnimodularMap &T, const LatticePolytope &P) {
  std::vector<IntVector> pts;
  for (const LatticePoint &a : P.vertices())
    pts.push_back(T.apply(a));
  return LatticePolytope::hull(pts);
}

LatticePolytope dilated_simplex(const Int &d, std::size_t n) {
  std::vector<IntVector> pts{zero_vector(n)};
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back(scale(unit_vector(n, i), d));
  return LatticePolytope::hull(pts);
}

} // namespace toricsr
