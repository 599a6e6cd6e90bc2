#include "toricsr/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace toricsr {

namespace {

IntVector basis(std::size_t n, std::size_t i, long k = 1) {
  IntVector v = zero_vector(n);
  v[i] = k;
  return v;
}

int weight(const std::vector<int> &eps) { return std::accumulate(eps.begin(), eps.end(), 0); }

Int pow2(long k) { return k < 0 ? Int(0) : Int(1) << static_cast<unsigned>(k); }

IntVector widen(const IntVector &v, std::size_t n) {
  IntVector w = zero_vector(n);
  std::copy(v.begin(), v.end(), w.begin());
  return w;
}

// 2^{n-1} - 2 <= r <= r_max(n), N = n + r >= 3
struct Range {
  Int lo, hi;
};

Range theorem_range(std::size_t n, BoundKind kind) {
  const long nn = static_cast<long>(n);
  Int hi = nn + pow2(nn) - 2 + pow2(nn - 2) * (nn - 1);
  if (kind == BoundKind::DoubleCover)
    hi -= nn / 2;
  Int lo = nn + pow2(nn - 1) - 2;
  return {lo < 3 ? Int(3) : lo, hi};
}

Range baseline_range(std::size_t n) {
  const long nn = static_cast<long>(n);
  Int lo = nn + pow2(nn - 1) - 2;
  return {lo < 3 ? Int(3) : lo, nn + pow2(nn) - 2};
}

Int degree_for(std::size_t n, BoundKind kind) {
  if (kind == BoundKind::Hypersurface)
    return static_cast<long>(n) + 2;
  return 2 * static_cast<long>((n + 1) / 2) + 2;
}

} // namespace

LatticePolytope hpt() {
  const std::size_t n = 5;
  return LatticePolytope::hull({zero_vector(n), basis(n, 0, 2), basis(n, 1, 2),
                                add(basis(n, 1), basis(n, 2, 2)), add(basis(n, 0), basis(n, 3, 2)),
                                add(add(basis(n, 0), basis(n, 1)), basis(n, 4, 2))});
}

LatticePolytope kollar_totaro(std::size_t n, long d) {
  if (n < 1 || d < 2)
    throw PreconditionViolation("kollar_totaro needs n >= 1 and d >= 2");
  const std::size_t m = n + 1;
  std::vector<IntVector> pts{basis(m, 0, 2), basis(m, 1)};
  for (std::size_t i = 1; i < n; ++i)
    pts.push_back(add(basis(m, i, d - 1), basis(m, i + 1)));
  pts.push_back(basis(m, n, d - 1));
  return LatticePolytope::hull(pts);
}

LatticePolytope cubic_empty(std::size_t n) {
  if (n % 2 == 0)
    throw PreconditionViolation("cubic_empty needs odd n");
  std::vector<IntVector> pts{basis(n, 0)};
  for (std::size_t i = 0; i + 1 < n; ++i)
    pts.push_back(add(basis(n, i, 2), basis(n, i + 1)));
  pts.push_back(basis(n, n - 1, 2));
  return LatticePolytope::hull(pts);
}

LatticePolytope empty_tetrahedron(long p, long q) {
  if (p < 1 || p > q || std::gcd(p, q) != 1)
    throw PreconditionViolation("empty_tetrahedron needs 1 <= p <= q with gcd(p, q) = 1");
  return LatticePolytope::hull({{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {p, q, 1}});
}

LatticePolytope double_cover_polytope(long d, std::size_t N) {
  if (d < 2 || d % 2 != 0 || N < 1)
    throw PreconditionViolation("double_cover_polytope needs an even degree and N >= 1");
  std::vector<IntVector> pts{zero_vector(N + 1)};
  for (std::size_t i = 0; i < N; ++i)
    pts.push_back(basis(N + 1, i, d));
  pts.push_back(basis(N + 1, N, 2));
  return LatticePolytope::hull(pts);
}

LatticePolytope simplex_product(const std::vector<std::pair<long, std::size_t>> &factors) {
  if (factors.empty())
    throw PreconditionViolation("simplex_product needs a factor");
  LatticePolytope P = dilated_simplex(factors.front().first, factors.front().second);
  for (std::size_t i = 1; i < factors.size(); ++i)
    P = product(P, dilated_simplex(factors[i].first, factors[i].second));
  return P;
}

LatticePolytope general_type_simplex() {
  return LatticePolytope::hull(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {6, 14, 17, 65}});
}

IntVector SchreiederSimplex::epsilon_vertex(std::size_t k) const {
  const std::size_t dim = 2 * n + epsilons.size();
  IntVector v = zero_vector(dim);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = epsilons[k][i];
  v[coordinate(k)] = 2;
  return v;
}

std::vector<std::vector<int>> default_epsilon_order(std::size_t n) {
  if (n < 2 || n > 20)
    throw PreconditionViolation("Schreieder simplices need 2 <= n <= 20");
  std::vector<std::vector<int>> out;
  for (unsigned long bits = 0; bits < (1ul << n); ++bits) {
    std::vector<int> eps(n);
    for (std::size_t i = 0; i < n; ++i)
      eps[i] = static_cast<int>((bits >> (n - 1 - i)) & 1u); // lexicographic in eps
    if (weight(eps) <= static_cast<int>(n) - 2)
      out.push_back(std::move(eps));
  }
  return out; // all zeros is lexicographically first
}

SchreiederSimplex schreieder(std::size_t n) { return schreieder(n, default_epsilon_order(n)); }

SchreiederSimplex schreieder(std::size_t n, std::vector<std::vector<int>> order) {
  auto expected = default_epsilon_order(n);
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != expected)
    throw PreconditionViolation("epsilon order is not a permutation of {eps : |eps| <= n-2}");
  SchreiederSimplex S;
  S.n = n;
  S.degree = static_cast<long>(n) + 2;
  S.epsilons = std::move(order);
  const std::size_t dim = 2 * n + S.epsilons.size();
  std::vector<IntVector> pts{zero_vector(dim)};
  for (std::size_t i = 0; i < 2 * n; ++i)
    pts.push_back(basis(dim, i, S.degree));
  for (std::size_t k = 0; k < S.epsilons.size(); ++k)
    pts.push_back(S.epsilon_vertex(k));
  S.polytope = LatticePolytope::hull(pts);
  return S;
}

LatticePolytope double_cone(const LatticePolytope &P, const std::vector<ConePair> &pairs) {
  const std::size_t n = P.ambient_dim();
  const std::size_t m = n + pairs.size();
  std::vector<IntVector> pts;
  for (const IntVector &v : P.vertices())
    pts.push_back(widen(v, m));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const ConePair &q = pairs[k];
    if (q.plus.size() != m || q.minus.size() != m)
      throw DimensionMismatch("double_cone pair has the wrong ambient dimension");
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const long want = j == k ? 1 : 0;
      if (q.plus[n + j] != want || q.minus[n + j] != -want)
        throw PreconditionViolation("double_cone pair " + std::to_string(k) +
                                    " does not project to +-e_k");
    }
    pts.push_back(q.plus);
    pts.push_back(q.minus);
  }
  return LatticePolytope::hull(pts);
}

LatticePolytope hpt_double_cone() {
  return double_cone(hpt(), {{{1, 0, 0, 1, 0, 1, 0}, {1, 0, 0, 0, 0, -1, 0}},
                             {{1, 0, 0, 0, 1, 0, 1}, {1, 0, 0, 0, 0, 0, -1}}});
}

AffineUnimodularMap hpt_double_cone_map() {
  const std::size_t n = 7;
  // column j is the image of e_{j+1}
  std::vector<IntVector> images{basis(n, 4),
                                basis(n, 3),
                                basis(n, 2),
                                {0, 1, 0, 0, -1, 1, 0},
                                {1, 0, 0, 0, -1, 0, 1},
                                {0, 0, 0, 0, 1, -1, 0},
                                {0, 0, 0, 0, 1, 0, -1}};
  IntMatrix L(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      L(i, j) = images[j][i];
  // translate by e1 first
  return AffineUnimodularMap::translation_by(basis(n, 0))
      .then(AffineUnimodularMap(L, zero_vector(n)));
}

SchreiederExtension extend_schreieder(const SchreiederSimplex &S,
                                      const std::vector<std::size_t> &steps,
                                      const ExtensionOptions &opts) {
  const std::size_t base = S.polytope.ambient_dim();
  const std::size_t m = base + steps.size();
  std::vector<long> used(S.epsilons.size(), 0);
  std::vector<ConePair> pairs;
  IntMatrix L = IntMatrix::identity(m);
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const std::size_t k = steps[j];
    if (k >= S.epsilons.size())
      throw PreconditionViolation("extension step names no epsilon");
    const long budget = (static_cast<long>(S.n) - weight(S.epsilons[k])) / 2;
    if (++used[k] > budget)
      throw PreconditionViolation("extension budget for epsilon " + std::to_string(k) +
                                  " exceeded (" + std::to_string(budget) + " steps)");
    const std::size_t c = base + j;
    const std::size_t e = S.coordinate(k);
    IntVector minus = basis(m, e);
    minus[c] = -1;
    pairs.push_back({basis(m, c), minus});
    L(c, e) = 1; // e_e ↦ e_e + e_c
  }
  SchreiederExtension X;
  for (const IntVector &v : S.polytope.vertices())
    X.generators.push_back(widen(v, m));
  for (const ConePair &q : pairs) {
    X.generators.push_back(q.plus);
    X.generators.push_back(q.minus);
  }
  X.map = AffineUnimodularMap(L, zero_vector(m));
  if (opts.hull) {
    X.cone = double_cone(S.polytope, pairs);
    X.polytope = apply(X.map, X.cone);
  }
  X.steps = steps;
  return X;
}

std::vector<std::size_t> all_extension_steps(const SchreiederSimplex &S) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < S.epsilons.size(); ++k)
    for (long s = 0; s < (static_cast<long>(S.n) - weight(S.epsilons[k])) / 2; ++s)
      out.push_back(k);
  return out;
}

ContainmentCertificate containment_certificate(const LatticePolytope &P,
                                               const LatticePolytope &target,
                                               const AffineUnimodularMap &map) {
  if (map.dim() != P.ambient_dim())
    throw DimensionMismatch("containment certificate dimensions differ");
  return containment_certificate(P.vertices(), target, map);
}

ContainmentCertificate containment_certificate(const std::vector<IntVector> &points,
                                               const LatticePolytope &target,
                                               const AffineUnimodularMap &map) {
  if (map.dim() != target.ambient_dim())
    throw DimensionMismatch("containment certificate dimensions differ");
  const auto hs = ambient_halfspaces(target);
  ContainmentCertificate c;
  for (const IntVector &v : points) {
    if (v.size() != map.dim())
      throw DimensionMismatch("containment certificate dimensions differ");
    IntVector w = map.apply(v);
    for (const IntHalfspace &h : hs)
      if (dot(h.normal, w) < h.offset) {
        c.violation = "point " + to_string(v) + " maps to " + to_string(w) + ", violating <" +
                      to_string(h.normal) + ", x> >= " + to_string(h.offset);
        return c;
      }
  }
  c.contained = true;
  return c;
}

SumIdentity sum_identity(std::size_t n) {
  if (n < 2 || n > 30)
    throw PreconditionViolation("sum_identity needs 2 <= n <= 30");
  SumIdentity s;
  for (unsigned long bits = 0; bits < (1ul << n); ++bits) {
    const long w = __builtin_popcountl(bits);
    if (w <= static_cast<long>(n) - 2)
      s.lhs += (static_cast<long>(n) - w) / 2;
  }
  s.rhs = pow2(static_cast<long>(n) - 2) * (static_cast<long>(n) - 1);
  return s;
}

std::vector<BoundsRow> bounds_table(std::size_t n_min, std::size_t n_max, BoundKind kind) {
  if (n_min < 2 || n_max > 30 || n_min > n_max)
    throw PreconditionViolation("bounds_table needs 2 <= n_min <= n_max <= 30");
  std::vector<BoundsRow> rows;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const long nn = static_cast<long>(n);
    BoundsRow r;
    r.n = n;
    r.degree = degree_for(n, kind);
    Range t = theorem_range(n, kind);
    r.N_min = t.lo;
    r.N_max = t.hi;
    r.r_min = t.lo - nn;
    r.r_max = t.hi - nn;
    r.r_max_formula = kind == BoundKind::Hypersurface ? "2^n - 2 + 2^(n-2)*(n-1)"
                                                      : "2^n - 2 + 2^(n-2)*(n-1) - floor(n/2)";
    // the extension term comes from enumerating steps, not from the closed form
    r.r_max_formula_value = pow2(nn) - 2 + sum_identity(n).lhs;
    if (kind == BoundKind::DoubleCover)
      r.r_max_formula_value -= nn / 2;
    r.baseline_N_max = baseline_range(n).hi;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_string(GridStatus s) {
  switch (s) {
  case GridStatus::Baseline:
    return "baseline";
  case GridStatus::New:
    return "new";
  case GridStatus::Open:
    return "open";
  }
  return "open";
}

std::vector<GridCell> bounds_grid(BoundKind kind, long N_max, long d_max) {
  std::vector<GridCell> out;
  for (long d = 3; d <= d_max; ++d) {
    if (kind == BoundKind::DoubleCover && d % 2 != 0)
      continue;
    for (long N = 3; N <= N_max; ++N) {
      GridCell c{N, d, GridStatus::Open};
      for (std::size_t n = 2; n <= 30 && degree_for(n, kind) <= d; ++n) {
        Range b = baseline_range(n);
        Range t = theorem_range(n, kind);
        if (kind == BoundKind::Hypersurface && N <= b.hi)
          c.status = GridStatus::Baseline; // smaller n covers smaller N
        else if (kind == BoundKind::DoubleCover && N >= b.lo && N <= b.hi)
          c.status = GridStatus::Baseline;
        else if (c.status == GridStatus::Open && N >= t.lo && N <= t.hi)
          c.status = GridStatus::New;
      }
      out.push_back(c);
    }
  }
  return out;
}

LatticePolytope build(const FamilySpec &spec) {
  const auto &p = spec.params;
  auto need = [&](std::size_t k) {
    if (p.size() != k)
      throw PreconditionViolation(spec.family + " takes " + std::to_string(k) + " parameters");
  };
  auto count = [&](long v) {
    if (v < 0)
      throw PreconditionViolation(spec.family + " needs nonnegative parameters");
    return static_cast<std::size_t>(v);
  };
  if (spec.family == "hpt") {
    need(0);
    return hpt();
  }
  if (spec.family == "kollar_totaro") {
    need(2);
    return kollar_totaro(count(p[0]), p[1]);
  }
  if (spec.family == "cubic_empty") {
    need(1);
    return cubic_empty(count(p[0]));
  }
  if (spec.family == "tpq") {
    need(2);
    return empty_tetrahedron(p[0], p[1]);
  }
  if (spec.family == "double_cover") {
    need(2);
    return double_cover_polytope(p[0], count(p[1]));
  }
  if (spec.family == "schreieder") {
    need(1);
    return schreieder(count(p[0])).polytope;
  }
  if (spec.family == "dilated_simplex") {
    need(2);
    return dilated_simplex(p[0], count(p[1]));
  }
  if (spec.family == "simplex_product") {
    if (p.empty() || p.size() % 2 != 0)
      throw PreconditionViolation("simplex_product takes pairs d, n");
    std::vector<std::pair<long, std::size_t>> f;
    for (std::size_t i = 0; i < p.size(); i += 2)
      f.emplace_back(p[i], count(p[i + 1]));
    return simplex_product(f);
  }
  if (spec.family == "general_type") {
    need(0);
    return general_type_simplex();
  }
  if (spec.family == "hpt_double_cone") {
    need(0);
    return hpt_double_cone();
  }
  throw PreconditionViolation("unknown family " + spec.family);
}

} // namespace toricsr
