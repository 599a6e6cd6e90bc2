#include "toricsr/cone.hpp"

#include "toricsr/linalg.hpp"

#include <algorithm>
#include <map>

namespace toricsr {

ExtremeRays extreme_rays(const std::vector<IntVector> &rows, std::size_t d) {
  for (const IntVector &r : rows)
    if (r.size() != d)
      throw DimensionMismatch("constraint row of wrong length");
  const std::size_t m = rows.size();
  std::vector<std::size_t> basis_rows = independent_rows(rows);
  if (basis_rows.size() < d)
    throw DegenerateInput("constraint rows do not span; cone is not pointed");

  IntMatrix A0(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      A0(i, j) = rows[basis_rows[i]][j];
  RatMatrix inv = inverse(A0);

  std::vector<IntVector> rays;
  std::vector<Bitset> tight;
  for (std::size_t j = 0; j < d; ++j) {
    RatVector c(d);
    for (std::size_t i = 0; i < d; ++i)
      c[i] = inv[i][j];
    rays.push_back(primitive_direction(c));
    Bitset z(m);
    for (std::size_t i = 0; i < d; ++i)
      if (i != j)
        z.set(basis_rows[i]);
    tight.push_back(std::move(z));
  }

  std::vector<bool> processed(m, false);
  for (std::size_t i : basis_rows)
    processed[i] = true;

  for (std::size_t k = 0; k < m; ++k) {
    if (processed[k])
      continue;
    processed[k] = true;
    const std::size_t nr = rays.size();
    std::vector<Int> s(nr);
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < nr; ++r) {
      s[r] = dot(rows[k], rays[r]);
      int sg = sgn(s[r]);
      if (sg > 0)
        pos.push_back(r);
      else if (sg < 0)
        neg.push_back(r);
      else
        tight[r].set(k);
    }
    if (neg.empty())
      continue;

    std::vector<IntVector> next_rays;
    std::vector<Bitset> next_tight;
    for (std::size_t r = 0; r < nr; ++r)
      if (sgn(s[r]) >= 0) {
        next_rays.push_back(rays[r]);
        next_tight.push_back(tight[r]);
      }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        Bitset common = tight[p] & tight[q];
        if (d >= 2 && common.count() + 2 < d)
          continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < nr && adjacent; ++t)
          if (t != p && t != q && common.is_subset_of(tight[t]))
            adjacent = false;
        if (!adjacent)
          continue;
        IntVector nv(d);
        for (std::size_t j = 0; j < d; ++j)
          nv[j] = s[p] * rays[q][j] - s[q] * rays[p][j];
        common.set(k);
        next_rays.push_back(primitive(nv));
        next_tight.push_back(std::move(common));
      }
    rays = std::move(next_rays);
    tight = std::move(next_tight);
  }

  ExtremeRays out;
  out.rays = std::move(rays);
  out.tight.reserve(out.rays.size());
  for (const IntVector &r : out.rays) {
    Bitset z(m);
    for (std::size_t i = 0; i < m; ++i)
      if (dot(rows[i], r) == 0)
        z.set(i);
    out.tight.push_back(std::move(z));
  }
  return out;
}

IntVector hyperplane_normal(const std::vector<IntVector> &vecs, std::size_t d) {
  IntMatrix M = IntMatrix::from_rows(vecs, d);
  std::vector<IntVector> ker = integer_kernel(M);
  if (ker.size() != 1)
    throw DegenerateInput("vectors do not span a hyperplane");
  return primitive(ker.front());
}

namespace {

struct BoundaryFacet {
  std::vector<std::size_t> verts;
  IntVector normal;
};

BoundaryFacet make_facet(const std::vector<IntVector> &gens, std::vector<std::size_t> verts,
                         std::size_t opposite, std::size_t d) {
  std::vector<IntVector> vs;
  for (std::size_t v : verts)
    vs.push_back(gens[v]);
  IntVector n = hyperplane_normal(vs, d);
  if (dot(n, gens[opposite]) < 0)
    n = neg(n);
  return BoundaryFacet{std::move(verts), std::move(n)};
}

} // namespace

std::vector<std::vector<std::size_t>> placing_triangulation(const std::vector<IntVector> &gens) {
  if (gens.empty())
    throw DegenerateInput("no generators");
  const std::size_t d = gens.front().size();
  std::vector<std::size_t> first = independent_rows(gens);
  if (first.size() < d)
    throw DegenerateInput("generators are not full-dimensional");
  std::vector<std::vector<std::size_t>> simplices{first};
  if (d == 1)
    return simplices;

  std::vector<BoundaryFacet> boundary;
  for (std::size_t t = 0; t < d; ++t) {
    std::vector<std::size_t> verts;
    for (std::size_t s = 0; s < d; ++s)
      if (s != t)
        verts.push_back(first[s]);
    boundary.push_back(make_facet(gens, std::move(verts), first[t], d));
  }

  std::vector<bool> placed(gens.size(), false);
  for (std::size_t i : first)
    placed[i] = true;

  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (placed[g])
      continue;
    placed[g] = true;
    std::vector<BoundaryFacet> kept;
    std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> fresh;
    bool any_visible = false;
    for (BoundaryFacet &f : boundary) {
      if (dot(f.normal, gens[g]) >= 0) {
        kept.push_back(std::move(f));
        continue;
      }
      any_visible = true;
      std::vector<std::size_t> simplex = f.verts;
      simplex.push_back(g);
      std::sort(simplex.begin(), simplex.end());
      simplices.push_back(simplex);
      for (std::size_t t : f.verts) {
        std::vector<std::size_t> sigma;
        for (std::size_t v : f.verts)
          if (v != t)
            sigma.push_back(v);
        sigma.push_back(g);
        std::sort(sigma.begin(), sigma.end());
        auto &entry = fresh[sigma];
        entry.first += 1;
        entry.second = t;
      }
    }
    boundary = std::move(kept);
    if (!any_visible)
      continue;
    for (auto &[sigma, info] : fresh)
      if (info.first == 1)
        boundary.push_back(make_facet(gens, sigma, info.second, d));
  }
  return simplices;
}

} // namespace toricsr
