#pragma once

// Brute-force references used only by tests. They avoid the library's hull, enumeration and
// width kernels so that agreement is a genuine cross-check.

#include "toricsr/exact.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace oracle {

using toricsr::Int;
using toricsr::IntVector;
using toricsr::Rat;
using toricsr::RatVector;

// Laplace expansion; fine for the tiny matrices used here.
inline Int det(const std::vector<IntVector> &m) {
  const std::size_t n = m.size();
  if (n == 0)
    return 1;
  if (n == 1)
    return m[0][0];
  Int s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0)
      continue;
    std::vector<IntVector> minor;
    for (std::size_t i = 1; i < n; ++i) {
      IntVector r;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j)
          r.push_back(m[i][c]);
      minor.push_back(r);
    }
    Int t = m[0][j] * det(minor);
    s += (j % 2 == 0) ? t : Int(-t);
  }
  return s;
}

// Normal to n-1 vectors in Z^n via cofactors (zero if dependent).
inline IntVector cofactor_normal(const std::vector<IntVector> &vs, std::size_t n) {
  IntVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<IntVector> m;
    for (const IntVector &v : vs) {
      IntVector r;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j)
          r.push_back(v[c]);
      m.push_back(r);
    }
    Int d = det(m);
    out[j] = (j % 2 == 0) ? d : Int(-d);
  }
  Int g = 0;
  for (const Int &x : out)
    g = gcd(g, x);
  if (g != 0)
    for (Int &x : out)
      x /= g;
  return out;
}

struct Halfspace {
  IntVector normal;
  Int offset;
  bool operator<(const Halfspace &o) const {
    return std::tie(normal, offset) < std::tie(o.normal, o.offset);
  }
  bool operator==(const Halfspace &o) const { return normal == o.normal && offset == o.offset; }
};

inline void for_each_subset(std::size_t m, std::size_t k,
                            const std::function<void(const std::vector<std::size_t> &)> &f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

// Facets of a full-dimensional point configuration by testing every n-subset.
inline std::set<Halfspace> facets(const std::vector<IntVector> &pts) {
  const std::size_t n = pts.front().size();
  std::set<Halfspace> out;
  for_each_subset(pts.size(), n, [&](const std::vector<std::size_t> &s) {
    std::vector<IntVector> vs;
    for (std::size_t i = 1; i < n; ++i) {
      IntVector d(n);
      for (std::size_t c = 0; c < n; ++c)
        d[c] = pts[s[i]][c] - pts[s[0]][c];
      vs.push_back(d);
    }
    IntVector a = cofactor_normal(vs, n);
    if (std::all_of(a.begin(), a.end(), [](const Int &x) { return x == 0; }))
      return;
    for (int sign : {1, -1}) {
      IntVector b = a;
      if (sign < 0)
        for (Int &x : b)
          x = -x;
      Int off = 0;
      for (std::size_t c = 0; c < n; ++c)
        off += b[c] * pts[s[0]][c];
      bool ok = true;
      for (const IntVector &p : pts) {
        Int v = 0;
        for (std::size_t c = 0; c < n; ++c)
          v += b[c] * p[c];
        if (v < off) {
          ok = false;
          break;
        }
      }
      if (ok)
        out.insert(Halfspace{b, off});
    }
  });
  return out;
}

inline Int dotp(const IntVector &a, const IntVector &b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

// Odometer over a box.
inline void for_each_box_point(const IntVector &lo, const IntVector &hi,
                               const std::function<void(const IntVector &)> &f) {
  const std::size_t n = lo.size();
  IntVector x = lo;
  for (;;) {
    f(x);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (x[k] < hi[k]) {
        ++x[k];
        break;
      }
      x[k] = lo[k];
      if (k == 0)
        return;
    }
    if (n == 0)
      return;
  }
}

// Lattice points of a full-dimensional configuration (interior: strict on every facet).
inline std::vector<IntVector> lattice_points(const std::vector<IntVector> &pts, bool interior) {
  const std::size_t n = pts.front().size();
  std::set<Halfspace> fs = facets(pts);
  IntVector lo = pts.front(), hi = pts.front();
  for (const IntVector &p : pts)
    for (std::size_t c = 0; c < n; ++c) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  std::vector<IntVector> out;
  for_each_box_point(lo, hi, [&](const IntVector &x) {
    for (const Halfspace &h : fs) {
      Int v = dotp(h.normal, x);
      if (v < h.offset || (interior && v == h.offset))
        return;
    }
    out.push_back(x);
  });
  return out;
}

// A point is a vertex iff the normals of the facets through it span (some n-minor nonzero).
inline std::vector<IntVector> vertices(const std::vector<IntVector> &pts) {
  const std::size_t n = pts.front().size();
  std::set<Halfspace> fs = facets(pts);
  std::set<IntVector> out;
  for (const IntVector &p : pts) {
    std::vector<IntVector> tight;
    for (const Halfspace &h : fs)
      if (dotp(h.normal, p) == h.offset)
        tight.push_back(h.normal);
    bool spans = false;
    if (tight.size() >= n)
      for_each_subset(tight.size(), n, [&](const std::vector<std::size_t> &s) {
        if (spans)
          return;
        std::vector<IntVector> m;
        for (std::size_t i : s)
          m.push_back(tight[i]);
        if (det(m) != 0)
          spans = true;
      });
    if (spans)
      out.insert(p);
  }
  return {out.begin(), out.end()};
}

// Minimum width over all nonzero l in [-B, B]^n.
inline Int width(const std::vector<IntVector> &pts, long B) {
  const std::size_t n = pts.front().size();
  Int best = -1;
  for_each_box_point(IntVector(n, Int(-B)), IntVector(n, Int(B)), [&](const IntVector &l) {
    if (std::all_of(l.begin(), l.end(), [](const Int &x) { return x == 0; }))
      return;
    Int lo = dotp(l, pts.front()), hi = lo;
    for (const IntVector &p : pts) {
      Int v = dotp(l, p);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (best < 0 || hi - lo < best)
      best = hi - lo;
  });
  return best;
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n)
    return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Seeded generators.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  IntVector point(std::size_t n, long lo, long hi) {
    IntVector p(n);
    for (Int &x : p)
      x = uniform(lo, hi);
    return p;
  }

  // Random full-dimensional configuration.
  std::vector<IntVector> full_dim_points(std::size_t n, std::size_t count, long lo, long hi) {
    for (;;) {
      std::vector<IntVector> pts;
      for (std::size_t i = 0; i < count; ++i)
        pts.push_back(point(n, lo, hi));
      std::vector<IntVector> diffs;
      for (std::size_t i = 1; i < pts.size(); ++i) {
        IntVector d(n);
        for (std::size_t c = 0; c < n; ++c)
          d[c] = pts[i][c] - pts[0][c];
        diffs.push_back(d);
      }
      bool spans = false;
      if (diffs.size() >= n)
        for_each_subset(diffs.size(), n, [&](const std::vector<std::size_t> &s) {
          if (spans)
            return;
          std::vector<IntVector> m;
          for (std::size_t i : s)
            m.push_back(diffs[i]);
          if (det(m) != 0)
            spans = true;
        });
      if (spans)
        return pts;
    }
  }

  // Random unimodular matrix as a product of elementary operations.
  std::vector<IntVector> unimodular(std::size_t n, int steps) {
    std::vector<IntVector> m(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i)
      m[i][i] = 1;
    for (int s = 0; s < steps && n > 1; ++s) {
      std::size_t a = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1));
      std::size_t b = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 2));
      if (b >= a)
        ++b;
      long k = uniform(-2, 2);
      for (std::size_t c = 0; c < n; ++c)
        m[a][c] += k * m[b][c];
      if (uniform(0, 3) == 0)
        std::swap(m[a], m[b]);
    }
    return m;
  }
};

} // namespace oracle
