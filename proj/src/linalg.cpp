#include "toricsr/linalg.hpp"

#include <algorithm>

namespace toricsr {

namespace {

Int floor_div(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int trunc_div(const Int &a, const Int &b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

} // namespace

HermiteDecomposition hermite_form(const IntMatrix &A) {
  const std::size_t m = A.rows(), n = A.cols();
  HermiteDecomposition out{A, IntMatrix::identity(m), 0, {}};
  IntMatrix &H = out.H;
  IntMatrix &U = out.U;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (best == m || abs(H(i, c)) < abs(H(best, c))))
          best = i;
      if (best == m)
        break;
      H.swap_rows(r, best);
      U.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0)
          continue;
        Int q = floor_div(H(i, c), H(r, c));
        H.add_row_multiple(i, r, -q);
        U.add_row_multiple(i, r, -q);
        if (H(i, c) != 0)
          clean = false;
      }
      if (clean)
        break;
    }
    if (H(r, c) == 0)
      continue;
    if (H(r, c) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(H(i, c), H(r, c));
      H.add_row_multiple(i, r, -q);
      U.add_row_multiple(i, r, -q);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

SmithDecomposition smith_form(const IntMatrix &A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithDecomposition out{A, IntMatrix::identity(m), IntMatrix::identity(n), {}};
  IntMatrix &S = out.S;
  IntMatrix &U = out.U;
  IntMatrix &V = out.V;
  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    bool any = false;
    for (;;) {
      // smallest |entry| in the trailing block, ties by lowest (row, col)
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (bi == m || abs(S(i, j)) < abs(S(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m)
        break;
      any = true;
      S.swap_rows(t, bi);
      U.swap_rows(t, bi);
      S.swap_cols(t, bj);
      V.swap_cols(t, bj);
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0)
          continue;
        Int q = trunc_div(S(i, t), S(t, t));
        S.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0)
          changed = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0)
          continue;
        Int q = trunc_div(S(t, j), S(t, t));
        S.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (S(t, j) != 0)
          changed = true;
      }
      if (changed)
        continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            S.add_row_multiple(t, i, Int(1));
            U.add_row_multiple(t, i, Int(1));
            divisible = false;
            break;
          }
      if (divisible)
        break;
    }
    if (!any)
      break;
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
    out.invariant_factors.push_back(S(t, t));
  }
  return out;
}

std::vector<IntVector> integer_kernel(const IntMatrix &A) {
  HermiteDecomposition h = hermite_form(A.transpose());
  std::vector<IntVector> basis;
  for (std::size_t i = h.rank; i < h.U.rows(); ++i)
    basis.push_back(h.U.row(i));
  return basis;
}

std::optional<IntVector> solve_diophantine(const IntMatrix &A, const IntVector &b) {
  if (b.size() != A.rows())
    throw DimensionMismatch("right-hand side length mismatch");
  SmithDecomposition s = smith_form(A);
  IntVector c = s.U * b;
  IntVector y(A.cols());
  const std::size_t r = s.invariant_factors.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), s.invariant_factors[i].get_mpz_t()))
        return std::nullopt;
      Int q;
      mpz_divexact(q.get_mpz_t(), c[i].get_mpz_t(), s.invariant_factors[i].get_mpz_t());
      y[i] = q;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

Int determinant(const IntMatrix &A) {
  if (A.rows() != A.cols())
    throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0)
    return Int(1);
  IntMatrix M = A;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0)
        ++p;
      if (p == n)
        return Int(0);
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

std::size_t rank(const IntMatrix &A) { return hermite_form(A).rank; }

std::size_t rank(const std::vector<IntVector> &rows) {
  return independent_rows(rows).size();
}

RatMatrix to_rat(const IntMatrix &A) {
  RatMatrix R(A.rows(), RatVector(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      R[i][j] = A(i, j);
  return R;
}

RatMatrix inverse(const IntMatrix &A) {
  if (A.rows() != A.cols())
    throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = A.rows();
  RatMatrix M = to_rat(A);
  RatMatrix Inv(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    Inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M[p][c] == 0)
      ++p;
    if (p == n)
      throw DegenerateInput("singular matrix");
    std::swap(M[p], M[c]);
    std::swap(Inv[p], Inv[c]);
    Rat piv = M[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      M[c][j] /= piv;
      Inv[c][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M[i][c] == 0)
        continue;
      Rat f = M[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        M[i][j] -= f * M[c][j];
        Inv[i][j] -= f * Inv[c][j];
      }
    }
  }
  return Inv;
}

RatVector mul(const RatMatrix &A, const RatVector &x) {
  RatVector y(A.size());
  for (std::size_t i = 0; i < A.size(); ++i)
    y[i] = dot(A[i], x);
  return y;
}

RatVector solve(const IntMatrix &A, const RatVector &b) { return mul(inverse(A), b); }

std::vector<std::size_t> independent_rows(const std::vector<IntVector> &rows) {
  std::vector<std::size_t> chosen;
  std::vector<RatVector> basis;
  std::vector<std::size_t> lead;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RatVector v = to_rat(rows[r]);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (v[lead[b]] == 0)
        continue;
      Rat f = v[lead[b]];
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] -= f * basis[b][j];
    }
    std::size_t l = 0;
    while (l < v.size() && v[l] == 0)
      ++l;
    if (l == v.size())
      continue;
    Rat piv = v[l];
    for (Rat &x : v)
      x /= piv;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (basis[b][l] == 0)
        continue;
      Rat f = basis[b][l];
      for (std::size_t j = 0; j < v.size(); ++j)
        basis[b][j] -= f * v[j];
    }
    basis.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(r);
  }
  return chosen;
}

bool is_unimodular(const IntMatrix &A) {
  if (A.rows() != A.cols())
    return false;
  return abs(determinant(A)) == 1;
}

namespace {

struct GramSchmidt {
  std::vector<RatVector> mu;
  std::vector<Rat> norm2;
};

GramSchmidt gram_schmidt(const std::vector<IntVector> &b) {
  const std::size_t m = b.size();
  GramSchmidt g;
  g.mu.assign(m, RatVector(m));
  g.norm2.assign(m, Rat(0));
  std::vector<RatVector> star;
  for (std::size_t i = 0; i < m; ++i) {
    RatVector v = to_rat(b[i]);
    for (std::size_t j = 0; j < i; ++j) {
      g.mu[i][j] = dot(b[i], star[j]) / g.norm2[j];
      for (std::size_t c = 0; c < v.size(); ++c)
        v[c] -= g.mu[i][j] * star[j][c];
    }
    g.norm2[i] = dot(v, v);
    if (g.norm2[i] == 0)
      throw DegenerateInput("LLL input rows are dependent");
    star.push_back(std::move(v));
  }
  return g;
}

} // namespace

LllReduction lll_reduce(const std::vector<IntVector> &rows) {
  const std::size_t m = rows.size();
  LllReduction out{rows, IntMatrix::identity(m)};
  if (m == 0)
    return out;
  std::vector<IntVector> &b = out.basis;
  IntMatrix &T = out.transform;
  const Rat delta(3, 4);
  GramSchmidt g = gram_schmidt(b);
  std::size_t k = 1;
  while (k < m) {
    for (std::size_t j = k; j-- > 0;) {
      Int q = floor_rat(g.mu[k][j] + Rat(1, 2));
      if (q == 0)
        continue;
      for (std::size_t c = 0; c < b[k].size(); ++c)
        b[k][c] -= q * b[j][c];
      T.add_row_multiple(k, j, -q);
      for (std::size_t i = 0; i < j; ++i)
        g.mu[k][i] -= q * g.mu[j][i];
      g.mu[k][j] -= q;
    }
    if (g.norm2[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      T.swap_rows(k, k - 1);
      g = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return out;
}

} // namespace toricsr
