#include "toricsr/exact.hpp"

namespace toricsr {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector> &rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw DimensionMismatch("matrix rows of unequal length");
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector> &rows) {
  return from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector> &cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw DimensionMismatch("matrix columns of unequal length");
    for (std::size_t i = 0; i < rows; ++i)
      m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t j = 0; j < cols_; ++j)
    std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t i = 0; i < rows_; ++i)
    std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int &k) {
  if (k == 0)
    return;
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int &k) {
  if (k == 0)
    return;
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, j) = -(*this)(i, j);
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int &aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix &a, const IntVector &x) {
  if (a.cols() != x.size())
    throw DimensionMismatch("matrix-vector shape mismatch");
  IntVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      y[i] += a(i, j) * x[j];
  return y;
}

Int dot(const IntVector &a, const IntVector &b) {
  if (a.size() != b.size())
    throw DimensionMismatch("dot product length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

Rat dot(const RatVector &a, const RatVector &b) {
  if (a.size() != b.size())
    throw DimensionMismatch("dot product length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

Rat dot(const IntVector &a, const RatVector &b) {
  if (a.size() != b.size())
    throw DimensionMismatch("dot product length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += Rat(a[i]) * b[i];
  return s;
}

IntVector add(const IntVector &a, const IntVector &b) {
  if (a.size() != b.size())
    throw DimensionMismatch("vector length mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] + b[i];
  return c;
}

IntVector sub(const IntVector &a, const IntVector &b) {
  if (a.size() != b.size())
    throw DimensionMismatch("vector length mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] - b[i];
  return c;
}

IntVector scale(const IntVector &a, const Int &k) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] * k;
  return c;
}

IntVector neg(const IntVector &a) { return scale(a, Int(-1)); }

RatVector to_rat(const IntVector &a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i];
  return r;
}

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector e(n);
  e[i] = 1;
  return e;
}

IntVector zero_vector(std::size_t n) { return IntVector(n); }

Int content(const IntVector &a) {
  Int g = 0;
  for (const Int &x : a)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector primitive(const IntVector &a) {
  Int g = content(a);
  if (g == 0 || g == 1)
    return a;
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    mpz_divexact(c[i].get_mpz_t(), a[i].get_mpz_t(), g.get_mpz_t());
  return c;
}

bool is_zero(const IntVector &a) {
  for (const Int &x : a)
    if (x != 0)
      return false;
  return true;
}

Int lcm_of_denominators(const RatVector &a) {
  Int l = 1;
  for (const Rat &x : a)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

IntVector primitive_direction(const RatVector &a) {
  Int l = lcm_of_denominators(a);
  IntVector v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rat s = a[i] * l;
    v[i] = s.get_num();
  }
  return primitive(v);
}

Int floor_rat(const Rat &q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil_rat(const Rat &q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::string to_string(const Int &x) { return x.get_str(); }

std::string to_string(const Rat &x) {
  Rat c = x;
  c.canonicalize();
  return c.get_str();
}

Rat parse_rational(const std::string &text) {
  Rat q;
  if (q.set_str(text, 10) != 0)
    throw Error("not a rational number: '" + text + "'");
  if (q.get_den() == 0)
    throw Error("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

static_assert(sizeof(long) == 8, "LP64 target expected");

bool fits_int64(const Int &x) { return mpz_fits_slong_p(x.get_mpz_t()) != 0; }

std::int64_t to_int64(const Int &x) {
  if (!fits_int64(x))
    throw Error("integer does not fit in 64 bits");
  return mpz_get_si(x.get_mpz_t());
}

Int from_int64(std::int64_t v) { return Int(static_cast<long>(v)); }

bool lex_less(const IntVector &a, const IntVector &b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0)
      return c < 0;
  }
  return a.size() < b.size();
}

} // namespace toricsr

namespace toricsr {

namespace {
template <class V> std::string join(const V &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}
} // namespace

std::string to_string(const IntVector &v) { return join(v); }
std::string to_string(const RatVector &v) { return join(v); }

} // namespace toricsr
