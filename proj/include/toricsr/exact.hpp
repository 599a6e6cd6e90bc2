#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricsr {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct DegenerateInput : Error {
  using Error::Error;
};
struct UnsupportedInput : Error {
  using Error::Error;
};
struct PreconditionViolation : Error {
  using Error::Error;
};
struct ResourceLimitExceeded : Error {
  using Error::Error;
};
struct InternalConsistencyError : Error {
  using Error::Error;
};

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector> &rows, std::size_t cols);
  static IntMatrix from_rows(const std::vector<IntVector> &rows);
  static IntMatrix from_columns(const std::vector<IntVector> &cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  std::vector<IntVector> row_vectors() const;
  IntMatrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int &k);
  void add_col_multiple(std::size_t dst, std::size_t src, const Int &k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  bool operator==(const IntMatrix &o) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
IntVector operator*(const IntMatrix &a, const IntVector &x);

Int dot(const IntVector &a, const IntVector &b);
Rat dot(const RatVector &a, const RatVector &b);
Rat dot(const IntVector &a, const RatVector &b);
IntVector add(const IntVector &a, const IntVector &b);
IntVector sub(const IntVector &a, const IntVector &b);
IntVector scale(const IntVector &a, const Int &k);
IntVector neg(const IntVector &a);
RatVector to_rat(const IntVector &a);
IntVector unit_vector(std::size_t n, std::size_t i);
IntVector zero_vector(std::size_t n);

// gcd of all entries (nonnegative; 0 for the zero vector)
Int content(const IntVector &a);
// a / content(a); zero vector unchanged
IntVector primitive(const IntVector &a);
bool is_zero(const IntVector &a);

// Clears denominators: returns the primitive integer vector on the ray through a (a != 0).
IntVector primitive_direction(const RatVector &a);
Int lcm_of_denominators(const RatVector &a);

Int floor_rat(const Rat &q);
Int ceil_rat(const Rat &q);

// Canonical "p/q" text (plain "p" when q = 1).
std::string to_string(const Int &x);
std::string to_string(const Rat &x);
std::string to_string(const IntVector &v); // "(a,b,c)"
std::string to_string(const RatVector &v);
Rat parse_rational(const std::string &text);

// Fits in a signed 64-bit integer.
bool fits_int64(const Int &x);
std::int64_t to_int64(const Int &x);
Int from_int64(std::int64_t v);

// Lexicographic order on integer vectors of equal length.
bool lex_less(const IntVector &a, const IntVector &b);

} // namespace toricsr
