#pragma once

// Exact integer linear algebra on dense matrices of GMP integers.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace walkspec {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

// Dense row-major matrix of arbitrary-precision integers. A plain value type:
// library operations take it by const reference and return fresh matrices.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntMatrix diagonal(const IntVector& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::span<const Integer> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  IntVector column(std::size_t j) const;
  const std::vector<Integer>& entries() const { return entries_; }

  IntMatrix transpose() const;

  bool operator==(const IntMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// Characteristic polynomial coefficients, lowest degree first.
struct IntPoly {
  std::vector<Integer> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  bool operator==(const IntPoly& other) const { return coefficients == other.coefficients; }
};

std::string to_string(const IntPoly& poly);

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntVector mat_vec(const IntMatrix& a, const IntVector& x);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix scaled(const IntMatrix& a, const Integer& factor);

Integer dot(const IntVector& a, const IntVector& b);

// Entrywise representatives in [0, modulus).
IntMatrix reduce_mod(const IntMatrix& a, const Integer& modulus);
IntVector reduce_mod(const IntVector& v, const Integer& modulus);
Integer mod_floor(const Integer& a, const Integer& modulus);

bool is_zero_mod(const IntVector& v, const Integer& modulus);
bool is_zero_mod(const IntMatrix& a, const Integer& modulus);

// Bareiss fraction-free elimination.
Integer det(const IntMatrix& a);

// Berkowitz division-free scheme; returns det(xI - a).
IntPoly char_poly(const IntMatrix& a);

// Solves a * X = det(a) * b exactly with fraction-free elimination. The
// returned pair is (X, d) where d = +-det(a) and a * X = d * b; d = 0 means
// a is singular and X is empty.
struct ScaledSolution {
  IntMatrix numerators;
  Integer denominator;
};
ScaledSolution solve_scaled(const IntMatrix& a, const IntMatrix& b);

// Largest k with p^k | m. Throws DomainError when m = 0.
unsigned valuation(const Integer& m, const Integer& p);

// gcd of every entry (0 for the zero matrix).
Integer content(const IntMatrix& a);

Integer power(const Integer& base, unsigned exponent);

}  // namespace walkspec
