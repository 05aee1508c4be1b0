#include "walkspec/exact.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

#include "walkspec/error.hpp"

namespace walkspec {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw DomainError("IntMatrix: entry count does not match shape");
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> data;
  for (const auto& r : rows) {
    IntVector row;
    for (long x : r) row.emplace_back(x);
    data.push_back(std::move(row));
  }
  return from_rows(data);
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  std::vector<Integer> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DomainError("IntMatrix::from_rows: ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return IntMatrix(rows.size(), cols, std::move(entries));
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DomainError("IntMatrix::from_columns: ragged columns");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  return os;
}

std::string to_string(const IntPoly& poly) {
  std::ostringstream os;
  bool first = true;
  for (int d = poly.degree(); d >= 0; --d) {
    const Integer& c = poly.coefficients[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || d == 0) os << mag;
    if (d >= 1) os << 'x';
    if (d >= 2) os << '^' << d;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("mat_mul: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  Integer acc;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
      }
    }
  }
  return c;
}

IntVector mat_vec(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw DomainError("mat_vec: dimension mismatch");
  IntVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      mpz_addmul(y[i].get_mpz_t(), a(i, j).get_mpz_t(), x[j].get_mpz_t());
  return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return mat_mul(a, b); }

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix add: shape mismatch");
  std::vector<Integer> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries()[i] + b.entries()[i];
  return IntMatrix(a.rows(), a.cols(), std::move(e));
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix sub: shape mismatch");
  std::vector<Integer> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries()[i] - b.entries()[i];
  return IntMatrix(a.rows(), a.cols(), std::move(e));
}

IntMatrix scaled(const IntMatrix& a, const Integer& factor) {
  std::vector<Integer> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries()[i] * factor;
  return IntMatrix(a.rows(), a.cols(), std::move(e));
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DomainError("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

Integer mod_floor(const Integer& a, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

IntMatrix reduce_mod(const IntMatrix& a, const Integer& modulus) {
  std::vector<Integer> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = mod_floor(a.entries()[i], modulus);
  return IntMatrix(a.rows(), a.cols(), std::move(e));
}

IntVector reduce_mod(const IntVector& v, const Integer& modulus) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = mod_floor(v[i], modulus);
  return r;
}

bool is_zero_mod(const IntVector& v, const Integer& modulus) {
  return std::all_of(v.begin(), v.end(), [&](const Integer& x) {
    return mpz_divisible_p(x.get_mpz_t(), modulus.get_mpz_t()) != 0;
  });
}

bool is_zero_mod(const IntMatrix& a, const Integer& modulus) { return is_zero_mod(a.entries(), modulus); }

Integer det(const IntMatrix& a) {
  if (!a.is_square()) throw DomainError("det: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k);
        mpz_submul(t.get_mpz_t(), m(i, k).get_mpz_t(), m(k, j).get_mpz_t());
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntPoly char_poly(const IntMatrix& a) {
  if (!a.is_square()) throw DomainError("char_poly: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return IntPoly{{Integer(1)}};

  // Coefficients highest degree first while iterating over leading minors.
  std::vector<Integer> poly{Integer(1), Integer(-a(0, 0))};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column t = [1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C] for the
    // bordering row R, column C and leading block A of size r.
    std::vector<Integer> t(r + 2);
    t[0] = 1;
    t[1] = -a(r, r);
    IntVector col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Integer s = 0;
      for (std::size_t i = 0; i < r; ++i) mpz_addmul(s.get_mpz_t(), a(r, i).get_mpz_t(), col[i].get_mpz_t());
      t[k + 2] = -s;
      if (k + 1 < r) {
        IntVector next(r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            mpz_addmul(next[i].get_mpz_t(), a(i, j).get_mpz_t(), col[j].get_mpz_t());
        col = std::move(next);
      }
    }
    std::vector<Integer> next_poly(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) {
        mpz_addmul(next_poly[i].get_mpz_t(), t[i - j].get_mpz_t(), poly[j].get_mpz_t());
      }
    }
    poly = std::move(next_poly);
  }
  std::reverse(poly.begin(), poly.end());
  return IntPoly{std::move(poly)};
}

ScaledSolution solve_scaled(const IntMatrix& a, const IntMatrix& b) {
  if (!a.is_square()) throw DomainError("solve_scaled: matrix is not square");
  if (a.rows() != b.rows()) throw DomainError("solve_scaled: dimension mismatch");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  if (n == 0) return {IntMatrix(0, m), Integer(1)};

  // Augmented Bareiss elimination; after the forward pass the last pivot is
  // +-det(a) and every (det * solution) entry is integral.
  IntMatrix aug(n, n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < m; ++j) aug(i, n + j) = b(i, j);
  }
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (aug(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && aug(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return {IntMatrix(), Integer(0)};
      for (std::size_t j = 0; j < n + m; ++j) std::swap(aug(k, j), aug(swap_row, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n + m; ++j) {
        Integer t = aug(i, j) * aug(k, k);
        mpz_submul(t.get_mpz_t(), aug(i, k).get_mpz_t(), aug(k, j).get_mpz_t());
        mpz_divexact(aug(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      aug(i, k) = 0;
    }
    prev = aug(k, k);
  }
  const Integer d = prev;
  IntMatrix x(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t ii = n; ii-- > 0;) {
      Integer s = d * aug(ii, n + c);
      for (std::size_t j = ii + 1; j < n; ++j) mpz_submul(s.get_mpz_t(), aug(ii, j).get_mpz_t(), x(j, c).get_mpz_t());
      mpz_divexact(x(ii, c).get_mpz_t(), s.get_mpz_t(), aug(ii, ii).get_mpz_t());
    }
  }
  return {std::move(x), d};
}

unsigned valuation(const Integer& m, const Integer& p) {
  if (m == 0) throw DomainError("valuation: undefined for zero");
  if (p < 2) throw DomainError("valuation: base must be at least 2");
  Integer rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

Integer content(const IntMatrix& a) {
  Integer g = 0;
  for (const auto& x : a.entries()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Integer power(const Integer& base, unsigned exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

}  // namespace walkspec
