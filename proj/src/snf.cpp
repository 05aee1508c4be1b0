#include "walkspec/snf.hpp"

#include <algorithm>
#include <utility>

#include "walkspec/error.hpp"
#include "walkspec/factor.hpp"

namespace walkspec {

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// row dst -= q * row src
void sub_row(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t c = 0; c < a.cols(); ++c) mpz_submul(a(dst, c).get_mpz_t(), q.get_mpz_t(), a(src, c).get_mpz_t());
}

void sub_col(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t r = 0; r < a.rows(); ++r) mpz_submul(a(r, dst).get_mpz_t(), q.get_mpz_t(), a(r, src).get_mpz_t());
}

void reduce_row(IntMatrix& a, std::size_t i, const Integer& modulus) {
  for (std::size_t c = 0; c < a.cols(); ++c) mpz_fdiv_r(a(i, c).get_mpz_t(), a(i, c).get_mpz_t(), modulus.get_mpz_t());
}

void reduce_col(IntMatrix& a, std::size_t j, const Integer& modulus) {
  for (std::size_t r = 0; r < a.rows(); ++r) mpz_fdiv_r(a(r, j).get_mpz_t(), a(r, j).get_mpz_t(), modulus.get_mpz_t());
}

void check_prime_power(const Integer& p, unsigned k) {
  if (!is_probable_prime(p)) throw DomainError("modulus base " + p.get_str() + " is not prime");
  if (k == 0) throw DomainError("prime-power exponent must be positive");
}

}  // namespace

Integer Ring::modulus() const { return kind == Kind::Integers ? Integer(0) : power(p, k); }

SnfResult snf_int(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SnfResult out;
  out.ring = Ring::integers();
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  std::size_t t = 0;
  const std::size_t diag = std::min(rows, cols);
  for (; t < diag; ++t) {
    bool exhausted = false;
    while (true) {
      // Smallest nonzero |entry| in the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (s(i, j) == 0) continue;
          if (pi == rows || mpz_cmpabs(s(i, j).get_mpz_t(), s(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) {
        exhausted = true;
        break;
      }
      swap_rows(s, t, pi);
      swap_rows(u, t, pi);
      swap_cols(s, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      Integer q;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        if (q != 0) {
          sub_row(s, i, t, q);
          sub_row(u, i, t, q);
        }
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        if (q != 0) {
          sub_col(s, j, t, q);
          sub_col(v, j, t, q);
        }
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the whole trailing block; otherwise fold the
      // offending row into the pivot row and reduce again.
      std::size_t bad_row = rows;
      if (mpz_cmpabs_ui(s(t, t).get_mpz_t(), 1) != 0) {
        for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
              bad_row = i;
              break;
            }
      }
      if (bad_row == rows) break;
      sub_row(s, t, bad_row, Integer(-1));
      sub_row(u, t, bad_row, Integer(-1));
    }
    if (exhausted) break;
    if (s(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) s(t, c) = -s(t, c);
      for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
    out.invariant_factors.push_back(s(t, t));
  }
  out.u = std::move(u);
  out.s = std::move(s);
  out.v = std::move(v);
  return out;
}

SnfResult snf_mod_pk(const IntMatrix& m, const Integer& p, unsigned k) {
  check_prime_power(p, k);
  const Integer modulus = power(p, k);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SnfResult out;
  out.ring = Ring::mod_prime_power(p, k);
  out.even_prime = (p == 2);
  IntMatrix s = reduce_mod(m, modulus);
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  const std::size_t diag = std::min(rows, cols);
  Integer rest, q, inv, pc;
  for (std::size_t t = 0; t < diag; ++t) {
    // Pivot of least p-adic valuation.
    std::size_t pi = rows, pj = cols;
    unsigned best = k;
    for (std::size_t i = t; i < rows && best > 0; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (s(i, j) == 0) continue;
        const auto val = static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), s(i, j).get_mpz_t(), p.get_mpz_t()));
        if (val < best) {
          best = val;
          pi = i;
          pj = j;
          if (val == 0) break;
        }
      }
    }
    if (pi == rows) break;
    swap_rows(s, t, pi);
    swap_rows(u, t, pi);
    swap_cols(s, t, pj);
    swap_cols(v, t, pj);

    // Scale the pivot row by the inverse of the unit part so the pivot is p^c.
    pc = power(p, best);
    mpz_divexact(rest.get_mpz_t(), s(t, t).get_mpz_t(), pc.get_mpz_t());
    if (mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), modulus.get_mpz_t()) == 0) {
      throw InvariantViolation("snf_mod_pk: unit part is not invertible");
    }
    for (std::size_t c = 0; c < cols; ++c) s(t, c) *= inv;
    for (std::size_t c = 0; c < rows; ++c) u(t, c) *= inv;
    reduce_row(s, t, modulus);
    reduce_row(u, t, modulus);

    for (std::size_t i = t + 1; i < rows; ++i) {
      if (s(i, t) == 0) continue;
      mpz_divexact(q.get_mpz_t(), s(i, t).get_mpz_t(), pc.get_mpz_t());
      sub_row(s, i, t, q);
      sub_row(u, i, t, q);
      reduce_row(s, i, modulus);
      reduce_row(u, i, modulus);
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (s(t, j) == 0) continue;
      mpz_divexact(q.get_mpz_t(), s(t, j).get_mpz_t(), pc.get_mpz_t());
      sub_col(s, j, t, q);
      sub_col(v, j, t, q);
      reduce_col(s, j, modulus);
      reduce_col(v, j, modulus);
    }
    out.invariant_factors.push_back(pc);
    out.exponents.push_back(best);
  }
  out.u = std::move(u);
  out.s = std::move(s);
  out.v = std::move(v);
  return out;
}

std::vector<Integer> invariant_factors_full(const IntMatrix& m) {
  std::vector<Integer> d = snf_int(m).invariant_factors;
  d.resize(std::min(m.rows(), m.cols()), Integer(0));
  return d;
}

std::size_t rank_mod_p(const IntMatrix& m, const Integer& p) { return snf_mod_pk(m, p, 1).rank(); }

Solvability solvable_mod_pk(const IntMatrix& m, const IntVector& b, const Integer& p, unsigned k) {
  if (b.size() != m.rows()) throw DomainError("solvable_mod_pk: right-hand side has wrong length");
  const Integer modulus = power(p, k);
  const SnfResult snf = snf_mod_pk(m, p, k);

  IntMatrix augmented(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) augmented(i, j) = m(i, j);
    augmented(i, m.cols()) = b[i];
  }
  const bool same_factors = snf_mod_pk(augmented, p, k).exponents == snf.exponents;

  const IntVector ub = reduce_mod(mat_vec(snf.u, b), modulus);
  IntVector y(m.cols());
  bool consistent = true;
  for (std::size_t i = 0; i < ub.size() && consistent; ++i) {
    if (i < snf.rank()) {
      const Integer& pc = snf.invariant_factors[i];
      if (!mpz_divisible_p(ub[i].get_mpz_t(), pc.get_mpz_t())) {
        consistent = false;
      } else {
        mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), pc.get_mpz_t());
      }
    } else if (ub[i] != 0) {
      consistent = false;
    }
  }
  if (consistent != same_factors) {
    throw InvariantViolation("solvable_mod_pk: invariant-factor criterion disagrees with transform solve");
  }
  Solvability out;
  if (!consistent) return out;
  out.solvable = true;
  out.solution = reduce_mod(mat_vec(snf.v, y), modulus);
  IntVector residual = mat_vec(m, out.solution);
  for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= b[i];
  if (!is_zero_mod(residual, modulus)) throw InvariantViolation("solvable_mod_pk: extracted solution fails");
  return out;
}

unsigned long KernelShape::log_size() const {
  unsigned long total = static_cast<unsigned long>(k) * free_rank;
  for (unsigned c : torsion_exponents) total += c;
  return total;
}

KernelShape kernel_shape(const IntMatrix& m, const Integer& p, unsigned k) {
  const SnfResult snf = snf_mod_pk(m, p, k);
  KernelShape out;
  out.modulus = power(p, k);
  out.k = k;
  out.free_rank = m.cols() - snf.rank();
  for (std::size_t i = 0; i < snf.rank(); ++i) {
    const unsigned c = snf.exponents[i];
    if (c == 0) continue;
    out.torsion_exponents.push_back(c);
    const Integer scale = power(p, k - c);
    IntVector g = snf.v.column(i);
    for (auto& x : g) x *= scale;
    out.generators.push_back(reduce_mod(g, out.modulus));
  }
  std::vector<IntVector> free;
  for (std::size_t j = snf.rank(); j < m.cols(); ++j) free.push_back(snf.v.column(j));
  out.generators.insert(out.generators.end(), free.begin(), free.end());
  if (out.torsion_exponents.empty()) out.free_basis = std::move(free);
  return out;
}

DnTest dn_test(const IntMatrix& m, const Integer& p, unsigned k) {
  if (m.rows() < m.cols()) throw DomainError("dn_test: matrix must have at least as many rows as columns");
  const SnfResult snf = snf_mod_pk(m, p, k);
  DnTest out;
  // Over Z/p^kZ the last invariant factor vanishes exactly when p^k | d_n.
  out.holds = snf.rank() < m.cols();
  if (!out.holds || m.cols() == 0) return out;
  const Integer modulus = power(p, k);
  out.witness = snf.v.column(m.cols() - 1);
  if (!is_zero_mod(mat_vec(m, out.witness), modulus) || is_zero_mod(out.witness, p)) {
    throw InvariantViolation("dn_test: witness check failed");
  }
  return out;
}

std::vector<IntVector> extend_basis(const std::vector<IntVector>& vectors,
                                    const std::vector<IntVector>& module_basis,
                                    const Integer& p, unsigned k) {
  if (module_basis.empty()) {
    if (!vectors.empty()) throw DomainError("extend_basis: vectors outside the zero module");
    return {};
  }
  const std::size_t n = module_basis.front().size();
  const std::size_t rank = module_basis.size();
  if (vectors.size() > rank) throw DomainError("extend_basis: more vectors than the module rank");
  for (const auto& v : vectors)
    if (v.size() != n) throw DomainError("extend_basis: vector length mismatch");

  const IntMatrix basis = IntMatrix::from_columns(module_basis, n);
  if (rank_mod_p(basis, p) != rank) throw DomainError("extend_basis: module basis is not independent mod p");
  if (!vectors.empty() && rank_mod_p(IntMatrix::from_columns(vectors, n), p) != vectors.size()) {
    throw DomainError("extend_basis: input vectors are dependent mod p");
  }

  // Coordinates of the inputs in the module basis.
  std::vector<IntVector> coords;
  for (const auto& v : vectors) {
    Solvability sol = solvable_mod_pk(basis, v, p, k);
    if (!sol.solvable) throw DomainError("extend_basis: input vector lies outside the module");
    coords.push_back(std::move(sol.solution));
  }

  std::vector<IntVector> result = vectors;
  for (std::size_t i = 0; i < rank && coords.size() < rank; ++i) {
    IntVector unit(rank);
    unit[i] = 1;
    coords.push_back(unit);
    if (rank_mod_p(IntMatrix::from_columns(coords, rank), p) == coords.size()) {
      result.push_back(module_basis[i]);
    } else {
      coords.pop_back();
    }
  }
  return result;
}

}  // namespace walkspec
