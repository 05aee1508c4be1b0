#include "walkspec/ortho.hpp"

#include "walkspec/error.hpp"

namespace walkspec {

bool is_regular_orthogonal(const IntMatrix& num, const Integer& den) {
  if (!num.is_square() || den <= 0) return false;
  const std::size_t n = num.rows();
  const Integer den2 = den * den;
  for (std::size_t i = 0; i < n; ++i) {
    Integer row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row_sum += num(i, j);
      col_sum += num(j, i);
    }
    if (row_sum != den || col_sum != den) return false;
  }
  const IntMatrix gram = mat_mul(num.transpose(), num);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (gram(i, j) != (i == j ? den2 : Integer(0))) return false;
  return true;
}

RatRegOrtho RatRegOrtho::make(const IntMatrix& numerators, const Integer& denominator) {
  if (denominator == 0) throw DomainError("RatRegOrtho: zero denominator");
  if (!numerators.is_square()) throw DomainError("RatRegOrtho: matrix is not square");
  Integer g = content(numerators);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), denominator.get_mpz_t());
  if (denominator < 0) g = -g;
  IntMatrix num(numerators.rows(), numerators.cols());
  for (std::size_t i = 0; i < num.rows(); ++i)
    for (std::size_t j = 0; j < num.cols(); ++j) mpz_divexact(num(i, j).get_mpz_t(), numerators(i, j).get_mpz_t(), g.get_mpz_t());
  Integer den = denominator / g;
  if (!is_regular_orthogonal(num, den)) throw DomainError("RatRegOrtho: matrix is not regular orthogonal");
  return RatRegOrtho(std::move(num), std::move(den));
}

RatRegOrtho RatRegOrtho::identity(std::size_t n) { return RatRegOrtho(IntMatrix::identity(n), Integer(1)); }

RatRegOrtho RatRegOrtho::permutation(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  IntMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (perm[j] >= n) throw DomainError("permutation entry out of range");
    p(perm[j], j) = 1;
  }
  return make(p, Integer(1));
}

bool RatRegOrtho::is_permutation() const {
  if (den_ != 1) return false;
  for (const auto& x : num_.entries())
    if (x != 0 && x != 1) return false;
  return true;
}

const Integer& level(const RatRegOrtho& q) { return q.level(); }

RatRegOrtho from_pair(const Graph& g, const Graph& h) {
  if (g.order() != h.order()) throw DomainError("from_pair: graphs have different orders");
  const IntMatrix wg = walk_matrix(g);
  const IntMatrix wh = walk_matrix(h);
  // Q = W(g)^{-T} W(h)^T, solved with one shared denominator.
  ScaledSolution sol = solve_scaled(wg.transpose(), wh.transpose());
  if (sol.denominator == 0) throw DomainError("from_pair: first graph is not controllable");
  RatRegOrtho q = [&] {
    try {
      return RatRegOrtho::make(sol.numerators, sol.denominator);
    } catch (const DomainError&) {
      throw DomainError("from_pair: graphs are not generalized cospectral");
    }
  }();
  const IntMatrix lhs = mat_mul(mat_mul(q.scaled().transpose(), g.adjacency()), q.scaled());
  if (lhs != scaled(h.adjacency(), q.level() * q.level())) {
    throw DomainError("from_pair: graphs are not generalized cospectral");
  }
  return q;
}

Graph conjugate(const RatRegOrtho& q, const Graph& g) {
  if (q.order() != g.order()) throw DomainError("conjugate: order mismatch");
  const IntMatrix c = mat_mul(mat_mul(q.scaled().transpose(), g.adjacency()), q.scaled());
  const Integer den2 = q.level() * q.level();
  const std::size_t n = g.order();
  Graph h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Integer& x = c(i, j);
      const bool edge = (x == den2);
      if (!edge && x != 0) throw DomainError("Q not in Q(G): conjugate is not a 0-1 matrix");
      if (i == j && edge) throw DomainError("Q not in Q(G): conjugate has a nonzero diagonal");
      if (edge && i < j) h.set_edge(i, j);
    }
  }
  return h;
}

}  // namespace walkspec
