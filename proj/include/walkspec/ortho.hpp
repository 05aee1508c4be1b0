#pragma once

// Rational regular orthogonal matrices stored as (l*Q, l) in lowest terms.

#include "walkspec/exact.hpp"
#include "walkspec/graph.hpp"

namespace walkspec {

class RatRegOrtho {
 public:
  // Reduces (numerators / denominator) to lowest terms and checks
  // orthogonality and regularity exactly. Throws DomainError otherwise.
  static RatRegOrtho make(const IntMatrix& numerators, const Integer& denominator);
  static RatRegOrtho identity(std::size_t n);
  // Permutation matrix with a 1 at (perm[j], j) for every column j.
  static RatRegOrtho permutation(const std::vector<std::size_t>& perm);

  const IntMatrix& scaled() const { return num_; }  // l * Q
  const Integer& level() const { return den_; }
  std::size_t order() const { return num_.rows(); }
  bool is_permutation() const;

  bool operator==(const RatRegOrtho&) const = default;

 private:
  RatRegOrtho(IntMatrix num, Integer den) : num_(std::move(num)), den_(std::move(den)) {}
  IntMatrix num_;
  Integer den_;
};

// Orthogonality (num^T num = den^2 I) and regularity (row and column sums = den).
bool is_regular_orthogonal(const IntMatrix& num, const Integer& den);

// The unique Q with Q^T A(g) Q = A(h), from Q^T = W(h) W(g)^{-1}.
// Throws DomainError when g is not controllable or the pair is not
// generalized cospectral.
RatRegOrtho from_pair(const Graph& g, const Graph& h);

const Integer& level(const RatRegOrtho& q);

// The mate Q^T A(g) Q. Throws DomainError ("Q not in Q(G)") when the
// conjugate is not exactly an adjacency matrix.
Graph conjugate(const RatRegOrtho& q, const Graph& g);

}  // namespace walkspec
