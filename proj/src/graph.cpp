#include "walkspec/graph.hpp"

#include <algorithm>
#include <sstream>

#include "walkspec/error.hpp"
#include "walkspec/snf.hpp"

namespace walkspec {

Graph::Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

Graph Graph::from_adjacency(const IntMatrix& adjacency) {
  if (!adjacency.is_square()) throw DomainError("adjacency matrix is not square");
  const std::size_t n = adjacency.rows();
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Integer& a = adjacency(i, j);
      if (a != 0 && a != 1) throw DomainError("adjacency entry is not 0 or 1");
      if (a != adjacency(j, i)) throw DomainError("adjacency matrix is not symmetric");
      if (i == j && a != 0) throw DomainError("adjacency matrix has a nonzero diagonal");
      g.adj_[i * n + j] = (a == 1);
    }
  }
  return g;
}

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g(n);
  for (auto [i, j] : edges) g.set_edge(i, j);
  return g;
}

void Graph::set_edge(std::size_t i, std::size_t j, bool present) {
  if (i >= n_ || j >= n_) throw DomainError("edge endpoint out of range");
  if (i == j) throw DomainError("loops are not allowed");
  adj_[i * n_ + j] = adj_[j * n_ + i] = present;
}

std::size_t Graph::degree(std::size_t v) const {
  return static_cast<std::size_t>(std::count(adj_.begin() + v * n_, adj_.begin() + (v + 1) * n_, 1));
}

std::size_t Graph::edge_count() const { return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1)) / 2; }

IntMatrix Graph::adjacency() const {
  IntMatrix a(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) a(i, j) = adj_[i * n_ + j];
  return a;
}

Graph Graph::complement() const {
  Graph c(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) c.adj_[i * n_ + j] = (i != j) && !adj_[i * n_ + j];
  return c;
}

Graph Graph::relabeled(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw DomainError("relabeled: permutation has wrong length");
  Graph r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r.adj_[i * n_ + j] = adj_[perm[i] * n_ + perm[j]];
  return r;
}

IntMatrix walk_matrix(const Graph& g) {
  const std::size_t n = g.order();
  IntMatrix w(n, n);
  IntVector col(n, Integer(1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) w(i, j) = col[i];
    if (j + 1 == n) break;
    IntVector next(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (g.adjacent(i, k)) next[i] += col[k];
    col = std::move(next);
  }
  return w;
}

WalkProfile walk_profile(const Graph& g, const ProfileOptions& options) {
  WalkProfile prof;
  prof.n = g.order();
  prof.walk = walk_matrix(g);
  prof.det = det(prof.walk);
  prof.controllable = prof.det != 0;
  prof.invariant_factors = invariant_factors_full(prof.walk);
  if (!prof.controllable) return prof;

  const Integer two_power = power(Integer(2), static_cast<unsigned>(prof.n / 2));
  if (!mpz_divisible_p(prof.det.get_mpz_t(), two_power.get_mpz_t())) {
    throw InvariantViolation("2^floor(n/2) does not divide det W = " + prof.det.get_str());
  }
  prof.normalized_det = prof.det / two_power;
  prof.two_adic_valuation = valuation(prof.det, Integer(2));

  const Factorization f = factorize(prof.normalized_det, options.factor);
  if (!f.complete()) {
    if (!options.allow_partial_factorization) {
      std::ostringstream msg;
      msg << "factorization budget exhausted; unfactored part:";
      for (const auto& c : f.unfactored) msg << ' ' << c;
      throw ResourceCapError(msg.str());
    }
    prof.unfactored = f.unfactored;
    prof.factorization_complete = false;
  }
  std::vector<Integer> primes;
  for (const auto& [p, e] : f.primes)
    if (p != 2) primes.push_back(p);
  for (const auto& p : options.primes) {
    if (p == 2 || !is_probable_prime(p)) throw DomainError("requested prime " + p.get_str() + " is not an odd prime");
    primes.push_back(p);
  }
  for (const auto& p : primes) {
    if (prof.primes.count(p)) continue;
    PrimeData data;
    data.valuation = valuation(prof.det, p);
    data.rank = rank_mod_p(prof.walk, p);
    prof.primes.emplace(p, data);
  }
  return prof;
}

bool generalized_cospectral(const Graph& g, const Graph& h) {
  if (g.order() != h.order()) throw DomainError("generalized_cospectral: graphs have different orders");
  if (g.edge_count() != h.edge_count()) return false;
  return char_poly(g.adjacency()) == char_poly(h.adjacency()) &&
         char_poly(g.complement().adjacency()) == char_poly(h.complement().adjacency());
}

}  // namespace walkspec
