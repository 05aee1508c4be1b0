#pragma once

// Simple undirected graphs, walk matrices and the per-graph arithmetic
// profile that drives the level bounds.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walkspec/exact.hpp"
#include "walkspec/factor.hpp"

namespace walkspec {

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  // Throws DomainError unless `adjacency` is a symmetric 0-1 matrix with zero diagonal.
  static Graph from_adjacency(const IntMatrix& adjacency);
  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t order() const { return n_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  void set_edge(std::size_t i, std::size_t j, bool present = true);
  std::size_t degree(std::size_t v) const;
  std::size_t edge_count() const;

  IntMatrix adjacency() const;
  Graph complement() const;
  // Vertex v of the result is vertex perm[v] of this graph.
  Graph relabeled(const std::vector<std::size_t>& perm) const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

// [e, Ae, ..., A^{n-1} e]
IntMatrix walk_matrix(const Graph& g);

struct PrimeData {
  unsigned valuation = 0;  // v_p(|det W|)
  std::size_t rank = 0;    // rank of W over Z/pZ
};

struct WalkProfile {
  std::size_t n = 0;
  IntMatrix walk;
  Integer det;  // signed
  bool controllable = false;
  std::vector<Integer> invariant_factors;  // d_1..d_n, zeros included
  Integer normalized_det;                  // det / 2^{floor(n/2)}, signed
  unsigned two_adic_valuation = 0;         // v_2(|det W|)
  std::map<Integer, PrimeData> primes;     // odd primes only
  std::vector<Integer> unfactored;         // composite cofactors left by the factorizer
  bool factorization_complete = true;

  const Integer& last_factor() const { return invariant_factors.back(); }  // d_n
};

struct ProfileOptions {
  // Empty means "auto": every odd prime dividing |normalized det|.
  std::vector<Integer> primes;
  FactorOptions factor;
  // When false an unfactorable cofactor raises ResourceCapError.
  bool allow_partial_factorization = false;
};

WalkProfile walk_profile(const Graph& g, const ProfileOptions& options = {});

bool generalized_cospectral(const Graph& g, const Graph& h);

struct IsomorphismOptions {
  std::size_t max_order = 24;
};

// Colour refinement followed by backtracking over refined classes.
bool isomorphic(const Graph& g, const Graph& h, const IsomorphismOptions& options = {});
std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& g, const Graph& h,
                                                         const IsomorphismOptions& options = {});

Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph& g);

}  // namespace walkspec
