#pragma once

// Exhaustive enumeration of Q(G) at prescribed levels: integral columns of
// l*Q are enumerated on a lattice slice, then assembled into full matrices.

#include <cstdint>
#include <vector>

#include "walkspec/bounds.hpp"
#include "walkspec/exact.hpp"
#include "walkspec/graph.hpp"
#include "walkspec/ortho.hpp"

namespace walkspec {

struct SearchLimits {
  std::size_t max_candidates = 1'000'000;
  std::uint64_t max_nodes = 100'000'000;
  std::uint64_t max_residues = 10'000'000;
  // Candidate entries are held in 64-bit integers.
  std::int64_t max_level = 1 << 20;
};

// v with v^T v = l^2, e^T v = l and W^T v = 0 (mod l).
struct ColumnCandidate {
  std::vector<std::int64_t> v;

  IntVector to_int_vector() const;
  auto operator<=>(const ColumnCandidate&) const = default;
};

std::vector<ColumnCandidate> enumerate_columns(const Graph& g, const Integer& level, const SearchLimits& limits = {});

struct MateClass {
  RatRegOrtho q;  // canonical representative: columns of l*Q sorted lexicographically
  Graph mate;
  Integer level;
  bool isomorphic_to_input = false;
  bool level_divides_dn = true;
};

enum class SearchBackend { Backtrack, Clique };

struct SearchOptions {
  SearchLimits limits;
  SearchBackend backend = SearchBackend::Backtrack;
  IsomorphismOptions isomorphism;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t candidates = 0;
};

// Every Q in Q(G) whose level lies in `levels`, one per class under Q -> QP.
std::vector<MateClass> search_mates(const Graph& g, const std::vector<Integer>& levels,
                                    const SearchOptions& options = {}, SearchStats* stats = nullptr);

// Lexicographically least arrangement of the columns (row-major order).
IntMatrix canonical_columns(const IntMatrix& m);

// Quotient by right multiplication with permutation matrices.
std::vector<MateClass> dedupe(std::vector<MateClass> classes);

struct LevelPlan {
  std::vector<Integer> levels;   // searched, ascending
  std::vector<Integer> skipped;  // admissible but above the cap
};

// Divisors of d_n whose p-exponents respect the per-prime bounds, capped.
LevelPlan bounded_levels(const WalkProfile& profile, const LevelBoundReport& bounds, const Integer& cap);
// Every divisor of d_n up to the cap, with no bound applied.
LevelPlan all_levels(const WalkProfile& profile, const Integer& cap);

}  // namespace walkspec
