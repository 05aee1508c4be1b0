#pragma once

// Randomized experiments over Erdos-Renyi graphs: controllability rejection
// sampling, level bounds, exhaustive mate search up to a level cap, and the
// consistency checks run on every discovered mate.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "walkspec/report.hpp"

namespace walkspec {

struct SweepConfig {
  std::size_t n_min = 6;
  std::size_t n_max = 10;
  std::size_t graph_count = 500;
  std::uint64_t edge_numerator = 1;  // edge probability as a fraction
  std::uint64_t edge_denominator = 2;
  std::uint64_t seed = 42;
  Integer level_cap = 64;
  std::vector<Integer> primes;  // empty: every odd prime of the normalized determinant
  bool search_mates = true;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::uint64_t max_attempts = 0;  // 0: 1000 * graph_count
  SearchLimits limits;
};

// The graph drawn at attempt `index`. Each attempt owns an mt19937_64 stream
// seeded with splitmix64(seed ^ splitmix64(index)); n is drawn first, then the
// upper triangle row by row. Uniform draws use rejection, never modulo bias.
Graph sample_graph(const SweepConfig& config, std::uint64_t index);

struct GraphOutcome {
  std::uint64_t attempt = 0;
  Analysis analysis;
  std::vector<MateClass> classes;
  std::vector<Integer> levels_searched;
  std::vector<Integer> levels_skipped;
  std::vector<WitnessCheck> witnesses;
  ConjectureReport conjecture;
  std::vector<std::string> theorem_violations;  // v_p(level) > floor(v_p(det W) / 2) under the rank condition
  std::vector<std::string> bound_violations;    // level exceeds any reported per-prime bound
  std::vector<std::string> mate_count_violations;
  std::vector<std::string> invariant_errors;
  std::string resource_error;  // search abandoned on a cap
};

struct SweepReport {
  SweepConfig config;
  std::map<std::size_t, std::pair<std::uint64_t, std::uint64_t>> acceptance;  // n -> (attempts, controllable)
  std::vector<GraphOutcome> graphs;

  std::size_t theorem_violations() const;
  std::size_t bound_violations() const;
  std::size_t lemma_failures() const;
  std::size_t witness_count() const;
  std::size_t mate_count_violations() const;
  std::size_t mate_count_eligible() const;
  std::size_t conjecture_violations() const;
  std::size_t invariant_errors() const;
  std::size_t resource_errors() const;
};

// Throws DomainError for an invalid configuration.
SweepReport run_sweep(const SweepConfig& config);

// The heavy per-graph step, exposed for tests.
GraphOutcome sweep_graph(const Graph& g, const SweepConfig& config);

Json sweep_json(const SweepReport& report);
std::string sweep_table(const SweepReport& report);

}  // namespace walkspec
