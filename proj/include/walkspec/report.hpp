#pragma once

// Per-graph pipelines behind the `analyze` and `mates` commands and their
// JSON and plain-text renderings.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "walkspec/bounds.hpp"
#include "walkspec/graph.hpp"
#include "walkspec/mates.hpp"
#include "walkspec/snf.hpp"

namespace walkspec {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Big integers are emitted as decimal strings.
Json integer_json(const Integer& x);
Json matrix_json(const IntMatrix& m);
// Entries as JSON numbers; for matrices known to have small entries.
Json small_matrix_json(const IntMatrix& m);

Json profile_json(const WalkProfile& profile);
Json bounds_json(const LevelBoundReport& bounds);
Json dgs_json(const DgsCertificate& certificate);
Json family_json(const FamilyMembership& membership);
Json mate_count_json(const MateCountBounds& bounds);
Json mate_class_json(const MateClass& mate);
Json witness_json(const FourCongWitness& witness);
Json lemma_json(const LemmaReport& report);
Json conjecture_json(const ConjectureReport& report);
Json snf_json(const SnfResult& snf);

struct Analysis {
  Graph graph;
  WalkProfile profile;
  // Only filled for controllable graphs.
  std::optional<LevelBoundReport> bounds;
  std::optional<DgsCertificate> dgs;
  std::optional<FamilyMembership> family;
  MateCountBounds mate_count;
};

Analysis analyze(const Graph& g, const ProfileOptions& options = {});
Json analysis_json(const Analysis& analysis);
std::string analysis_table(const std::vector<Analysis>& analyses);

struct WitnessCheck {
  std::size_t class_index = 0;
  FourCongWitness witness;
  LemmaReport lemmas;
};

struct MatesRun {
  Analysis analysis;
  LevelPlan plan;
  std::vector<MateClass> classes;
  std::vector<WitnessCheck> witnesses;
  ConjectureReport conjecture;
  SearchStats stats;

  std::size_t mate_count() const;  // non-permutation classes
  bool lemmas_passed() const;
};

// nullopt levels: divisors of d_n allowed by the level bounds, up to level_cap.
MatesRun run_mates(const Graph& g, const std::optional<std::vector<Integer>>& levels, const Integer& level_cap,
                   const ProfileOptions& profile_options = {}, const SearchOptions& search_options = {});

// Witnesses and lemma replays for every non-permutation class and every odd
// prime p dividing its level with rank_p W = n-1.
std::vector<WitnessCheck> check_witnesses(const Graph& g, const WalkProfile& profile,
                                          const std::vector<MateClass>& classes);

Json mates_json(const MatesRun& run);
std::string mates_table(const MatesRun& run);

}  // namespace walkspec
