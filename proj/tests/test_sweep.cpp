#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "walkspec/error.hpp"
#include "walkspec/graph.hpp"
#include "walkspec/sweep.hpp"
#include "support.hpp"

using namespace walkspec;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.graph_count = 24;
  c.n_min = 7;
  c.n_max = 9;
  c.seed = 5;
  c.level_cap = 64;
  return c;
}

}  // namespace

TEST_CASE("sample_graph is a pure function of seed and index") {
  SweepConfig c = small_config();
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Graph a = sample_graph(c, i);
    const Graph b = sample_graph(c, i);
    CHECK(emit_graph6(a) == emit_graph6(b));
    CHECK(a.order() >= c.n_min);
    CHECK(a.order() <= c.n_max);
  }
  SweepConfig other = c;
  other.seed = 6;
  int differ = 0;
  for (std::uint64_t i = 0; i < 20; ++i)
    if (emit_graph6(sample_graph(c, i)) != emit_graph6(sample_graph(other, i))) ++differ;
  CHECK(differ > 10);
}

TEST_CASE("edge probability extremes") {
  SweepConfig c = small_config();
  c.edge_numerator = 0;
  CHECK(sample_graph(c, 3).edge_count() == 0);
  c.edge_numerator = 1;
  c.edge_denominator = 1;
  const Graph g = sample_graph(c, 3);
  CHECK(g.edge_count() == g.order() * (g.order() - 1) / 2);
}

TEST_CASE("invalid configurations are rejected") {
  SweepConfig c = small_config();
  c.n_min = 10;
  c.n_max = 9;
  CHECK_THROWS_AS(run_sweep(c), DomainError);
  c = small_config();
  c.edge_numerator = 3;
  c.edge_denominator = 2;
  CHECK_THROWS_AS(run_sweep(c), DomainError);
  c = small_config();
  c.edge_denominator = 0;
  CHECK_THROWS_AS(run_sweep(c), DomainError);
  c = small_config();
  c.level_cap = 0;
  CHECK_THROWS_AS(run_sweep(c), DomainError);
}

TEST_CASE("empty sweep") {
  SweepConfig c = small_config();
  c.graph_count = 0;
  const SweepReport r = run_sweep(c);
  CHECK(r.graphs.empty());
  const Json j = sweep_json(r);
  CHECK(j["summary"]["graphs"] == 0);
  CHECK(j["summary"]["theorem_violations"] == 0);
}

TEST_CASE("output does not depend on the thread count") {
  SweepConfig c = small_config();
  c.threads = 1;
  const std::string one = sweep_json(run_sweep(c)).dump();
  c.threads = 4;
  const std::string four = sweep_json(run_sweep(c)).dump();
  CHECK(one == four);
  CHECK(one == sweep_json(run_sweep(c)).dump());
}

TEST_CASE("a small sweep is consistent") {
  SweepConfig c = small_config();
  c.graph_count = 60;
  const SweepReport r = run_sweep(c);
  REQUIRE(r.graphs.size() == 60);
  CHECK(r.theorem_violations() == 0);
  CHECK(r.bound_violations() == 0);
  CHECK(r.lemma_failures() == 0);
  CHECK(r.mate_count_violations() == 0);
  CHECK(r.invariant_errors() == 0);
  CHECK(r.resource_errors() == 0);
  std::uint64_t controllable = 0;
  for (const auto& [n, counts] : r.acceptance) {
    CHECK(counts.second <= counts.first);
    controllable += counts.second;
  }
  CHECK(controllable >= 60);
  std::uint64_t last = 0;
  for (std::size_t i = 0; i < r.graphs.size(); ++i) {
    const GraphOutcome& o = r.graphs[i];
    CHECK(o.analysis.profile.controllable);
    if (i > 0) CHECK(o.attempt > last);
    last = o.attempt;
    CHECK(emit_graph6(sample_graph(c, o.attempt)) == emit_graph6(o.analysis.graph));
    for (const auto& m : o.classes) CHECK(o.analysis.profile.invariant_factors.back() % m.level == 0);
  }
}

TEST_CASE("sweep_graph on the fixture finds both mates") {
  SweepConfig c;
  c.level_cap = 64;
  const GraphOutcome o = sweep_graph(support::example1_graph(), c);
  std::size_t mates = 0;
  for (const auto& m : o.classes)
    if (!m.isomorphic_to_input) ++mates;
  CHECK(mates == 2);
  CHECK(o.theorem_violations.empty());
  CHECK(o.bound_violations.empty());
  CHECK(o.resource_error.empty());
  for (const auto& w : o.witnesses) CHECK(w.lemmas.passed());
}

TEST_CASE("uncontrollable graphs are rejected by sweep_graph") {
  CHECK_THROWS_AS(sweep_graph(Graph(6), SweepConfig{}), DomainError);
}
