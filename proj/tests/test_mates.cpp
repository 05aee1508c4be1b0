#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "walkspec/error.hpp"
#include "walkspec/mates.hpp"

using namespace walkspec;

namespace {

using ClassKey = std::pair<Integer, std::vector<Integer>>;

std::set<ClassKey> keys(const std::vector<MateClass>& classes) {
  std::set<ClassKey> out;
  for (const auto& c : classes) out.insert({c.level, c.q.scaled().entries()});
  return out;
}

std::set<ClassKey> brute_force_keys(const Graph& g) {
  std::set<ClassKey> out;
  for (const auto& h : oracle::generalized_cospectral_brute_force(g)) {
    const RatRegOrtho q = from_pair(g, h);
    out.insert({q.level(), canonical_columns(q.scaled()).entries()});
  }
  return out;
}

std::vector<Integer> every_level(const Graph& g) {
  return all_levels(walk_profile(g), Integer(1) << 30).levels;
}

bool contains_columns(const std::vector<ColumnCandidate>& cands, const IntMatrix& m) {
  std::set<IntVector> have;
  for (const auto& c : cands) have.insert(c.to_int_vector());
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!have.count(m.column(j))) return false;
  return true;
}

}  // namespace

TEST_CASE("level 1 columns are the standard basis") {
  std::mt19937_64 rng(83);
  int done = 0;
  while (done < 20) {
    const Graph g = oracle::random_graph(rng, 6 + done % 5);
    if (det(walk_matrix(g)) == 0) continue;
    const auto cands = enumerate_columns(g, 1);
    REQUIRE(cands.size() == g.order());
    for (const auto& c : cands) {
      CHECK(std::count(c.v.begin(), c.v.end(), 1) == 1);
      CHECK(std::count(c.v.begin(), c.v.end(), 0) == static_cast<long>(g.order() - 1));
    }
    ++done;
  }
}

TEST_CASE("fixture columns are enumerated") {
  const Graph g = support::example1_graph();
  CHECK(contains_columns(enumerate_columns(g, 3), support::example1_q(1).scaled()));
  CHECK(contains_columns(enumerate_columns(g, 9), support::example1_q(2).scaled()));
}

TEST_CASE("column candidates satisfy the defining conditions") {
  const Graph g = support::example1_graph();
  const IntMatrix wt = walk_matrix(g).transpose();
  for (long l : {2, 3, 6, 9, 18}) {
    const auto cands = enumerate_columns(g, l);
    CHECK(std::is_sorted(cands.begin(), cands.end()));
    for (const auto& c : cands) {
      const IntVector v = c.to_int_vector();
      CHECK(dot(v, v) == l * l);
      CHECK(std::accumulate(v.begin(), v.end(), Integer(0)) == l);
      CHECK(is_zero_mod(mat_vec(wt, v), l));
    }
  }
}

TEST_CASE("column enumeration is complete for small orders") {
  // every integer vector in the box [-l, l]^n, filtered by the conditions
  std::mt19937_64 rng(89);
  int done = 0;
  while (done < 8) {
    const std::size_t n = 6 + done % 2;
    const Graph g = oracle::random_graph(rng, n);
    const IntMatrix w = walk_matrix(g);
    if (det(w) == 0) continue;
    std::vector<std::vector<std::int64_t>> wt(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) wt[i][j] = w(j, i).get_si();
    for (std::int64_t l : {2, 3, 4}) {
      if (n == 7 && l == 4) continue;
      std::set<std::vector<std::int64_t>> expected;
      oracle::for_each_vector(n, 2 * l + 1, [&](const std::vector<std::int64_t>& x) {
        std::vector<std::int64_t> v(n);
        std::int64_t norm = 0, sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
          v[i] = x[i] - l;
          norm += v[i] * v[i];
          sum += v[i];
        }
        if (norm != l * l || sum != l) return;
        for (std::size_t i = 0; i < n; ++i) {
          std::int64_t t = 0;
          for (std::size_t j = 0; j < n; ++j) t += wt[i][j] * v[j];
          if (t % l != 0) return;
        }
        expected.insert(v);
      });
      std::set<std::vector<std::int64_t>> got;
      for (const auto& c : enumerate_columns(g, l)) got.insert(c.v);
      CHECK(got == expected);
    }
    ++done;
  }
}

TEST_CASE("fixture classes") {
  const Graph g = support::example1_graph();
  const auto classes = search_mates(g, {1, 3, 9});
  REQUIRE(classes.size() == 3);
  CHECK(classes[0].level == 1);
  CHECK(classes[0].isomorphic_to_input);
  CHECK(classes[1].level == 3);
  CHECK(classes[2].level == 9);
  CHECK(classes[1].q.scaled() == canonical_columns(support::example1_q(1).scaled()));
  CHECK(classes[2].q.scaled() == canonical_columns(support::example1_q(2).scaled()));
  for (const auto& c : classes) CHECK(c.level_divides_dn);
  CHECK_FALSE(isomorphic(classes[1].mate, classes[2].mate));
}

TEST_CASE("levels above the bound add nothing for the fixture") {
  const Graph g = support::example1_graph();
  const auto classes = search_mates(g, every_level(g));
  CHECK(classes.size() == 3);
}

TEST_CASE("level 1 gives only the permutation class") {
  std::mt19937_64 rng(97);
  int done = 0;
  while (done < 20) {
    const Graph g = oracle::random_graph(rng, 6 + done % 5);
    if (det(walk_matrix(g)) == 0) continue;
    const auto classes = search_mates(g, {1});
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].isomorphic_to_input);
    CHECK(classes[0].q.is_permutation());
    ++done;
  }
}

TEST_CASE("soundness and backend agreement on random graphs") {
  std::mt19937_64 rng(101);
  int done = 0, with_mates = 0;
  SearchOptions clique;
  clique.backend = SearchBackend::Clique;
  while (done < 60) {
    const Graph g = oracle::random_graph(rng, 8 + done % 3);
    if (det(walk_matrix(g)) == 0) continue;
    ++done;
    const WalkProfile p = walk_profile(g);
    const auto levels = all_levels(p, 64).levels;
    SearchStats stats;
    const auto a = search_mates(g, levels, {}, &stats);
    const auto b = search_mates(g, levels, clique);
    CHECK(keys(a) == keys(b));
    CHECK(stats.nodes > 0);
    with_mates += a.size() > 1 ? 1 : 0;
    for (const auto& c : a) {
      const IntMatrix& qhat = c.q.scaled();
      CHECK(qhat.transpose() * qhat == scaled(IntMatrix::identity(g.order()), c.level * c.level));
      CHECK(is_regular_orthogonal(qhat, c.level));
      const Graph h = conjugate(c.q, g);
      CHECK(h == c.mate);
      CHECK(generalized_cospectral(g, h));
      CHECK(from_pair(g, h) == c.q);
      CHECK(c.isomorphic_to_input == isomorphic(g, h));
      CHECK(c.level_divides_dn);
      CHECK(qhat == canonical_columns(qhat));
    }
  }
  CHECK(with_mates > 0);
}

TEST_CASE("completeness against brute force on graphs with mates") {
  // order 8 graphs found to have mates; no controllable graph on 7 or fewer
  // vertices has one
  for (const char* text : {"GoW~@{", "GZkNJK", "Gt|Asc"}) {
    const Graph g = parse_graph6(text);
    const auto expected = brute_force_keys(g);
    CHECK(expected.size() == 2);
    CHECK(keys(search_mates(g, every_level(g))) == expected);
  }
}

TEST_CASE("completeness against brute force on small random graphs") {
  std::mt19937_64 rng(103);
  int done = 0;
  while (done < 10) {
    const Graph g = oracle::random_graph(rng, 6 + done % 2);
    if (det(walk_matrix(g)) == 0) continue;
    CHECK(keys(search_mates(g, every_level(g))) == brute_force_keys(g));
    ++done;
  }
}

TEST_CASE("DGS-certified graphs have no mates") {
  std::mt19937_64 rng(107);
  int done = 0;
  while (done < 15) {
    const Graph g = oracle::random_graph(rng, 7 + done % 4);
    const WalkProfile p = walk_profile(g);
    if (!p.controllable || dgs_certificate(p).verdict != DgsVerdict::DGS) continue;
    const LevelPlan plan = bounded_levels(p, level_bounds(p), 1 << 20);
    CHECK(plan.levels == std::vector<Integer>{1});
    CHECK(search_mates(g, all_levels(p, 256).levels).size() == 1);
    ++done;
  }
}

TEST_CASE("canonical columns and dedupe") {
  const RatRegOrtho q = support::example1_q(2);
  std::vector<std::size_t> perm(10);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  const IntMatrix shuffled = q.scaled() * RatRegOrtho::permutation(perm).scaled();
  CHECK(canonical_columns(shuffled) == canonical_columns(q.scaled()));

  const Graph g = support::example1_graph();
  const RatRegOrtho qp = RatRegOrtho::make(shuffled, 9);
  std::vector<MateClass> raw{{q, conjugate(q, g), 9, false, true}, {qp, conjugate(qp, g), 9, false, true}};
  const auto out = dedupe(raw);
  REQUIRE(out.size() == 1);
  CHECK(out[0].q.scaled() == canonical_columns(q.scaled()));
  CHECK(dedupe({}).empty());
}

TEST_CASE("level plans") {
  const WalkProfile p = walk_profile(support::example1_graph());
  const LevelPlan bounded = bounded_levels(p, level_bounds(p), 1000);
  CHECK(bounded.levels == std::vector<Integer>{1, 3, 9});
  CHECK(bounded.skipped.empty());
  const LevelPlan capped = bounded_levels(p, level_bounds(p), 5);
  CHECK(capped.levels == std::vector<Integer>{1, 3});
  CHECK(capped.skipped == std::vector<Integer>{9});
  const LevelPlan all = all_levels(p, 100);
  // divisors of 3078 = 2 * 3^4 * 19 up to 100
  CHECK(all.levels == std::vector<Integer>{1, 2, 3, 6, 9, 18, 19, 27, 38, 54, 57, 81});
  CHECK(all.skipped.size() == 20 - all.levels.size());
}

TEST_CASE("caps and preconditions") {
  const Graph g = support::example1_graph();
  SearchLimits tiny;
  tiny.max_candidates = 5;
  CHECK_THROWS_AS(enumerate_columns(g, 9, tiny), ResourceCapError);
  SearchLimits few_nodes;
  few_nodes.max_nodes = 10;
  SearchOptions options;
  options.limits = few_nodes;
  CHECK_THROWS_AS(search_mates(g, {9}, options), ResourceCapError);
  SearchLimits low_level;
  low_level.max_level = 8;
  CHECK_THROWS_AS(enumerate_columns(g, 9, low_level), ResourceCapError);
  SearchLimits few_residues;
  few_residues.max_residues = 1;
  CHECK_THROWS_AS(enumerate_columns(g, 9, few_residues), ResourceCapError);
  CHECK_THROWS_AS(enumerate_columns(g, 0), DomainError);
  Graph cycle(6);
  for (std::size_t i = 0; i < 6; ++i) cycle.set_edge(i, (i + 1) % 6);
  CHECK_THROWS_AS(enumerate_columns(cycle, 3), DomainError);
  CHECK_THROWS_AS(search_mates(cycle, {1}), DomainError);
}
