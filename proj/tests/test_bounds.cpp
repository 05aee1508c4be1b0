#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "walkspec/bounds.hpp"
#include "walkspec/error.hpp"
#include "walkspec/factor.hpp"
#include "walkspec/mates.hpp"

using namespace walkspec;

namespace {

// A hand-made profile for exercising the rules without a graph behind it.
WalkProfile synthetic(std::size_t n, const Integer& normalized, const std::map<Integer, std::size_t>& ranks) {
  WalkProfile p;
  p.n = n;
  p.controllable = true;
  p.normalized_det = normalized;
  p.det = normalized * power(2, static_cast<unsigned>(n / 2));
  p.two_adic_valuation = valuation(p.det, 2);
  for (const auto& [q, r] : ranks) p.primes[q] = PrimeData{valuation(p.det, q), r};
  p.invariant_factors.assign(n, 1);
  p.invariant_factors.back() = abs(p.det);
  return p;
}

MateClass only_mate(const Graph& g) {
  const WalkProfile p = walk_profile(g);
  for (auto& c : search_mates(g, all_levels(p, 1000).levels))
    if (!c.isomorphic_to_input) return c;
  throw std::runtime_error("no mate");
}

}  // namespace

TEST_CASE("level bounds of the fixture") {
  const WalkProfile p = walk_profile(support::example1_graph());
  const LevelBoundReport b = level_bounds(p);
  CHECK(*b.primes.at(3).exponent == 2);
  CHECK(b.primes.at(3).rule == BoundRule::MainTheorem);
  CHECK(*b.primes.at(3).qiu_exponent == 3);
  CHECK(*b.primes.at(19).exponent == 0);
  CHECK(b.primes.at(19).rule == BoundRule::OddSquarefree);
  CHECK(*b.primes.at(2).exponent == 0);
  CHECK(b.primes.at(2).rule == BoundRule::TwoAdicOddCase);
  REQUIRE(b.overall_divisor.has_value());
  CHECK(*b.overall_divisor == 9);
}

TEST_CASE("bound rules on synthetic profiles") {
  const LevelBoundReport b = level_bounds(synthetic(10, Integer(9) * 125 * 49 * 11, {{3, 8}, {5, 9}, {7, 9}, {11, 9}}));
  CHECK_FALSE(b.primes.at(3).exponent.has_value());
  CHECK(b.primes.at(3).rule == BoundRule::None);
  CHECK_FALSE(b.primes.at(3).note.empty());
  CHECK(*b.primes.at(5).exponent == 1);
  CHECK(b.primes.at(5).rule == BoundRule::MainTheorem);
  CHECK(*b.primes.at(7).exponent == 1);
  CHECK(*b.primes.at(11).exponent == 0);
  CHECK(b.primes.at(11).rule == BoundRule::OddSquarefree);
  CHECK_FALSE(b.overall_divisor.has_value());

  const LevelBoundReport even = level_bounds(synthetic(6, 2 * 5, {{5, 6}}));
  CHECK_FALSE(even.primes.at(2).exponent.has_value());
  CHECK_FALSE(even.overall_divisor.has_value());

  WalkProfile partial = synthetic(6, 5, {{5, 6}});
  partial.factorization_complete = false;
  CHECK_FALSE(level_bounds(partial).overall_divisor.has_value());
}

TEST_CASE("main bound never exceeds the rank-condition bound") {
  for (unsigned v = 2; v < 40; ++v) {
    const LevelBoundReport b = level_bounds(synthetic(8, power(3, v), {{3, 7}}));
    CHECK(*b.primes.at(3).main_exponent == v / 2);
    CHECK(*b.primes.at(3).qiu_exponent == v - 1);
    CHECK(*b.primes.at(3).exponent <= *b.primes.at(3).qiu_exponent);
  }
}

TEST_CASE("DGS certificate") {
  CHECK(dgs_certificate(synthetic(8, 3 * 5 * 7, {{3, 7}, {5, 7}, {7, 7}})).verdict == DgsVerdict::DGS);
  CHECK(dgs_certificate(synthetic(8, 9 * 5, {{3, 7}, {5, 7}})).verdict == DgsVerdict::Unknown);
  CHECK(dgs_certificate(synthetic(8, 2 * 5, {{5, 7}})).verdict == DgsVerdict::Unknown);
  CHECK(dgs_certificate(synthetic(8, 1, {})).verdict == DgsVerdict::DGS);
  CHECK(dgs_certificate(walk_profile(support::example1_graph())).verdict == DgsVerdict::Unknown);
}

TEST_CASE("family membership") {
  const FamilyMembership f = family_membership(synthetic(8, 9 * 7, {{3, 7}, {7, 7}}));
  CHECK(f.family == Family::F);
  CHECK(f.p == 3);
  CHECK(f.b == 7);
  const FamilyMembership t = family_membership(synthetic(8, -27 * 5, {{3, 7}, {5, 7}}));
  CHECK(t.family == Family::FTilde);
  CHECK(t.b == 5);
  CHECK(family_membership(synthetic(8, 81, {{3, 7}})).family == Family::Neither);
  CHECK(family_membership(synthetic(8, 9 * 25, {{3, 7}, {5, 7}})).family == Family::Neither);
  CHECK(family_membership(synthetic(8, 9 * 7, {{3, 6}, {7, 7}})).family == Family::Neither);
  CHECK(family_membership(synthetic(8, 2 * 9, {{3, 7}})).family == Family::Neither);
  CHECK(family_membership(synthetic(8, 7, {{7, 7}})).family == Family::Neither);
  CHECK(to_string(Family::FTilde) == "F-tilde");
  // the fixture has v_3 = 4
  CHECK(family_membership(walk_profile(support::example1_graph())).family == Family::Neither);
}

TEST_CASE("mate-count bounds") {
  const MateCountBounds b = mate_count_bounds({1, 1, 1, 1, 1, 2, 2, 2, 2, 3078});
  CHECK(*b.raza == 3);
  CHECK(*b.improved == 2);
  CHECK_FALSE(mate_count_bounds({1, 1, 2, 2, 2, 12}).raza.has_value());  // d_3 = 2
  CHECK_FALSE(mate_count_bounds({1, 1, 1, 1, 4, 12}).raza.has_value());  // d_5 = 4
  const MateCountBounds c = mate_count_bounds({1, 1, 1, 1, 2, Integer(8) * 27 * 5});
  CHECK(*c.raza == 3 * 3 * 1 - 1);
  CHECK(*c.improved == 3 * 2 * 1 - 1);
}

TEST_CASE("improved bound never exceeds raza on random factorizations") {
  std::mt19937_64 rng(79);
  const std::vector<long> odd{3, 5, 7, 11, 13};
  for (int trial = 0; trial < 300; ++trial) {
    Integer dn = power(2, 1 + rng() % 6);
    for (long p : odd) dn *= power(p, rng() % 7);
    const MateCountBounds b = mate_count_bounds({1, 1, 1, 2, dn});
    REQUIRE(b.raza.has_value());
    CHECK(*b.improved <= *b.raza);
    CHECK(*b.improved >= 0);
  }
}

TEST_CASE("witness from Q2") {
  const Graph g = support::example1_graph();
  const FourCongWitness w = extract_four_cong_witness(g, support::example1_q(2), 3);
  CHECK(w.tau == 2);
  CHECK(w.all());
  CHECK(w.lambda0 >= 0);
  CHECK(w.lambda0 < 9);
  const IntMatrix a = g.adjacency();
  CHECK(is_zero_mod(IntVector{dot(w.z0, w.z0)}, 81));
  CHECK(is_zero_mod(IntVector{dot(w.z0, mat_vec(a, w.z0))}, 81));
  CHECK(is_zero_mod(mat_vec(walk_matrix(g).transpose(), w.z0), 9));
  IntVector shifted = mat_vec(a, w.z0);
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= w.lambda0 * w.z0[i];
  CHECK(is_zero_mod(shifted, 9));
  CHECK_FALSE(is_zero_mod(w.z0, 3));
  CHECK(w.z0 == support::example1_q(2).scaled().column(w.column));
}

TEST_CASE("witness preconditions") {
  const Graph g = support::example1_graph();
  const RatRegOrtho q1 = support::example1_q(1);
  CHECK(extract_four_cong_witness(g, q1, 3).tau == 1);
  CHECK_THROWS_AS(extract_four_cong_witness(g, q1, 19), DomainError);
  CHECK_THROWS_AS(extract_four_cong_witness(g, q1, 2), DomainError);
  // n = 9 and rank_3 W = 7: a level-3 mate without the rank condition
  const Graph h = parse_graph6("Hq?{k|u");
  CHECK(walk_profile(h).primes.at(3).rank == 7);
  CHECK(only_mate(h).level == 3);
  CHECK_THROWS_AS(extract_four_cong_witness(h, only_mate(h).q, 3), DomainError);
}

TEST_CASE("lemma replay on the fixture") {
  const Graph g = support::example1_graph();
  for (int which : {1, 2}) {
    const FourCongWitness w = extract_four_cong_witness(g, support::example1_q(which), 3);
    const LemmaReport r = verify_proof_lemmas(g, w);
    CHECK(r.passed());
    CHECK(r.tau == w.tau);
    CHECK(r.shifted_rank + 1 >= 10);
    CHECK(r.unit_prefix);
    CHECK(r.last_vanishes);
    CHECK(r.bordered_annihilated);
    CHECK(r.bordered_shape);
    CHECK(r.z1_found);
    CHECK(r.z1_sum_unit);
    CHECK(r.walk_relation_z0);
    CHECK(r.walk_relation_z1);
    CHECK(r.walk_relation_lift);
    CHECK(r.theorem_holds);
    CHECK(r.case_number == 1);
  }
}

TEST_CASE("lemma replay with c = tau") {
  const Graph g = parse_graph6("I[olfvGFG");
  const MateClass m = only_mate(g);
  CHECK(m.level == 3);
  const FourCongWitness w = extract_four_cong_witness(g, m.q, 3);
  CHECK(w.all());
  const LemmaReport r = verify_proof_lemmas(g, w);
  CHECK(r.passed());
  CHECK(r.case_number == 2);
  CHECK(r.c == r.tau);
  // z0 and z1 extend to a basis of the rank-2 kernel: independent mod p
  REQUIRE(r.z1.size() == 10);
  IntMatrix pair = IntMatrix::from_columns({w.z0, r.z1}, 10);
  CHECK(oracle::rank_mod_p(pair, 3) == 2);
}

TEST_CASE("lemma replay reports a corrupted witness") {
  const Graph g = support::example1_graph();
  FourCongWitness w = extract_four_cong_witness(g, support::example1_q(2), 3);
  w.lambda0 = (w.lambda0 + 1) % 9;
  const LemmaReport r = verify_proof_lemmas(g, w);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.failures.empty());
}

TEST_CASE("conjecture report") {
  const WalkProfile p = walk_profile(support::example1_graph());
  const ConjectureReport r = conjecture_check(p, {1, 3, 9});
  CHECK(r.primes.at(3).observed == 2);
  CHECK(r.primes.at(3).twice_conjecture == 4);
  CHECK(r.primes.at(3).twice_det == 4);
  CHECK_FALSE(r.primes.at(3).violates_conjecture);
  CHECK(r.violations == 0);
  // a hypothetical level 27 is flagged rather than rejected
  const ConjectureReport bad = conjecture_check(p, {27});
  CHECK(bad.primes.at(3).violates_conjecture);
  CHECK(bad.primes.at(3).violates_det_bound);
  CHECK(bad.violations == 1);
}
