#pragma once

// Per-prime bounds on the levels of rational regular orthogonal matrices in
// Q(G), arithmetic DGS certificates, mate-count bounds, and the checks that
// replay the congruence structure behind the odd-prime level bound.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walkspec/exact.hpp"
#include "walkspec/graph.hpp"
#include "walkspec/ortho.hpp"

namespace walkspec {

enum class BoundRule {
  OddSquarefree,     // odd p with p^2 not dividing det W: p does not divide L(G)
  QiuRankCondition,  // rank_p W = n-1: v_p(L(G)) <= v_p(det W) - 1
  MainTheorem,       // rank_p W = n-1: v_p(L(G)) <= floor(v_p(det W) / 2)
  TwoAdicOddCase,    // det W / 2^{floor(n/2)} odd: L(G) odd
  None,
};

std::string to_string(BoundRule rule);

struct PrimeBound {
  std::optional<unsigned> exponent;  // nullopt: unbounded by these rules
  BoundRule rule = BoundRule::None;
  unsigned det_valuation = 0;
  std::optional<unsigned> qiu_exponent;   // reported whenever the rank condition holds
  std::optional<unsigned> main_exponent;
  std::string note;
};

struct LevelBoundReport {
  std::map<Integer, PrimeBound> primes;  // includes p = 2
  std::optional<Integer> overall_divisor;  // L(G) | D when every prime is bounded
};

LevelBoundReport level_bounds(const WalkProfile& profile);

enum class DgsVerdict { DGS, Unknown };

struct DgsCertificate {
  DgsVerdict verdict = DgsVerdict::Unknown;
  std::string reason;
};

DgsCertificate dgs_certificate(const WalkProfile& profile);

enum class Family { F, FTilde, Neither };

std::string to_string(Family family);

struct FamilyMembership {
  Family family = Family::Neither;
  Integer p = 0;
  Integer b = 0;
  std::string reason;
};

// F_{n,p}: |det W| / 2^{floor(n/2)} = p^2 b; F~_{n,p}: p^2 b or p^3 b; both
// with rank_p W = n-1 and b odd, square-free, coprime to p.
FamilyMembership family_membership(const WalkProfile& profile);

struct MateCountBounds {
  std::optional<Integer> raza;
  std::optional<Integer> improved;
  std::string reason;  // set when the hypotheses fail
};

// Needs d_{ceil(n/2)} = 1 and d_{n-1} = 2; both bounds come from the prime
// factorization of d_n.
MateCountBounds mate_count_bounds(const std::vector<Integer>& invariant_factors);

struct FourCongWitness {
  Integer p;
  unsigned tau = 0;
  std::size_t column = 0;  // index of z0 among the columns of l*Q
  IntVector z0;
  Integer lambda0;  // in [0, p^tau)
  bool norm_check = false;       // z0^T z0 = 0 (mod p^{2 tau})
  bool quadratic_check = false;  // z0^T A z0 = 0 (mod p^{2 tau})
  bool walk_check = false;       // W^T z0 = 0 (mod p^tau)
  bool eigen_check = false;      // A z0 = lambda0 z0 (mod p^tau)

  bool all() const { return norm_check && quadratic_check && walk_check && eigen_check; }
};

// Throws DomainError when tau = v_p(level) is 0, p is not an odd prime, or
// rank_p W != n-1; throws InvariantViolation when a congruence fails.
FourCongWitness extract_four_cong_witness(const Graph& g, const RatRegOrtho& q, const Integer& p);

struct LemmaReport {
  Integer p;
  unsigned tau = 0;
  Integer lambda0;

  // SNF of A - lambda0 I over Z/p^tau: diag(1, ..., 1, p^c, 0).
  std::vector<unsigned> shifted_exponents;
  std::size_t shifted_rank = 0;
  unsigned c = 0;  // in [0, tau]; c = tau means the (n-1)-th factor vanishes
  bool unit_prefix = false;    // f_{n-2} is a unit
  bool last_vanishes = false;  // f_n = 0 (mod p^tau)

  // M = [A - lambda0 I, z0]: z0^T M = 0 and SNF [diag(I_{n-1}, 0), 0].
  bool bordered_annihilated = false;
  bool bordered_shape = false;

  // (A - lambda0 I) z1 = p^c z0 (mod p^tau) with e^T z1 a unit mod p.
  int case_number = 0;  // 1: c = 0, 2: c = tau, 3: 0 < c < tau
  unsigned first_solvable_c = 0;
  IntVector z1;
  bool z1_found = false;
  bool z1_sum_unit = false;

  // W^T y = (e^T y)(1, lambda0, ..., lambda0^{n-1}) on z0, z1 and z0 - p^tau y.
  IntVector y;
  Integer s;
  bool walk_relation_z0 = false;
  bool walk_relation_z1 = false;
  bool walk_relation_lift = false;

  bool theorem_holds = false;  // v_p(det W) >= 2 tau
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

// Checks the conclusions of the lemmas behind the odd-prime bound on one
// instance. Never throws for a failed conclusion: it is recorded in `failures`.
LemmaReport verify_proof_lemmas(const Graph& g, const FourCongWitness& witness);

struct ConjectureEntry {
  unsigned observed = 0;          // max v_p(level) over observed levels
  unsigned twice_conjecture = 0;  // v_p(d_n) + v_p(d_{n-1})
  unsigned twice_det = 0;         // v_p(det W)
  bool violates_conjecture = false;
  bool violates_det_bound = false;
};

struct ConjectureReport {
  std::map<Integer, ConjectureEntry> primes;
  std::size_t violations = 0;
};

ConjectureReport conjecture_check(const WalkProfile& profile, const std::vector<Integer>& observed_levels);

}  // namespace walkspec
