#include "walkspec/bounds.hpp"

#include <algorithm>

#include "walkspec/error.hpp"
#include "walkspec/factor.hpp"

namespace walkspec {

std::string to_string(BoundRule rule) {
  switch (rule) {
    case BoundRule::OddSquarefree: return "OddSquarefree";
    case BoundRule::QiuRankCondition: return "QiuRankCondition";
    case BoundRule::MainTheorem: return "MainTheorem";
    case BoundRule::TwoAdicOddCase: return "TwoAdicOddCase";
    case BoundRule::None: return "None";
  }
  return "None";
}

std::string to_string(Family family) {
  switch (family) {
    case Family::F: return "F";
    case Family::FTilde: return "F-tilde";
    case Family::Neither: return "neither";
  }
  return "neither";
}

LevelBoundReport level_bounds(const WalkProfile& profile) {
  if (!profile.controllable) throw DomainError("level_bounds: graph is not controllable");
  LevelBoundReport out;
  const std::size_t n = profile.n;
  for (const auto& [p, data] : profile.primes) {
    PrimeBound b;
    b.det_valuation = data.valuation;
    const bool rank_condition = data.rank + 1 == n;
    if (rank_condition) {
      b.main_exponent = data.valuation / 2;
      b.qiu_exponent = data.valuation == 0 ? 0u : data.valuation - 1;
    }
    if (data.valuation <= 1) {
      b.exponent = 0;
      b.rule = BoundRule::OddSquarefree;
    } else if (rank_condition) {
      b.exponent = std::min(*b.main_exponent, *b.qiu_exponent);
      b.rule = *b.main_exponent <= *b.qiu_exponent ? BoundRule::MainTheorem : BoundRule::QiuRankCondition;
    } else {
      b.rule = BoundRule::None;
      b.note = "p^2 divides det W and rank_p W < n-1: no rule applies";
    }
    out.primes.emplace(p, b);
  }

  PrimeBound two;
  two.det_valuation = profile.two_adic_valuation;
  if (mpz_odd_p(profile.normalized_det.get_mpz_t())) {
    two.exponent = 0;
    two.rule = BoundRule::TwoAdicOddCase;
  } else {
    two.note = "det W / 2^floor(n/2) is even: no 2-adic rule applies";
  }
  out.primes.emplace(Integer(2), two);

  const bool all_bounded = std::all_of(out.primes.begin(), out.primes.end(),
                                       [](const auto& kv) { return kv.second.exponent.has_value(); });
  if (all_bounded && profile.factorization_complete) {
    Integer d = 1;
    for (const auto& [p, b] : out.primes) d *= power(p, *b.exponent);
    out.overall_divisor = d;
  }
  return out;
}

DgsCertificate dgs_certificate(const WalkProfile& profile) {
  if (!profile.controllable) throw DomainError("dgs_certificate: graph is not controllable");
  DgsCertificate out;
  if (!profile.factorization_complete) {
    out.reason = "normalized determinant is not fully factored";
    return out;
  }
  if (mpz_even_p(profile.normalized_det.get_mpz_t())) {
    out.reason = "normalized determinant is even";
    return out;
  }
  for (const auto& [p, data] : profile.primes) {
    if (data.valuation >= 2) {
      out.reason = p.get_str() + "^2 divides the normalized determinant";
      return out;
    }
  }
  out.verdict = DgsVerdict::DGS;
  out.reason = "normalized determinant is odd and square-free";
  return out;
}

FamilyMembership family_membership(const WalkProfile& profile) {
  if (!profile.controllable) throw DomainError("family_membership: graph is not controllable");
  FamilyMembership out;
  if (!profile.factorization_complete) {
    out.reason = "normalized determinant is not fully factored";
    return out;
  }
  if (mpz_even_p(profile.normalized_det.get_mpz_t())) {
    out.reason = "normalized determinant is even";
    return out;
  }
  std::vector<Integer> square_primes;
  for (const auto& [p, data] : profile.primes)
    if (data.valuation >= 2) square_primes.push_back(p);
  if (square_primes.size() != 1) {
    out.reason = square_primes.empty() ? "normalized determinant is square-free"
                                       : "more than one prime divides with multiplicity";
    return out;
  }
  const Integer& p = square_primes.front();
  const PrimeData& data = profile.primes.at(p);
  if (data.valuation > 3) {
    out.reason = "v_p exceeds 3 for p = " + p.get_str();
    return out;
  }
  if (data.rank + 1 != profile.n) {
    out.reason = "rank_p W != n-1 for p = " + p.get_str();
    return out;
  }
  out.p = p;
  out.b = abs(profile.normalized_det) / power(p, data.valuation);
  out.family = data.valuation == 2 ? Family::F : Family::FTilde;
  return out;
}

MateCountBounds mate_count_bounds(const std::vector<Integer>& d) {
  MateCountBounds out;
  const std::size_t n = d.size();
  if (n < 2) {
    out.reason = "needs at least two invariant factors";
    return out;
  }
  if (d[(n + 1) / 2 - 1] != 1 || d[n - 2] != 2) {
    out.reason = "requires d_ceil(n/2) = 1 and d_(n-1) = 2";
    return out;
  }
  if (d[n - 1] == 0) {
    out.reason = "walk matrix is singular";
    return out;
  }
  const Factorization f = factorize(d[n - 1]);
  if (!f.complete()) {
    out.reason = "d_n is not fully factored";
    return out;
  }
  Integer raza = 1;
  Integer improved = f.exponent(Integer(2));
  for (const auto& [p, m] : f.primes) {
    raza *= m;
    if (p != 2) improved *= m / 2 + 1;
  }
  out.raza = raza - 1;
  out.improved = improved - 1;
  return out;
}

ConjectureReport conjecture_check(const WalkProfile& profile, const std::vector<Integer>& observed_levels) {
  if (!profile.controllable) throw DomainError("conjecture_check: graph is not controllable");
  ConjectureReport out;
  std::vector<Integer> primes;
  for (const auto& [p, data] : profile.primes) primes.push_back(p);
  for (const auto& level : observed_levels) {
    for (const auto& [p, e] : factorize(level).primes)
      if (p != 2) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  const std::size_t n = profile.n;
  for (const auto& p : primes) {
    ConjectureEntry e;
    for (const auto& level : observed_levels) e.observed = std::max(e.observed, valuation(level, p));
    e.twice_conjecture = valuation(profile.invariant_factors[n - 1], p);
    if (n >= 2) e.twice_conjecture += valuation(profile.invariant_factors[n - 2], p);
    e.twice_det = valuation(profile.det, p);
    e.violates_conjecture = 2 * e.observed > e.twice_conjecture;
    e.violates_det_bound = 2 * e.observed > e.twice_det;
    if (e.violates_conjecture) ++out.violations;
    out.primes.emplace(p, e);
  }
  return out;
}

}  // namespace walkspec
