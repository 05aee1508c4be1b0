#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "walkspec/exact.hpp"

namespace walkspec {

struct FactorOptions {
  std::uint64_t trial_division_limit = 1'000'000;
  // Pollard-Brent iterations allotted to each composite cofactor.
  std::uint64_t rho_iterations = 2'000'000;
};

// Prime factorization of |m|. Composite cofactors that resist the budget are
// kept in `unfactored` rather than dropped.
struct Factorization {
  std::map<Integer, unsigned> primes;
  std::vector<Integer> unfactored;

  bool complete() const { return unfactored.empty(); }
  unsigned exponent(const Integer& p) const;
};

Factorization factorize(const Integer& m, const FactorOptions& options = {});

bool is_probable_prime(const Integer& m);

// Every positive divisor of the factored number, ascending.
std::vector<Integer> divisors(const std::map<Integer, unsigned>& primes);

}  // namespace walkspec
