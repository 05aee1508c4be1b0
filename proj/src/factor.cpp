#include "walkspec/factor.hpp"

#include <algorithm>

#include "walkspec/error.hpp"

namespace walkspec {

namespace {

constexpr std::uint64_t kSieveLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = [] {
    const std::uint64_t limit = kSieveLimit;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
  }();
  return table;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
Integer pollard_brent(const Integer& n, std::uint64_t budget, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer y = Integer(seed) % n, c = Integer(seed * 7 + 1) % n, g = 1, q = 1, x, ys;
  const std::uint64_t m = 128;
  std::uint64_t r = 1, spent = 0;
  auto step = [&](const Integer& v) {
    Integer t = v * v + c;
    return Integer(t % n);
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = step(y);
    spent += r;
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = step(y);
        q = (q * abs(Integer(x - y))) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      spent += lim;
      if (spent > budget) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = step(ys);
      Integer diff = abs(Integer(x - ys));
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

void split(const Integer& n, const FactorOptions& options, Factorization& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.primes[n] += 1;
    return;
  }
  Integer f = 0;
  for (unsigned long seed = 2; seed < 12 && f == 0; ++seed) f = pollard_brent(n, options.rho_iterations, seed);
  if (f == 0) {
    out.unfactored.push_back(n);
    return;
  }
  split(f, options, out);
  split(Integer(n / f), options, out);
}

}  // namespace

unsigned Factorization::exponent(const Integer& p) const {
  auto it = primes.find(p);
  return it == primes.end() ? 0u : it->second;
}

bool is_probable_prime(const Integer& m) { return m >= 2 && mpz_probab_prime_p(m.get_mpz_t(), 40) > 0; }

Factorization factorize(const Integer& m, const FactorOptions& options) {
  if (m == 0) throw DomainError("factorize: zero has no factorization");
  Factorization out;
  Integer rest = abs(m);
  // Trial division beyond the sieve is left to Pollard rho.
  for (std::uint32_t p : small_primes()) {
    if (p > options.trial_division_limit) break;
    if (rest == 1) break;
    if (Integer(p) * p > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) out.primes[Integer(p)] = e;
  }
  split(rest, options, out);
  std::sort(out.unfactored.begin(), out.unfactored.end());
  return out;
}

std::vector<Integer> divisors(const std::map<Integer, unsigned>& primes) {
  std::vector<Integer> result{Integer(1)};
  for (const auto& [p, e] : primes) {
    const std::size_t base = result.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) result.push_back(result[i] * pk);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace walkspec
