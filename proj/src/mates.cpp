#include "walkspec/mates.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "walkspec/error.hpp"
#include "walkspec/factor.hpp"
#include "walkspec/snf.hpp"

namespace walkspec {

namespace {

using Vec = std::vector<std::int64_t>;

std::int64_t dot64(const Vec& a, const Vec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t checked_level(const Integer& level, const SearchLimits& limits) {
  if (level < 1) throw DomainError("level must be positive");
  if (level > limits.max_level) {
    throw ResourceCapError("level " + level.get_str() + " exceeds the supported maximum " +
                           std::to_string(limits.max_level));
  }
  return level.get_si();
}

// Depth-first search over coordinates of one residue class r + l Z^n, keeping
// |v_i| <= l, the running norm and the running sum feasible.
struct SliceSearch {
  std::int64_t level;
  std::int64_t target_sq;
  std::vector<std::vector<std::int64_t>> choices;
  std::vector<std::int64_t> suffix_min_sq, suffix_min_sum, suffix_max_sum;
  Vec current;
  std::vector<ColumnCandidate>& out;
  std::size_t cap;

  void prepare() {
    const std::size_t n = choices.size();
    suffix_min_sq.assign(n + 1, 0);
    suffix_min_sum.assign(n + 1, 0);
    suffix_max_sum.assign(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
      std::int64_t mn_sq = INT64_MAX, mn = INT64_MAX, mx = INT64_MIN;
      for (std::int64_t c : choices[i]) {
        mn_sq = std::min(mn_sq, c * c);
        mn = std::min(mn, c);
        mx = std::max(mx, c);
      }
      suffix_min_sq[i] = suffix_min_sq[i + 1] + mn_sq;
      suffix_min_sum[i] = suffix_min_sum[i + 1] + mn;
      suffix_max_sum[i] = suffix_max_sum[i + 1] + mx;
    }
    current.assign(n, 0);
  }

  void run(std::size_t i, std::int64_t sq, std::int64_t sum) {
    if (sq + suffix_min_sq[i] > target_sq) return;
    if (sum + suffix_min_sum[i] > level || sum + suffix_max_sum[i] < level) return;
    if (i == choices.size()) {
      if (sq == target_sq && sum == level) {
        if (out.size() >= cap) throw ResourceCapError("column candidate count exceeds cap " + std::to_string(cap));
        out.push_back({current});
      }
      return;
    }
    for (std::int64_t c : choices[i]) {
      current[i] = c;
      run(i + 1, sq + c * c, sum + c);
    }
  }
};

struct Assembly {
  std::size_t n;
  std::int64_t level;
  std::int64_t level_sq;
  const std::vector<Vec>& cands;
  std::vector<Vec> adj_cands;  // A v for every candidate
  std::uint64_t max_nodes;
  std::uint64_t nodes = 0;
  std::vector<std::int64_t> row_sq;
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> last_nonzero;  // per row: largest candidate index with a nonzero entry
  std::vector<std::vector<std::size_t>> found;

  Assembly(const Graph& g, std::int64_t l, const std::vector<Vec>& c, std::uint64_t cap)
      : n(g.order()), level(l), level_sq(l * l), cands(c), max_nodes(cap), row_sq(g.order(), 0) {
    for (const auto& v : cands) {
      Vec av(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (g.adjacent(i, j)) av[i] += v[j];
      adj_cands.push_back(std::move(av));
    }
    last_nonzero.assign(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < cands.size(); ++k)
      for (std::size_t r = 0; r < n; ++r)
        if (cands[k][r] != 0) {
          last_nonzero[r] = k;
          seen[r] = true;
        }
    for (std::size_t r = 0; r < n; ++r)
      if (!seen[r]) last_nonzero[r] = SIZE_MAX;  // row can never be filled
  }

  void tick() {
    if (++nodes > max_nodes) throw ResourceCapError("backtracking node count exceeds cap " + std::to_string(max_nodes));
  }

  bool compatible(std::size_t a, std::size_t b) const {
    if (dot64(cands[a], cands[b]) != 0) return false;
    const std::int64_t off = dot64(adj_cands[a], cands[b]);
    return off == 0 || off == level_sq;
  }

  bool rows_fit(std::size_t k) const {
    for (std::size_t r = 0; r < n; ++r)
      if (row_sq[r] + cands[k][r] * cands[k][r] > level_sq) return false;
    return true;
  }

  // The first row still short of l^2 must be reachable from index `start` on.
  bool rows_reachable(std::size_t start) const {
    for (std::size_t r = 0; r < n; ++r) {
      if (row_sq[r] == level_sq) continue;
      return last_nonzero[r] != SIZE_MAX && last_nonzero[r] >= start;
    }
    return true;
  }

  void push(std::size_t k) {
    chosen.push_back(k);
    for (std::size_t r = 0; r < n; ++r) row_sq[r] += cands[k][r] * cands[k][r];
  }

  void pop() {
    const std::size_t k = chosen.back();
    chosen.pop_back();
    for (std::size_t r = 0; r < n; ++r) row_sq[r] -= cands[k][r] * cands[k][r];
  }

  void backtrack(std::size_t start) {
    tick();
    if (chosen.size() == n) {
      found.push_back(chosen);
      return;
    }
    const std::size_t needed = n - chosen.size();
    if (!rows_reachable(start)) return;
    for (std::size_t k = start; k + needed <= cands.size(); ++k) {
      bool ok = rows_fit(k);
      for (std::size_t j = 0; ok && j < chosen.size(); ++j) ok = compatible(k, chosen[j]);
      if (!ok) continue;
      push(k);
      backtrack(k + 1);
      pop();
    }
  }

  // Clique formulation: compatibility graph stored as bitsets.
  std::vector<std::vector<std::uint64_t>> compat;
  std::size_t words = 0;

  void build_compat() {
    const std::size_t m = cands.size();
    words = (m + 63) / 64;
    compat.assign(m, std::vector<std::uint64_t>(words, 0));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (compatible(a, b)) {
          compat[a][b / 64] |= std::uint64_t{1} << (b % 64);
          compat[b][a / 64] |= std::uint64_t{1} << (a % 64);
        }
  }

  void clique(const std::vector<std::uint64_t>& allowed) {
    tick();
    if (chosen.size() == n) {
      found.push_back(chosen);
      return;
    }
    const std::size_t needed = n - chosen.size();
    std::size_t available = 0;
    for (auto w : allowed) available += static_cast<std::size_t>(std::popcount(w));
    if (available < needed) return;
    std::size_t first = SIZE_MAX;
    for (std::size_t w = 0; w < words && first == SIZE_MAX; ++w)
      if (allowed[w]) first = w * 64 + static_cast<std::size_t>(std::countr_zero(allowed[w]));
    if (!rows_reachable(first == SIZE_MAX ? cands.size() : first)) return;

    std::vector<std::uint64_t> next(words);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = allowed[w];
      while (bits) {
        const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (!rows_fit(k)) continue;
        for (std::size_t x = 0; x < words; ++x) next[x] = allowed[x] & compat[k][x];
        // restrict to indices above k
        for (std::size_t x = 0; x < w; ++x) next[x] = 0;
        next[w] &= (k % 64 == 63) ? 0 : (~std::uint64_t{0} << (k % 64 + 1));
        push(k);
        clique(next);
        pop();
      }
    }
  }
};

IntMatrix columns_to_matrix(const std::vector<Vec>& cols, std::size_t n) {
  IntMatrix m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = static_cast<long>(cols[j][i]);
  return m;
}

}  // namespace

IntVector ColumnCandidate::to_int_vector() const {
  IntVector r;
  r.reserve(v.size());
  for (auto x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

std::vector<ColumnCandidate> enumerate_columns(const Graph& g, const Integer& level, const SearchLimits& limits) {
  const std::int64_t l = checked_level(level, limits);
  const std::size_t n = g.order();
  const IntMatrix walk = walk_matrix(g);
  const SnfResult snf = snf_int(walk);
  if (snf.rank() < n) throw DomainError("enumerate_columns: graph is not controllable");

  // W^T v = 0 (mod l) iff v = U^T y with d_i y_i = 0 (mod l), where U W V = D.
  std::vector<std::int64_t> step(n), count(n);
  Integer residues = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer g_i;
    mpz_gcd(g_i.get_mpz_t(), snf.invariant_factors[i].get_mpz_t(), level.get_mpz_t());
    count[i] = g_i.get_si();
    step[i] = l / count[i];
    residues *= g_i;
  }
  if (residues > limits.max_residues) {
    throw ResourceCapError("residue classes " + residues.get_str() + " exceed cap " + std::to_string(limits.max_residues));
  }
  const IntMatrix ut = reduce_mod(snf.u.transpose(), level);
  std::vector<std::vector<std::int64_t>> ut64(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ut64[i][j] = ut(i, j).get_si();

  std::vector<ColumnCandidate> out;
  std::vector<std::int64_t> digits(n, 0);
  while (true) {
    SliceSearch search{l, l * l, std::vector<std::vector<std::int64_t>>(n), {}, {}, {}, {}, out, limits.max_candidates};
    for (std::size_t i = 0; i < n; ++i) {
      __int128 r = 0;
      for (std::size_t j = 0; j < n; ++j) r += static_cast<__int128>(ut64[i][j]) * (digits[j] * step[j]);
      const auto ri = static_cast<std::int64_t>(((r % l) + l) % l);
      if (ri == 0) {
        search.choices[i] = {-l, 0, l};
      } else {
        search.choices[i] = {ri - l, ri};
      }
    }
    search.prepare();
    search.run(0, 0, 0);

    std::size_t pos = 0;
    while (pos < n && ++digits[pos] == count[pos]) digits[pos++] = 0;
    if (pos == n) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (const auto& c : out) {
    if (!is_zero_mod(mat_vec(walk.transpose(), c.to_int_vector()), level)) {
      throw InvariantViolation("enumerate_columns: candidate violates W^T v = 0 (mod l)");
    }
  }
  return out;
}

IntMatrix canonical_columns(const IntMatrix& m) {
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  std::sort(cols.begin(), cols.end());
  return IntMatrix::from_columns(cols, m.rows());
}

std::vector<MateClass> dedupe(std::vector<MateClass> classes) {
  std::map<std::pair<Integer, std::vector<Integer>>, MateClass> unique;
  for (auto& c : classes) {
    const IntMatrix canon = canonical_columns(c.q.scaled());
    auto key = std::make_pair(c.q.level(), canon.entries());
    if (unique.count(key)) continue;
    if (!(canon == c.q.scaled())) {
      c.q = RatRegOrtho::make(canon, c.q.level());
    }
    unique.emplace(std::move(key), std::move(c));
  }
  std::vector<MateClass> out;
  for (auto& [k, c] : unique) out.push_back(std::move(c));
  return out;
}

std::vector<MateClass> search_mates(const Graph& g, const std::vector<Integer>& levels, const SearchOptions& options,
                                    SearchStats* stats) {
  const std::size_t n = g.order();
  const IntMatrix walk = walk_matrix(g);
  if (det(walk) == 0) throw DomainError("search_mates: graph is not controllable");
  const Integer dn = snf_int(walk).invariant_factors.back();

  std::vector<Integer> sorted = levels;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<MateClass> raw;
  for (const auto& level : sorted) {
    const std::int64_t l = checked_level(level, options.limits);
    std::vector<Vec> cands;
    for (auto& c : enumerate_columns(g, level, options.limits)) {
      Vec av(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (g.adjacent(i, j)) av[i] += c.v[j];
      if (dot64(av, c.v) == 0) cands.push_back(std::move(c.v));
    }
    Assembly asm_state(g, l, cands, options.limits.max_nodes);
    if (options.backend == SearchBackend::Clique) {
      if (cands.size() > 16384) throw ResourceCapError("clique backend: too many candidates");
      asm_state.build_compat();
      std::vector<std::uint64_t> all(asm_state.words, ~std::uint64_t{0});
      if (cands.size() % 64) all.back() = (std::uint64_t{1} << (cands.size() % 64)) - 1;
      if (cands.empty()) all.clear();
      asm_state.clique(all);
    } else {
      asm_state.backtrack(0);
    }
    if (stats) {
      stats->nodes += asm_state.nodes;
      stats->candidates += cands.size();
    }

    for (const auto& set : asm_state.found) {
      std::vector<Vec> cols;
      for (auto k : set) cols.push_back(cands[k]);
      const IntMatrix qhat = columns_to_matrix(cols, n);
      Integer gcd_all = content(qhat);
      mpz_gcd(gcd_all.get_mpz_t(), gcd_all.get_mpz_t(), level.get_mpz_t());
      if (gcd_all != 1) continue;  // found again at its exact level

      RatRegOrtho q = RatRegOrtho::make(qhat, level);
      Graph mate = conjugate(q, g);
      if (!(from_pair(g, mate) == q)) throw InvariantViolation("search_mates: from_pair does not reproduce Q");
      if (!generalized_cospectral(g, mate)) throw InvariantViolation("search_mates: mate is not generalized cospectral");
      MateClass mc{q, mate, level, q.is_permutation(), mpz_divisible_p(dn.get_mpz_t(), level.get_mpz_t()) != 0};
      if (mc.isomorphic_to_input != isomorphic(g, mate, options.isomorphism)) {
        throw InvariantViolation("search_mates: permutation status disagrees with isomorphism test");
      }
      raw.push_back(std::move(mc));
    }
  }
  return dedupe(std::move(raw));
}

namespace {

LevelPlan plan_from(const std::map<Integer, unsigned>& exponents, const Integer& cap) {
  LevelPlan plan;
  for (const auto& d : divisors(exponents)) (d <= cap ? plan.levels : plan.skipped).push_back(d);
  return plan;
}

}  // namespace

LevelPlan bounded_levels(const WalkProfile& profile, const LevelBoundReport& bounds, const Integer& cap) {
  if (!profile.controllable) throw DomainError("bounded_levels: graph is not controllable");
  const Factorization f = factorize(profile.last_factor());
  if (!f.complete()) throw ResourceCapError("bounded_levels: d_n could not be factored");
  std::map<Integer, unsigned> exponents;
  for (const auto& [p, e] : f.primes) {
    unsigned limit = e;
    auto it = bounds.primes.find(p);
    if (it != bounds.primes.end() && it->second.exponent) limit = std::min(limit, *it->second.exponent);
    if (limit) exponents.emplace(p, limit);
  }
  return plan_from(exponents, cap);
}

LevelPlan all_levels(const WalkProfile& profile, const Integer& cap) {
  if (!profile.controllable) throw DomainError("all_levels: graph is not controllable");
  const Factorization f = factorize(profile.last_factor());
  if (!f.complete()) throw ResourceCapError("all_levels: d_n could not be factored");
  return plan_from(f.primes, cap);
}

}  // namespace walkspec
