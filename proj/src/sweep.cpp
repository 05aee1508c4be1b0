#include "walkspec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "walkspec/error.hpp"

namespace walkspec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t m) {
  const std::uint64_t threshold = (0 - m) % m;  // 2^64 mod m
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % m;
  }
}

void validate(const SweepConfig& c) {
  if (c.n_min < 1 || c.n_min > c.n_max) throw DomainError("sweep: invalid n range");
  if (c.n_max > 64) throw DomainError("sweep: n above 64 is not supported");
  if (c.edge_denominator == 0 || c.edge_numerator > c.edge_denominator)
    throw DomainError("sweep: edge probability must lie in [0, 1]");
  if (c.level_cap < 1) throw DomainError("sweep: level cap must be positive");
}

std::string describe(const Integer& level, const Integer& p, unsigned v, const std::string& what) {
  return "level " + level.get_str() + ": v_" + p.get_str() + " = " + std::to_string(v) + " " + what;
}

}  // namespace

Graph sample_graph(const SweepConfig& config, std::uint64_t index) {
  std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(index)));
  const std::size_t n = config.n_min + uniform_below(rng, config.n_max - config.n_min + 1);
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform_below(rng, config.edge_denominator) < config.edge_numerator) g.set_edge(i, j);
  return g;
}

GraphOutcome sweep_graph(const Graph& g, const SweepConfig& config) {
  GraphOutcome out;
  ProfileOptions popts;
  popts.primes = config.primes;
  try {
    out.analysis = analyze(g, popts);
    const WalkProfile& profile = out.analysis.profile;
    if (!profile.controllable) throw DomainError("sweep: graph is not controllable");
    if (!config.search_mates) return out;

    const LevelPlan plan = all_levels(profile, config.level_cap);
    out.levels_searched = plan.levels;
    out.levels_skipped = plan.skipped;
    SearchOptions sopts;
    sopts.limits = config.limits;
    out.classes = search_mates(g, plan.levels, sopts);

    const LevelBoundReport& bounds = *out.analysis.bounds;
    for (const auto& c : out.classes) {
      if (c.isomorphic_to_input) continue;
      if (!c.level_divides_dn) out.invariant_errors.push_back("level " + c.level.get_str() + " does not divide d_n");
      for (const auto& [p, v] : factorize(c.level).primes) {
        auto b = bounds.primes.find(p);
        if (b == bounds.primes.end()) {
          out.bound_violations.push_back(describe(c.level, p, v, "but p does not divide det W"));
          continue;
        }
        if (b->second.exponent && v > *b->second.exponent)
          out.bound_violations.push_back(describe(c.level, p, v, "exceeds the " + to_string(b->second.rule) + " bound"));
        if (p == 2) continue;
        auto data = profile.primes.find(p);
        const std::size_t rank = data != profile.primes.end() ? data->second.rank : rank_mod_p(profile.walk, p);
        if (rank + 1 == profile.n && 2 * v > valuation(profile.det, p))
          out.theorem_violations.push_back(describe(c.level, p, v, "exceeds floor(v_p(det W) / 2)"));
      }
    }
    out.witnesses = check_witnesses(g, profile, out.classes);

    std::vector<Integer> observed;
    for (const auto& c : out.classes) observed.push_back(c.level);
    out.conjecture = conjecture_check(profile, observed);

    const MateCountBounds& mc = out.analysis.mate_count;
    if (mc.improved) {
      std::size_t mates = 0;
      for (const auto& c : out.classes) mates += c.isomorphic_to_input ? 0 : 1;
      if (Integer(static_cast<unsigned long>(mates)) > *mc.improved)
        out.mate_count_violations.push_back(std::to_string(mates) + " mates exceed the improved bound " +
                                            mc.improved->get_str());
      if (*mc.improved > *mc.raza)
        out.mate_count_violations.push_back("improved bound exceeds the raza bound");
    }
  } catch (const ResourceCapError& e) {
    out.resource_error = e.what();
  } catch (const InvariantViolation& e) {
    out.invariant_errors.push_back(e.what());
  }
  return out;
}

SweepReport run_sweep(const SweepConfig& config) {
  validate(config);
  SweepReport report;
  report.config = config;
  const std::uint64_t max_attempts = config.max_attempts ? config.max_attempts : 1000 * config.graph_count;

  std::vector<std::pair<std::uint64_t, Graph>> accepted;
  for (std::uint64_t a = 0; accepted.size() < config.graph_count && a < max_attempts; ++a) {
    Graph g = sample_graph(config, a);
    auto& [attempts, hits] = report.acceptance[g.order()];
    ++attempts;
    if (det(walk_matrix(g)) == 0) continue;
    ++hits;
    accepted.emplace_back(a, std::move(g));
  }

  report.graphs.resize(accepted.size());
  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(accepted.size(), 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= accepted.size()) return;
      try {
        report.graphs[i] = sweep_graph(accepted[i].second, config);
        report.graphs[i].attempt = accepted[i].first;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

namespace {

template <class F>
std::size_t sum_over(const std::vector<GraphOutcome>& graphs, F f) {
  std::size_t s = 0;
  for (const auto& g : graphs) s += f(g);
  return s;
}

}  // namespace

std::size_t SweepReport::theorem_violations() const {
  return sum_over(graphs, [](const GraphOutcome& g) { return g.theorem_violations.size(); });
}
std::size_t SweepReport::bound_violations() const {
  return sum_over(graphs, [](const GraphOutcome& g) { return g.bound_violations.size(); });
}
std::size_t SweepReport::lemma_failures() const {
  return sum_over(graphs, [](const GraphOutcome& g) {
    return static_cast<std::size_t>(std::count_if(g.witnesses.begin(), g.witnesses.end(),
                                                  [](const WitnessCheck& w) { return !w.lemmas.passed(); }));
  });
}
std::size_t SweepReport::witness_count() const {
  return sum_over(graphs, [](const GraphOutcome& g) { return g.witnesses.size(); });
}
std::size_t SweepReport::mate_count_violations() const {
  return sum_over(graphs, [](const GraphOutcome& g) { return g.mate_count_violations.size(); });
}
std::size_t SweepReport::mate_count_eligible() const {
  return sum_over(graphs, [](const GraphOutcome& g) { return g.analysis.mate_count.improved ? 1 : 0; });
}
std::size_t SweepReport::conjecture_violations() const {
  return sum_over(graphs, [](const GraphOutcome& g) { return g.conjecture.violations; });
}
std::size_t SweepReport::invariant_errors() const {
  return sum_over(graphs, [](const GraphOutcome& g) { return g.invariant_errors.size(); });
}
std::size_t SweepReport::resource_errors() const {
  return sum_over(graphs, [](const GraphOutcome& g) { return g.resource_error.empty() ? 0 : 1; });
}

Json sweep_json(const SweepReport& r) {
  const SweepConfig& c = r.config;
  Json out;
  out["schema"] = kSchemaVersion;
  Json primes = Json::array();
  for (const auto& p : c.primes) primes.push_back(p.get_str());
  out["config"] = {{"n_min", c.n_min},
                   {"n_max", c.n_max},
                   {"graph_count", c.graph_count},
                   {"edge_probability", std::to_string(c.edge_numerator) + "/" + std::to_string(c.edge_denominator)},
                   {"seed", c.seed},
                   {"level_cap", c.level_cap.get_str()},
                   {"primes", c.primes.empty() ? Json("auto") : primes},
                   {"search_mates", c.search_mates}};
  Json acceptance = Json::object();
  for (const auto& [n, counts] : r.acceptance)
    acceptance[std::to_string(n)] = {{"attempts", counts.first}, {"controllable", counts.second}};
  out["acceptance"] = acceptance;

  std::map<std::string, std::size_t> rules;
  std::map<std::string, std::size_t> mates_by_level;
  std::size_t dgs = 0, with_mates = 0, rank_checks = 0, tight = 0;
  Json graphs = Json::array();
  for (const auto& g : r.graphs) {
    const WalkProfile& p = g.analysis.profile;
    Json e;
    e["attempt"] = g.attempt;
    e["graph"] = emit_graph6(g.analysis.graph);
    e["n"] = p.n;
    e["normalized_det"] = integer_json(p.normalized_det);
    e["d_n"] = p.invariant_factors.empty() ? Json(nullptr) : integer_json(p.last_factor());
    if (g.analysis.bounds) {
      std::set<std::string> fired;
      for (const auto& [q, b] : g.analysis.bounds->primes) fired.insert(to_string(b.rule));
      for (const auto& f : fired) ++rules[f];
      e["overall_divisor"] = g.analysis.bounds->overall_divisor ? integer_json(*g.analysis.bounds->overall_divisor)
                                                                 : Json(nullptr);
      if (g.analysis.dgs->verdict == DgsVerdict::DGS) ++dgs;
      e["family"] = to_string(g.analysis.family->family);
    }
    e["mate_count_bounds"] = mate_count_json(g.analysis.mate_count);
    Json levels = Json::array();
    for (const auto& l : g.levels_searched) levels.push_back(l.get_str());
    e["levels_searched"] = levels;
    Json skipped = Json::array();
    for (const auto& l : g.levels_skipped) skipped.push_back(l.get_str());
    e["levels_skipped"] = skipped;
    Json mates = Json::array();
    for (const auto& m : g.classes) {
      if (m.isomorphic_to_input) continue;
      mates.push_back(mate_class_json(m));
      ++mates_by_level[m.level.get_str()];
      for (const auto& [q, v] : factorize(m.level).primes) {
        auto d = p.primes.find(q);
        if (q == 2 || d == p.primes.end() || d->second.rank + 1 != p.n) continue;
        ++rank_checks;
        if (2 * v + 1 >= d->second.valuation && 2 * v <= d->second.valuation) ++tight;
      }
    }
    if (!mates.empty()) ++with_mates;
    e["mates"] = mates;
    Json witnesses = Json::array();
    for (const auto& w : g.witnesses) {
      witnesses.push_back({{"class", w.class_index},
                           {"p", integer_json(w.witness.p)},
                           {"tau", w.witness.tau},
                           {"lambda0", integer_json(w.witness.lambda0)},
                           {"congruences", w.witness.all()},
                           {"case", w.lemmas.case_number},
                           {"c", w.lemmas.c},
                           {"lemmas_passed", w.lemmas.passed()},
                           {"failures", w.lemmas.failures}});
    }
    e["witnesses"] = witnesses;
    e["conjecture"] = conjecture_json(g.conjecture);
    e["theorem_violations"] = g.theorem_violations;
    e["bound_violations"] = g.bound_violations;
    e["mate_count_violations"] = g.mate_count_violations;
    e["invariant_errors"] = g.invariant_errors;
    if (!g.resource_error.empty()) e["resource_error"] = g.resource_error;
    graphs.push_back(std::move(e));
  }
  out["graphs"] = graphs;
  out["summary"] = {{"graphs", r.graphs.size()},
                    {"dgs_certified", dgs},
                    {"graphs_with_mates", with_mates},
                    {"rules_fired", rules},
                    {"mates_by_level", mates_by_level},
                    {"rank_condition_checks", rank_checks},
                    {"rank_condition_tight", tight},
                    {"theorem_violations", r.theorem_violations()},
                    {"bound_violations", r.bound_violations()},
                    {"witnesses", r.witness_count()},
                    {"lemma_failures", r.lemma_failures()},
                    {"mate_count_eligible", r.mate_count_eligible()},
                    {"mate_count_violations", r.mate_count_violations()},
                    {"conjecture_violations", r.conjecture_violations()},
                    {"invariant_errors", r.invariant_errors()},
                    {"resource_errors", r.resource_errors()}};
  return out;
}

std::string sweep_table(const SweepReport& r) {
  const Json j = sweep_json(r);
  const Json& s = j["summary"];
  std::ostringstream os;
  os << "n    attempts  controllable\n";
  for (const auto& [n, counts] : r.acceptance)
    os << std::left << std::setw(5) << n << std::setw(10) << counts.first << counts.second << "\n";
  os << "\n";
  for (const auto& [key, value] : s.items()) {
    if (value.is_object()) {
      os << key << ":";
      for (const auto& [k, v] : value.items()) os << " " << k << "=" << v.dump();
      os << "\n";
    } else {
      os << key << ": " << value.dump() << "\n";
    }
  }
  return os.str();
}

}  // namespace walkspec
