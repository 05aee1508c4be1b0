// Command-line front end: analyze, mates, snf and sweep.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "walkspec/error.hpp"
#include "walkspec/matrix_io.hpp"
#include "walkspec/report.hpp"
#include "walkspec/snf.hpp"
#include "walkspec/sweep.hpp"

using namespace walkspec;

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  return read_text_file(path);
}

Integer parse_integer(const std::string& text, const char* what) {
  Integer x;
  if (text.empty() || x.set_str(text, 10) != 0) throw InputError(std::string("invalid ") + what + ": '" + text + "'");
  return x;
}

std::vector<Integer> parse_integers(const std::vector<std::string>& texts, const char* what) {
  std::vector<Integer> out;
  for (const auto& t : texts) out.push_back(parse_integer(t, what));
  return out;
}

GraphFormat parse_format(const std::string& name) {
  if (name == "auto") return GraphFormat::Auto;
  if (name == "graph6") return GraphFormat::Graph6;
  if (name == "adjacency") return GraphFormat::Adjacency;
  throw InputError("unknown graph format '" + name + "'");
}

void emit(const Json& j, const std::string& text, bool json, const std::string& output = {}) {
  const std::string body = json ? j.dump(2) + "\n" : text;
  if (output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(output);
  if (!out) throw InputError("cannot write '" + output + "'");
  out << body;
}

// gcd of the k x k minors for every k; exponential, only for small matrices.
std::vector<Integer> determinantal_divisors(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols(), kmax = std::min(r, c);
  std::vector<Integer> out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    auto first = [&](std::vector<std::size_t>& s) {
      for (std::size_t i = 0; i < k; ++i) s[i] = i;
    };
    auto next = [&](std::vector<std::size_t>& s, std::size_t n) {
      for (std::size_t i = k; i-- > 0;) {
        if (s[i] < n - k + i) {
          ++s[i];
          for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    first(rs);
    do {
      first(cs);
      do {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        const Integer d = det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (next(cs, c));
    } while (next(rs, r));
    out.push_back(g);
  }
  return out;
}

struct Common {
  std::string input;
  std::string format = "auto";
  std::vector<std::string> primes;
  bool json = false;
  bool oracle = false;
};

int cmd_analyze(const Common& opt, bool allow_partial) {
  ProfileOptions popts;
  popts.primes = parse_integers(opt.primes, "prime");
  popts.allow_partial_factorization = allow_partial;
  std::vector<Analysis> analyses;
  Json graphs = Json::array();
  for (const auto& ng : parse_graphs(read_input(opt.input), parse_format(opt.format))) {
    Analysis a = analyze(ng.graph, popts);
    if (opt.oracle && a.profile.controllable) {
      Integer product = 1;
      for (const auto& d : a.profile.invariant_factors) product *= d;
      if (product != abs(a.profile.det))
        throw InvariantViolation("line " + std::to_string(ng.line) + ": invariant factors do not multiply to |det W|");
      for (const auto& [p, data] : a.profile.primes) {
        std::size_t units = 0;
        for (const auto& d : a.profile.invariant_factors) units += mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) ? 0 : 1;
        if (units != data.rank)
          throw InvariantViolation("line " + std::to_string(ng.line) + ": rank mod " + p.get_str() +
                                   " disagrees with the invariant factors");
      }
    }
    Json j = analysis_json(a);
    j["line"] = ng.line;
    graphs.push_back(std::move(j));
    analyses.push_back(std::move(a));
  }
  Json report = {{"schema", kSchemaVersion}, {"command", "analyze"}, {"graphs", graphs}};
  emit(report, analyses.empty() ? std::string() : analysis_table(analyses), opt.json);
  return 0;
}

SearchBackend parse_backend(const std::string& name) {
  if (name == "backtrack") return SearchBackend::Backtrack;
  if (name == "clique") return SearchBackend::Clique;
  throw InputError("unknown backend '" + name + "'");
}

int cmd_mates(const Common& opt, const std::vector<std::string>& level_args, const std::string& cap,
              const std::string& backend, const SearchLimits& limits) {
  ProfileOptions popts;
  popts.primes = parse_integers(opt.primes, "prime");
  SearchOptions sopts;
  sopts.backend = parse_backend(backend);
  sopts.limits = limits;
  std::optional<std::vector<Integer>> levels;
  if (!(level_args.empty() || (level_args.size() == 1 && level_args[0] == "auto"))) {
    levels = parse_integers(level_args, "level");
    for (const auto& l : *levels)
      if (l < 1) throw InputError("levels must be positive");
  }
  const Integer level_cap = parse_integer(cap, "level cap");

  Json graphs = Json::array();
  std::string text;
  bool lemma_failure = false;
  for (const auto& ng : parse_graphs(read_input(opt.input), parse_format(opt.format))) {
    MatesRun run = run_mates(ng.graph, levels, level_cap, popts, sopts);
    if (opt.oracle) {
      SearchOptions other = sopts;
      other.backend = sopts.backend == SearchBackend::Clique ? SearchBackend::Backtrack : SearchBackend::Clique;
      const auto check = search_mates(ng.graph, run.plan.levels, other);
      bool same = check.size() == run.classes.size();
      for (std::size_t i = 0; same && i < check.size(); ++i) same = check[i].q == run.classes[i].q;
      if (!same) throw InvariantViolation("line " + std::to_string(ng.line) + ": search backends disagree");
    }
    lemma_failure = lemma_failure || !run.lemmas_passed();
    Json j = mates_json(run);
    j["line"] = ng.line;
    graphs.push_back(std::move(j));
    text += mates_table(run);
  }
  emit({{"schema", kSchemaVersion}, {"command", "mates"}, {"graphs", graphs}}, text, opt.json);
  if (lemma_failure) {
    std::cerr << "walkspec: a lemma check failed; see the report\n";
    return 3;
  }
  return 0;
}

int cmd_snf(const Common& opt, const std::string& prime, unsigned k) {
  Json matrices = Json::array();
  std::ostringstream text;
  for (const auto& sm : parse_matrices(read_input(opt.input))) {
    Json entry;
    entry["input"] = matrix_json(sm.matrix);
    const SnfResult z = snf_int(sm.matrix);
    entry["integer"] = snf_json(z);
    text << "matrix " << sm.matrix.rows() << "x" << sm.matrix.cols() << "\n" << sm.matrix;
    text << "over Z:\nU =\n" << z.u << "S =\n" << z.s << "V =\n" << z.v << "invariant factors:";
    for (const auto& d : z.invariant_factors) text << " " << d;
    text << "\n";
    if (!prime.empty()) {
      const SnfResult m = snf_mod_pk(sm.matrix, parse_integer(prime, "prime"), k);
      entry["modular"] = snf_json(m);
      text << "over Z/" << prime << "^" << k << ":\nU =\n" << m.u << "S =\n" << m.s << "V =\n" << m.v << "exponents:";
      for (auto c : m.exponents) text << " " << c;
      text << "\n";
    }
    if (opt.oracle) {
      if (std::max(sm.matrix.rows(), sm.matrix.cols()) > 8) throw InputError("--oracle-check supports at most 8x8");
      const auto divisors = determinantal_divisors(sm.matrix);
      const auto full = invariant_factors_full(sm.matrix);
      Integer product = 1;
      bool agree = true;
      for (std::size_t i = 0; i < divisors.size(); ++i) {
        product *= full[i];
        agree = agree && product == divisors[i];
      }
      entry["oracle"] = {{"determinantal_divisors", Json::array()}, {"agrees", agree}};
      for (const auto& d : divisors) entry["oracle"]["determinantal_divisors"].push_back(d.get_str());
      text << "gcd-of-minors oracle: " << (agree ? "agrees" : "DISAGREES") << "\n";
      if (!agree) {
        emit({{"schema", kSchemaVersion}, {"command", "snf"}, {"matrices", Json::array({entry})}}, text.str(), opt.json);
        throw InvariantViolation("SNF disagrees with the gcd of minors");
      }
    }
    text << "\n";
    matrices.push_back(std::move(entry));
  }
  emit({{"schema", kSchemaVersion}, {"command", "snf"}, {"matrices", matrices}}, text.str(), opt.json);
  return 0;
}

int cmd_sweep(const Common& opt, SweepConfig config, const std::string& cap, const std::string& probability,
              const std::string& output) {
  config.primes = parse_integers(opt.primes, "prime");
  config.level_cap = parse_integer(cap, "level cap");
  const auto slash = probability.find('/');
  if (slash == std::string::npos) throw InputError("edge probability must look like a/b");
  try {
    config.edge_numerator = std::stoull(probability.substr(0, slash));
    config.edge_denominator = std::stoull(probability.substr(slash + 1));
  } catch (const std::exception&) {
    throw InputError("invalid edge probability '" + probability + "'");
  }
  const SweepReport report = run_sweep(config);
  emit(sweep_json(report), sweep_table(report), opt.json, output);
  if (report.theorem_violations() || report.lemma_failures() || report.invariant_errors() ||
      report.mate_count_violations() || report.bound_violations())
    return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walk-matrix arithmetic, level bounds and generalized cospectral mates"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool graph_input) {
    sub->add_option("input", common.input, graph_input ? "graph6 or adjacency file ('-' or omitted: stdin)"
                                                       : "integer matrix file ('-' or omitted: stdin)");
    if (graph_input) sub->add_option("--format", common.format, "auto, graph6 or adjacency");
    sub->add_flag("--json", common.json, "emit JSON instead of a table");
  };

  auto* analyze = app.add_subcommand("analyze", "walk-matrix profile, level bounds and DGS certificate");
  add_common(analyze, true);
  analyze->add_option("--prime", common.primes, "restrict the odd primes examined")
      ->delimiter(',')
      ->allow_extra_args(false);
  analyze->add_flag("--oracle-check", common.oracle, "cross-check ranks against invariant factors");
  bool allow_partial = false;
  analyze->add_flag("--allow-partial", allow_partial, "report unfactored cofactors instead of failing");

  auto* mates = app.add_subcommand("mates", "enumerate generalized cospectral mates");
  add_common(mates, true);
  std::vector<std::string> levels;
  std::string mates_cap = "4096", backend = "backtrack";
  SearchLimits limits;
  mates->add_option("--levels", levels, "'auto' or explicit levels")
      ->delimiter(',')
      ->allow_extra_args(false);
  mates->add_option("--level-cap", mates_cap, "largest level searched");
  mates->add_option("--prime", common.primes, "restrict the odd primes examined")
      ->delimiter(',')
      ->allow_extra_args(false);
  mates->add_option("--backend", backend, "backtrack or clique");
  mates->add_option("--max-candidates", limits.max_candidates, "column candidate cap");
  mates->add_option("--max-nodes", limits.max_nodes, "search node cap");
  mates->add_flag("--oracle-check", common.oracle, "rerun with the other backend and compare");

  auto* snf = app.add_subcommand("snf", "Smith normal form over Z and Z/p^k");
  add_common(snf, false);
  std::string prime;
  unsigned k = 1;
  snf->add_option("--prime", prime, "also reduce over Z/p^k");
  snf->add_option("-k,--k", k, "exponent k")->check(CLI::PositiveNumber);
  snf->add_flag("--oracle-check", common.oracle, "compare with gcds of minors");

  auto* sweep = app.add_subcommand("sweep", "randomized controllable-graph experiment");
  SweepConfig config;
  std::string sweep_cap = "256", probability = "1/2", output;
  sweep->add_option("--seed", config.seed, "RNG seed");
  sweep->add_option("--count", config.graph_count, "number of controllable graphs");
  sweep->add_option("--n-min", config.n_min, "smallest order");
  sweep->add_option("--n-max", config.n_max, "largest order");
  sweep->add_option("--edge-probability", probability, "a/b");
  sweep->add_option("--level-cap", sweep_cap, "largest level searched");
  sweep->add_option("--prime", common.primes, "restrict the odd primes examined")
      ->delimiter(',')
      ->allow_extra_args(false);
  sweep->add_option("--threads", config.threads, "worker threads (0: all cores)");
  bool no_mates = false;
  sweep->add_flag("--no-mates", no_mates, "skip the mate search");
  sweep->add_flag("--json", common.json, "emit JSON instead of a table");
  sweep->add_option("-o,--output", output, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return cmd_analyze(common, allow_partial);
    if (*mates) return cmd_mates(common, levels, mates_cap, backend, limits);
    if (*snf) return cmd_snf(common, prime, k);
    config.search_mates = !no_mates;
    return cmd_sweep(common, config, sweep_cap, probability, output);
  } catch (const InputError& e) {
    std::cerr << "walkspec: input error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "walkspec: error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceCapError& e) {
    std::cerr << "walkspec: resource cap: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "walkspec: invariant violation: " << e.what() << "\n";
    return 3;
  }
}
