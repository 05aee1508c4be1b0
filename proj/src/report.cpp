#include "walkspec/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "walkspec/error.hpp"

namespace walkspec {

Json integer_json(const Integer& x) { return x.get_str(); }

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& x : m.row(i)) row.push_back(x.get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json small_matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& x : m.row(i)) {
      if (!x.fits_slong_p()) throw DomainError("matrix entry does not fit a JSON number");
      row.push_back(x.get_si());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Json integers_json(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

template <class T>
Json optional_json(const std::optional<T>& x) {
  if (!x) return nullptr;
  if constexpr (std::is_same_v<T, Integer>) {
    return x->get_str();
  } else {
    return *x;
  }
}

}  // namespace

Json profile_json(const WalkProfile& p) {
  Json out;
  out["n"] = p.n;
  out["controllable"] = p.controllable;
  out["det"] = integer_json(p.det);
  out["invariant_factors"] = integers_json(p.invariant_factors);
  out["walk_matrix"] = matrix_json(p.walk);
  if (p.controllable) {
    out["normalized_det"] = integer_json(p.normalized_det);
    out["two_adic_valuation"] = p.two_adic_valuation;
    Json primes = Json::object();
    for (const auto& [q, data] : p.primes) primes[q.get_str()] = {{"valuation", data.valuation}, {"rank", data.rank}};
    out["primes"] = primes;
    out["unfactored"] = integers_json(p.unfactored);
    out["factorization_complete"] = p.factorization_complete;
  }
  return out;
}

Json bounds_json(const LevelBoundReport& b) {
  Json primes = Json::object();
  for (const auto& [p, pb] : b.primes) {
    Json e;
    e["exponent"] = optional_json(pb.exponent);
    e["rule"] = to_string(pb.rule);
    e["det_valuation"] = pb.det_valuation;
    e["qiu_exponent"] = optional_json(pb.qiu_exponent);
    e["main_exponent"] = optional_json(pb.main_exponent);
    if (!pb.note.empty()) e["note"] = pb.note;
    primes[p.get_str()] = e;
  }
  return {{"primes", primes}, {"overall_divisor", optional_json(b.overall_divisor)}};
}

Json dgs_json(const DgsCertificate& c) {
  return {{"verdict", c.verdict == DgsVerdict::DGS ? "DGS" : "unknown"}, {"reason", c.reason}};
}

Json family_json(const FamilyMembership& f) {
  Json out = {{"family", to_string(f.family)}};
  if (f.family != Family::Neither) {
    out["p"] = integer_json(f.p);
    out["b"] = integer_json(f.b);
  } else {
    out["reason"] = f.reason;
  }
  return out;
}

Json mate_count_json(const MateCountBounds& m) {
  Json out = {{"raza", optional_json(m.raza)}, {"improved", optional_json(m.improved)}};
  if (!m.reason.empty()) out["reason"] = m.reason;
  return out;
}

Json mate_class_json(const MateClass& m) {
  return {{"level", integer_json(m.level)},
          {"Qhat", small_matrix_json(m.q.scaled())},
          {"mate", emit_graph6(m.mate)},
          {"isomorphic_to_input", m.isomorphic_to_input},
          {"level_divides_dn", m.level_divides_dn}};
}

Json witness_json(const FourCongWitness& w) {
  return {{"p", integer_json(w.p)},
          {"tau", w.tau},
          {"column", w.column},
          {"z0", vector_json(w.z0)},
          {"lambda0", integer_json(w.lambda0)},
          {"norm_check", w.norm_check},
          {"quadratic_check", w.quadratic_check},
          {"walk_check", w.walk_check},
          {"eigen_check", w.eigen_check}};
}

Json lemma_json(const LemmaReport& r) {
  Json out;
  out["p"] = integer_json(r.p);
  out["tau"] = r.tau;
  out["lambda0"] = integer_json(r.lambda0);
  out["shifted_exponents"] = r.shifted_exponents;
  out["shifted_rank"] = r.shifted_rank;
  out["c"] = r.c;
  out["unit_prefix"] = r.unit_prefix;
  out["last_vanishes"] = r.last_vanishes;
  out["bordered_annihilated"] = r.bordered_annihilated;
  out["bordered_shape"] = r.bordered_shape;
  out["case"] = r.case_number;
  out["first_solvable_c"] = r.first_solvable_c;
  out["z1"] = vector_json(r.z1);
  out["z1_found"] = r.z1_found;
  out["z1_sum_unit"] = r.z1_sum_unit;
  out["y"] = vector_json(r.y);
  out["s"] = integer_json(r.s);
  out["walk_relation_z0"] = r.walk_relation_z0;
  out["walk_relation_z1"] = r.walk_relation_z1;
  out["walk_relation_lift"] = r.walk_relation_lift;
  out["theorem_holds"] = r.theorem_holds;
  out["failures"] = r.failures;
  out["passed"] = r.passed();
  return out;
}

Json conjecture_json(const ConjectureReport& r) {
  Json primes = Json::object();
  for (const auto& [p, e] : r.primes) {
    primes[p.get_str()] = {{"observed", e.observed},
                           {"twice_conjecture_bound", e.twice_conjecture},
                           {"twice_det_bound", e.twice_det},
                           {"violates_conjecture", e.violates_conjecture},
                           {"violates_det_bound", e.violates_det_bound}};
  }
  return {{"primes", primes}, {"violations", r.violations}};
}

Json snf_json(const SnfResult& snf) {
  Json out;
  if (snf.ring.kind == Ring::Kind::Integers) {
    out["ring"] = "Z";
  } else {
    out["ring"] = "Z/" + snf.ring.p.get_str() + "^" + std::to_string(snf.ring.k);
    out["p"] = integer_json(snf.ring.p);
    out["k"] = snf.ring.k;
    out["exponents"] = snf.exponents;
    if (snf.even_prime) out["even_prime"] = true;
  }
  out["u"] = matrix_json(snf.u);
  out["s"] = matrix_json(snf.s);
  out["v"] = matrix_json(snf.v);
  out["invariant_factors"] = integers_json(snf.invariant_factors);
  out["rank"] = snf.rank();
  return out;
}

Analysis analyze(const Graph& g, const ProfileOptions& options) {
  Analysis a;
  a.graph = g;
  a.profile = walk_profile(g, options);
  if (a.profile.controllable) {
    a.bounds = level_bounds(a.profile);
    a.dgs = dgs_certificate(a.profile);
    a.family = family_membership(a.profile);
    a.mate_count = mate_count_bounds(a.profile.invariant_factors);
  } else {
    a.mate_count.reason = "walk matrix is singular";
  }
  return a;
}

Json analysis_json(const Analysis& a) {
  Json out;
  out["graph"] = emit_graph6(a.graph);
  out["profile"] = profile_json(a.profile);
  if (a.bounds) {
    out["bounds"] = bounds_json(*a.bounds);
    out["dgs"] = dgs_json(*a.dgs);
    out["family"] = family_json(*a.family);
  } else {
    out["bounds"] = nullptr;
    out["dgs"] = nullptr;
    out["family"] = nullptr;
  }
  out["mate_count_bounds"] = mate_count_json(a.mate_count);
  return out;
}

namespace {

std::string prime_summary(const WalkProfile& p) {
  std::ostringstream os;
  os << "2^" << p.two_adic_valuation;
  for (const auto& [q, data] : p.primes) os << " " << q << "^" << data.valuation << "(r" << data.rank << ")";
  for (const auto& u : p.unfactored) os << " [" << u << "]";
  return os.str();
}

std::string bound_summary(const LevelBoundReport& b) {
  if (b.overall_divisor) return "L | " + b.overall_divisor->get_str();
  std::string open;
  for (const auto& [p, pb] : b.primes)
    if (!pb.exponent) open += (open.empty() ? "" : ",") + p.get_str();
  return "unbounded at " + open;
}

}  // namespace

std::string analysis_table(const std::vector<Analysis>& analyses) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "#" << std::setw(4) << "n" << std::setw(16) << "graph6" << std::setw(14)
     << "det/2^[n/2]" << std::setw(12) << "d_n" << std::setw(16) << "bound" << std::setw(9) << "DGS" << std::setw(9)
     << "family"
     << "primes\n";
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    const Analysis& a = analyses[i];
    os << std::setw(4) << i << std::setw(4) << a.profile.n << std::setw(16) << emit_graph6(a.graph);
    if (!a.profile.controllable) {
      os << "not controllable\n";
      continue;
    }
    os << std::setw(14) << a.profile.normalized_det.get_str() << std::setw(12) << a.profile.last_factor().get_str()
       << std::setw(16) << bound_summary(*a.bounds) << std::setw(9)
       << (a.dgs->verdict == DgsVerdict::DGS ? "yes" : "unknown") << std::setw(9) << to_string(a.family->family)
       << prime_summary(a.profile) << "\n";
  }
  return os.str();
}

std::size_t MatesRun::mate_count() const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [](const MateClass& m) { return !m.isomorphic_to_input; }));
}

bool MatesRun::lemmas_passed() const {
  return std::all_of(witnesses.begin(), witnesses.end(), [](const WitnessCheck& w) { return w.lemmas.passed(); });
}

std::vector<WitnessCheck> check_witnesses(const Graph& g, const WalkProfile& profile,
                                          const std::vector<MateClass>& classes) {
  std::vector<WitnessCheck> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].isomorphic_to_input) continue;
    for (const auto& [p, e] : factorize(classes[i].level).primes) {
      if (p == 2) continue;
      auto it = profile.primes.find(p);
      const std::size_t rank = it != profile.primes.end() ? it->second.rank : rank_mod_p(profile.walk, p);
      if (rank + 1 != profile.n) continue;
      WitnessCheck w;
      w.class_index = i;
      w.witness = extract_four_cong_witness(g, classes[i].q, p);
      w.lemmas = verify_proof_lemmas(g, w.witness);
      out.push_back(std::move(w));
    }
  }
  return out;
}

MatesRun run_mates(const Graph& g, const std::optional<std::vector<Integer>>& levels, const Integer& level_cap,
                   const ProfileOptions& profile_options, const SearchOptions& search_options) {
  MatesRun run;
  run.analysis = analyze(g, profile_options);
  if (!run.analysis.profile.controllable) throw DomainError("mates: graph is not controllable");
  if (levels) {
    for (const auto& l : *levels) (l <= level_cap ? run.plan.levels : run.plan.skipped).push_back(l);
    std::sort(run.plan.levels.begin(), run.plan.levels.end());
    run.plan.levels.erase(std::unique(run.plan.levels.begin(), run.plan.levels.end()), run.plan.levels.end());
  } else {
    run.plan = bounded_levels(run.analysis.profile, *run.analysis.bounds, level_cap);
  }
  run.classes = search_mates(g, run.plan.levels, search_options, &run.stats);
  run.witnesses = check_witnesses(g, run.analysis.profile, run.classes);
  std::vector<Integer> observed;
  for (const auto& c : run.classes) observed.push_back(c.level);
  run.conjecture = conjecture_check(run.analysis.profile, observed);
  return run;
}

Json mates_json(const MatesRun& run) {
  Json out = analysis_json(run.analysis);
  out["levels_searched"] = integers_json(run.plan.levels);
  out["levels_skipped"] = integers_json(run.plan.skipped);
  Json classes = Json::array();
  for (const auto& c : run.classes) classes.push_back(mate_class_json(c));
  out["classes"] = classes;
  out["mate_count"] = run.mate_count();
  Json witnesses = Json::array();
  Json lemmas = Json::array();
  for (const auto& w : run.witnesses) {
    Json wj = witness_json(w.witness);
    wj["class"] = w.class_index;
    witnesses.push_back(wj);
    Json lj = lemma_json(w.lemmas);
    lj["class"] = w.class_index;
    lemmas.push_back(lj);
  }
  out["witnesses"] = witnesses;
  out["lemma_checks"] = lemmas;
  out["conjecture"] = conjecture_json(run.conjecture);
  out["search"] = {{"nodes", run.stats.nodes}, {"candidates", run.stats.candidates}};
  return out;
}

std::string mates_table(const MatesRun& run) {
  std::ostringstream os;
  os << analysis_table({run.analysis});
  os << "levels searched:";
  for (const auto& l : run.plan.levels) os << " " << l;
  if (!run.plan.skipped.empty()) {
    os << "  (skipped above cap:";
    for (const auto& l : run.plan.skipped) os << " " << l;
    os << ")";
  }
  os << "\n";
  os << "classes: " << run.classes.size() << ", mates: " << run.mate_count() << "\n";
  for (std::size_t i = 0; i < run.classes.size(); ++i) {
    const MateClass& c = run.classes[i];
    os << "class " << i << ": level " << c.level << (c.isomorphic_to_input ? " (permutation)" : "") << ", mate "
       << emit_graph6(c.mate) << "\n";
    if (!c.isomorphic_to_input) os << c.q.scaled();
  }
  for (const auto& w : run.witnesses) {
    os << "witness class " << w.class_index << " p=" << w.witness.p << " tau=" << w.witness.tau
       << " lambda0=" << w.witness.lambda0 << " congruences " << (w.witness.all() ? "ok" : "FAIL") << ", lemmas "
       << (w.lemmas.passed() ? "ok" : "FAIL") << " (case " << w.lemmas.case_number << ", c=" << w.lemmas.c << ")\n";
    for (const auto& f : w.lemmas.failures) os << "  " << f << "\n";
  }
  os << "conjecture violations: " << run.conjecture.violations << "\n";
  return os.str();
}

}  // namespace walkspec
