#pragma once

#include "dynwalk/chain/lemmas.hpp"
#include "dynwalk/em/edge_markovian.hpp"
#include "dynwalk/experiment/descriptor.hpp"
#include "dynwalk/io/csv.hpp"
#include "dynwalk/io/json_io.hpp"
#include "dynwalk/sim/killing.hpp"
#include "dynwalk/sim/walks.hpp"
#include "dynwalk/voting/duality.hpp"
#include "dynwalk/voting/voting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace dynwalk {

struct ExperimentSpec {
  std::string id;
  std::string kind;
  Json params = Json::object();
  std::uint64_t seed = kDefaultSeed;
  std::string out;  // CSV path; empty writes CSV to stdout

  // Parsed file the params came from, kept so errors can cite line numbers. Ignored by ==.
  std::shared_ptr<const JsonDoc> origin;
  std::string params_pointer = "/params";

  [[nodiscard]] Json to_json() const {
    return Json{{"id", id}, {"kind", kind}, {"params", params}, {"seed", seed}, {"out", out}};
  }

  friend bool operator==(const ExperimentSpec& a, const ExperimentSpec& b) {
    return a.id == b.id && a.kind == b.kind && a.params == b.params && a.seed == b.seed && a.out == b.out;
  }
};

/// Parameter names accepted by each experiment kind.
inline const std::map<std::string, std::set<std::string>>& experiment_kinds() {
  static const std::map<std::string, std::set<std::string>> kinds{
      {"spectra", {"schedule", "eps", "t_max", "pi"}},
      {"hit", {"schedule", "starts", "k", "start", "target", "horizon", "trials"}},
      {"cover", {"schedule", "starts", "k", "start", "horizon", "trials"}},
      {"meet", {"schedule", "a", "b", "horizon", "trials"}},
      {"coalesce", {"schedule", "horizon", "trials"}},
      {"vote", {"schedule", "opinions", "horizon", "trials"}},
      {"win-prob", {"schedule", "opinions", "sigma", "horizon", "trials"}},
      {"duality", {"schedule", "j"}},
      {"em-probe", {"n", "p", "q", "J", "samples", "initial"}},
      {"verify-lemmas",
       {"chains", "n_min", "n_max", "vectors", "schedules", "schedule_n_max", "schedule_t_max", "slack"}},
      {"bounds",
       {"schedule", "ks", "start", "target", "horizon", "trials", "eps", "t_max", "K", "coal_mult",
        "coal_mult_trials"}},
  };
  return kinds;
}

namespace detail {

inline std::string known_kinds() {
  std::string s;
  for (const auto& [k, v] : experiment_kinds()) s += (s.empty() ? "" : ", ") + k;
  return s;
}

}  // namespace detail

/// {"id", "kind", "params", "seed", "out"}; unknown fields and unknown parameters are rejected.
inline ExperimentSpec spec_from_json(const JsonReader& r) {
  r.require_object({"id", "kind", "params", "seed", "out"});
  ExperimentSpec s;
  s.id = r.required("id").string();
  if (s.id.empty()) r.child("id").fail("id must be nonempty");
  const auto kind_r = r.required("kind");
  s.kind = kind_r.string();
  const auto it = experiment_kinds().find(s.kind);
  if (it == experiment_kinds().end())
    kind_r.fail("unknown experiment kind '" + s.kind + "' (expected one of " + detail::known_kinds() + ")");
  if (r.has("params")) {
    r.child("params").require_object(it->second);
    s.params = r.child("params").value();
    s.origin = std::make_shared<const JsonDoc>(r.doc());
    s.params_pointer = r.pointer() + "/params";
  }
  if (r.has("seed")) s.seed = r.child("seed").unsigned_integer();
  if (r.has("out")) s.out = r.child("out").string();
  return s;
}

inline ExperimentSpec spec_from_text(const std::string& text, const std::string& source = "<spec>") {
  const auto doc = JsonDoc::parse(text, source);
  return spec_from_json(JsonReader(doc, ""));
}

struct RunResult {
  Table table{{}};
  int exit_code = 0;
};

namespace detail {

// Typed access to an experiment's params with defaults and range checks.
class Params {
 public:
  explicit Params(const JsonReader& r) : r_(r) {}

  [[nodiscard]] bool has(const std::string& k) const { return r_.has(k); }
  [[nodiscard]] JsonReader at(const std::string& k) const { return r_.child(k); }
  [[nodiscard]] JsonReader required(const std::string& k) const { return r_.required(k); }

  [[nodiscard]] long long integer(const std::string& k, long long def, long long lo, long long hi) const {
    if (!has(k)) return def;
    const long long v = at(k).integer();
    if (v < lo || v > hi) at(k).fail(concat(k, " must lie in [", lo, ", ", hi, "]"));
    return v;
  }

  [[nodiscard]] double number(const std::string& k, double def, double lo, double hi) const {
    if (!has(k)) return def;
    const double v = at(k).number();
    if (!(v >= lo && v <= hi)) at(k).fail(concat(k, " must lie in [", lo, ", ", hi, "]"));
    return v;
  }

  [[nodiscard]] std::vector<long long> integers(const std::string& k, std::vector<long long> def, long long lo,
                                                long long hi) const {
    if (!has(k)) return def;
    const auto c = at(k);
    const auto& arr = c.array();
    if (arr.empty()) c.fail(concat(k, " must be nonempty"));
    std::vector<long long> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const long long v = c.child(i).integer();
      if (v < lo || v > hi) c.child(i).fail(concat("value must lie in [", lo, ", ", hi, "]"));
      out.push_back(v);
    }
    return out;
  }

  [[nodiscard]] ChainSchedule schedule() const { return schedule_from_descriptor(required("schedule")); }

  [[nodiscard]] SimOptions sim(std::uint64_t seed, int threads) const {
    SimOptions o;
    o.horizon = integer("horizon", 100000, 1, 1000000000);
    o.trials = integer("trials", 1000, 0, 100000000);
    o.seed = seed;
    o.threads = threads;
    return o;
  }

  /// Starting vertices from "starts", or "k" copies of "start".
  [[nodiscard]] std::vector<Vertex> starts(int n) const {
    if (has("starts")) {
      if (has("k") || has("start")) at("starts").fail("give either starts or k/start, not both");
      std::vector<Vertex> out;
      for (long long v : integers("starts", {}, 0, n - 1)) out.push_back(static_cast<Vertex>(v));
      return out;
    }
    const auto k = integer("k", 1, 1, 1000000);
    const auto v = integer("start", 0, 0, n - 1);
    return std::vector<Vertex>(static_cast<std::size_t>(k), static_cast<Vertex>(v));
  }

  [[nodiscard]] std::vector<Opinion> opinions(int n, bool required_field) const {
    if (!has("opinions")) {
      if (required_field) (void)required("opinions");
      std::vector<Opinion> out(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
      return out;
    }
    return opinions_from_json(at("opinions"), n);
  }

 private:
  JsonReader r_;
};

inline const std::vector<std::string> kSimColumns{"experiment_id", "n", "k", "trials", "mean", "std_err",
                                                  "ci_lo", "ci_hi", "censored"};

inline void add_sim_row(Table& t, const std::string& id, int n, std::size_t k, const EstimateReport& e) {
  t.add({id, std::int64_t{n}, static_cast<std::int64_t>(k), std::int64_t{e.trials}, e.mean, e.std_err, e.ci_lo,
         e.ci_hi, std::int64_t{e.censored_count}});
}

inline Cell optional_time(const std::optional<Time>& t) {
  if (t) return std::int64_t{*t};
  return std::string("none");
}

inline RunResult run_spectra(const Params& p) {
  const auto s = p.schedule();
  const double eps = p.number("eps", 0.5, 0.0, 1.0);
  const Time t_max = p.integer("t_max", 10000, 1, 100000000);
  std::optional<ProbabilityVector> pi = s.declared_pi();
  if (p.has("pi")) pi = distribution_from_json(p.at("pi"), s.size());
  RunResult r;
  r.table = Table({"scope", "index", "lazy", "irreducible", "t_hit", "t_rel", "lambda_star", "t_sep", "t_mix_inf"});
  const std::string na;
  if (pi) {
    const auto sum = schedule_summary(s, *pi, eps, t_max);
    double lam = 0.0;
    bool lazy = true, irr = true;
    for (const auto& d : sum.snapshots) {
      r.table.add({std::string("snapshot"), std::int64_t{d.index}, d.lazy, d.irreducible, d.t_hit, d.t_rel,
                   d.lambda_star, na, na});
      lam = std::max(lam, d.lambda_star);
      lazy = lazy && d.lazy;
      irr = irr && d.irreducible;
    }
    r.table.add({std::string("schedule"), std::int64_t{-1}, lazy, irr, sum.t_HIT, sum.t_REL, lam,
                 optional_time(sum.t_sep), optional_time(sum.t_mix_inf)});
    return r;
  }
  // No common pi: per-snapshot diagnostics against each snapshot's own stationary distribution.
  double th = 0.0, tr = 0.0, lam = 0.0;
  bool lazy = true, irr = true;
  for (int idx : s.used_indices()) {
    const auto& m = s.distinct_matrices()[static_cast<std::size_t>(idx)];
    const auto diag = validate(m);
    double t_hit_v = kInfinity, t_rel_v = kInfinity, lam_v = 1.0;
    if (diag.irreducible) {
      t_hit_v = t_hit(m);
      const auto own = stationary(m);
      if (is_reversible(m, own)) {
        const auto sp = spectrum(m, own);
        t_rel_v = sp.t_rel;
        lam_v = sp.lambda_star;
      }
    }
    r.table.add({std::string("snapshot"), std::int64_t{idx}, diag.lazy, diag.irreducible, t_hit_v, t_rel_v, lam_v,
                 na, na});
    th = std::max(th, t_hit_v);
    tr = std::max(tr, t_rel_v);
    lam = std::max(lam, lam_v);
    lazy = lazy && diag.lazy;
    irr = irr && diag.irreducible;
  }
  r.table.add({std::string("schedule"), std::int64_t{-1}, lazy, irr, th, tr, lam, na, na});
  return r;
}

inline RunResult run_walk(const ExperimentSpec& spec, const Params& p, int threads) {
  const auto s = p.schedule();
  const int n = s.size();
  const auto o = p.sim(spec.seed, threads);
  RunResult r;
  r.table = Table(kSimColumns);
  if (spec.kind == "hit") {
    const auto starts = p.starts(n);
    const auto target = static_cast<Vertex>(p.integer("target", n - 1, 0, n - 1));
    add_sim_row(r.table, spec.id, n, starts.size(), simulate_hit(s, starts, target, o));
  } else if (spec.kind == "cover") {
    const auto starts = p.starts(n);
    add_sim_row(r.table, spec.id, n, starts.size(), simulate_cover(s, starts, o));
  } else if (spec.kind == "meet") {
    const auto a = static_cast<Vertex>(p.integer("a", 0, 0, n - 1));
    const auto b = static_cast<Vertex>(p.integer("b", n - 1, 0, n - 1));
    add_sim_row(r.table, spec.id, n, 2, simulate_meet(s, a, b, o));
  } else if (spec.kind == "coalesce") {
    add_sim_row(r.table, spec.id, n, static_cast<std::size_t>(n), simulate_coalesce(s, o));
  } else {
    add_sim_row(r.table, spec.id, n, static_cast<std::size_t>(n), simulate_consensus(s, p.opinions(n, false), o));
  }
  return r;
}

inline RunResult run_win_prob(const ExperimentSpec& spec, const Params& p, int threads) {
  const auto s = p.schedule();
  const int n = s.size();
  const auto ops = p.opinions(n, true);
  const auto sigma = static_cast<Opinion>(p.integer("sigma", 1, -1000000000, 1000000000));
  const auto w = winning_probability(s, ops, sigma, p.sim(spec.seed, threads));
  RunResult r;
  r.table = Table({"experiment_id", "n", "trials", "frequency", "std_err", "ci99_lo", "ci99_hi", "predicted",
                   "censored", "brackets"});
  r.table.add({spec.id, std::int64_t{n}, std::int64_t{w.frequency.trials}, w.frequency.mean, w.frequency.std_err,
               w.ci99_lo, w.ci99_hi, w.predicted, std::int64_t{w.frequency.censored_count}, w.brackets_prediction()});
  return r;
}

inline RunResult run_duality(const ExperimentSpec& spec, const Params& p) {
  const auto s = p.schedule();
  RunResult r;
  r.table = Table({"experiment_id", "n", "j", "lhs", "rhs", "abs_diff", "sequences"});
  for (long long j : p.integers("j", {1, 2, 3}, 0, 64)) {
    const auto d = duality_check(s, j);
    r.table.add({spec.id, std::int64_t{s.size()}, std::int64_t{j}, d.lhs, d.rhs, d.abs_diff(),
                 std::int64_t{d.sequences}});
  }
  return r;
}

inline RunResult run_em_probe(const ExperimentSpec& spec, const Params& p) {
  EdgeMarkovianParams em;
  em.n = static_cast<int>(p.integer("n", 200, 2, kProbeMaxN));
  em.p = p.number("p", 0.5, 0.0, 1.0);
  em.q = p.number("q", 0.5, 0.0, 1.0);
  em.seed = spec.seed;
  const Time J = p.integer("J", 0, 0, 1000000000);
  const long samples = p.integer("samples", 200, 0, 1000000);
  std::string initial = "empty";
  if (p.has("initial")) {
    initial = p.at("initial").string();
    if (initial != "empty" && initial != "full") p.at("initial").fail("initial must be 'empty' or 'full'");
  }
  IntervalPlan plan;
  try {
    plan = IntervalPlan::from_params(em.p, em.q, J);
  } catch (const InvalidInput& e) {
    p.at("p").fail(e.what());
  }
  std::vector<char> b0(pair_count(em.n), initial == "full" ? 1 : 0);
  const auto rep = expander_probe(em, std::move(b0), plan, samples);
  RunResult r;
  r.table = Table({"t", "connected", "lambda_star", "t_rel", "leq_C"});
  for (const auto& s : rep.samples) r.table.add({std::int64_t{s.t}, s.connected, s.lambda_star, s.t_rel, s.leq_c()});
  return r;
}

inline RunResult run_verify_lemmas(const ExperimentSpec& spec, const Params& p) {
  LemmaSuiteConfig cfg;
  cfg.seed = spec.seed;
  cfg.chains = static_cast<int>(p.integer("chains", cfg.chains, 0, 1000000));
  cfg.n_min = static_cast<int>(p.integer("n_min", cfg.n_min, 2, budget::conductance_max_n));
  cfg.n_max = static_cast<int>(p.integer("n_max", cfg.n_max, cfg.n_min, budget::conductance_max_n));
  cfg.vectors = static_cast<int>(p.integer("vectors", cfg.vectors, 1, 100000));
  cfg.schedules = static_cast<int>(p.integer("schedules", cfg.schedules, 0, 1000000));
  cfg.schedule_n_max = static_cast<int>(p.integer("schedule_n_max", cfg.schedule_n_max, 2, 64));
  cfg.schedule_t_max = static_cast<int>(p.integer("schedule_t_max", cfg.schedule_t_max, 1, 10000));
  cfg.slack = p.number("slack", cfg.slack, 0.0, 1.0);
  cfg.chain_checks = cfg.chains > 0;
  cfg.schedule_checks = cfg.schedules > 0;
  RunResult r;
  r.table = Table({"name", "checks", "violations", "max_excess", "pass"});
  for (const auto& row : verify_lemmas(cfg)) {
    r.table.add({row.name, std::int64_t{row.checks}, std::int64_t{row.violations}, row.max_excess, row.pass()});
    if (!row.pass()) r.exit_code = 1;
  }
  return r;
}

/// Empirical coalescing, hitting and cover times against the theorem-shaped bounds
/// 20 t_HIT, 20 t_sep + 400 t_HIT / k and 20 t_sep + 400 t_HIT ln n / k, plus the
/// killed-walk inequality behind the coalescing bound.
inline RunResult run_bounds(const ExperimentSpec& spec, const Params& p, int threads) {
  const auto s = p.schedule();
  const int n = s.size();
  if (!s.declared_pi()) p.required("schedule").fail("bounds need a schedule with a common stationary distribution");
  const auto o = p.sim(spec.seed, threads);
  const double eps = p.number("eps", 0.5, 0.0, 1.0);
  const Time t_max = p.integer("t_max", 10000, 1, 100000000);
  const auto sum = schedule_summary(s, *s.declared_pi(), eps, t_max);
  if (!sum.t_sep) p.required("schedule").fail(concat("separation time not reached within t_max=", t_max));
  const double th = sum.t_HIT;
  const double ts = static_cast<double>(*sum.t_sep);
  RunResult r;
  r.table = Table({"quantity", "k", "trials", "mean", "std_err", "ci_lo", "ci_hi", "censored", "bound", "holds"});
  auto exact = [&](const char* name, double v) {
    r.table.add({std::string(name), std::int64_t{0}, std::int64_t{0}, v, 0.0, v, v, std::int64_t{0}, kInfinity, true});
  };
  auto mc = [&](const char* name, std::size_t k, const EstimateReport& e, double bound) {
    const bool holds = e.censored_count == 0 && e.mean <= bound;
    if (!holds) r.exit_code = 1;
    r.table.add({std::string(name), static_cast<std::int64_t>(k), std::int64_t{e.trials}, e.mean, e.std_err, e.ci_lo,
                 e.ci_hi, std::int64_t{e.censored_count}, bound, holds});
  };
  exact("t_HIT", th);
  exact("t_sep", ts);
  mc("coalesce", static_cast<std::size_t>(n), simulate_coalesce(s, o), 20.0 * th);
  const auto start = static_cast<Vertex>(p.integer("start", 0, 0, n - 1));
  const auto target = static_cast<Vertex>(p.integer("target", n - 1, 0, n - 1));
  for (long long k : p.integers("ks", {1, 2, 4}, 1, 100000)) {
    const std::vector<Vertex> starts(static_cast<std::size_t>(k), start);
    const double kd = static_cast<double>(k);
    mc("hit", starts.size(), simulate_hit(s, starts, target, o), 20.0 * ts + 400.0 * th / kd);
    mc("cover", starts.size(), simulate_cover(s, starts, o), 20.0 * ts + 400.0 * th * std::log(n) / kd);
  }
  if (!p.has("coal_mult") || p.at("coal_mult").boolean()) {
    const double K = p.number("K", 40.0, 1e-9, 1e9);
    const auto ks = KillingSchedule::from_levels(n, *sum.t_sep, th, K);
    SimOptions oc = o;
    oc.trials = p.integer("coal_mult_trials", 2000, 1, 100000000);
    const auto cm = coal_mult_check(s, ks, oc);
    const bool holds = cm.lhs() <= cm.rhs() + 3.0 * cm.std_err();
    if (!holds) r.exit_code = 1;
    r.table.add({std::string("coal_mult"), std::int64_t{n}, std::int64_t{cm.trials}, cm.lhs(), cm.std_err(),
                 cm.lhs() - kZ95 * cm.std_err(), cm.lhs() + kZ95 * cm.std_err(), std::int64_t{cm.coalescence_late},
                 cm.rhs(), holds});
  }
  return r;
}

}  // namespace detail

/// Runs one experiment. Configuration problems raise ConfigError with a field-addressed message.
inline RunResult run(const ExperimentSpec& spec, int threads = 1) {
  const auto it = experiment_kinds().find(spec.kind);
  if (it == experiment_kinds().end())
    throw ConfigError("kind: unknown experiment kind '" + spec.kind + "' (expected one of " + detail::known_kinds() +
                      ")");
  // Reuse the source document while the params are unchanged, for line-addressed errors.
  const bool original = spec.origin && spec.origin->at(spec.params_pointer) == spec.params;
  const auto doc = original ? *spec.origin : JsonDoc::from_value(spec.to_json(), spec.id);
  const JsonReader pr(doc, original ? spec.params_pointer : "/params");
  pr.require_object(it->second);
  const detail::Params p(pr);
  try {
    if (spec.kind == "spectra") return detail::run_spectra(p);
    if (spec.kind == "win-prob") return detail::run_win_prob(spec, p, threads);
    if (spec.kind == "duality") return detail::run_duality(spec, p);
    if (spec.kind == "em-probe") return detail::run_em_probe(spec, p);
    if (spec.kind == "verify-lemmas") return detail::run_verify_lemmas(spec, p);
    if (spec.kind == "bounds") return detail::run_bounds(spec, p, threads);
    return detail::run_walk(spec, p, threads);
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidInput& e) {
    pr.fail(e.what());
  }
}

/// CSV goes to spec.out; its JSON mirror to the same path with a .json extension.
inline std::string json_path_for(const std::string& csv_path) {
  const auto dot = csv_path.rfind('.');
  const auto slash = csv_path.rfind('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return csv_path.substr(0, dot) + ".json";
  return csv_path + ".json";
}

inline void write_outputs(const std::string& csv_path, const RunResult& r) {
  write_file(csv_path, r.table.csv());
  write_file(json_path_for(csv_path), r.table.json().dump(2) + "\n");
}

// ---- registry --------------------------------------------------------------

struct NamedExperiment {
  std::string name;
  std::string description;
  ExperimentSpec spec;
};

namespace detail {

inline ExperimentSpec make_spec(const std::string& id, const std::string& kind, Json params,
                                std::uint64_t seed = kDefaultSeed) {
  ExperimentSpec s;
  s.id = id;
  s.kind = kind;
  s.params = std::move(params);
  s.seed = seed;
  s.out = id + ".csv";
  return s;
}

inline Json graph_schedule(const std::string& graph, int n, const std::string& kernel = "lazy_simple") {
  return Json{{"type", "graph"}, {"graph", graph}, {"n", n}, {"kernel", kernel}};
}

// n and period of the ten random Metropolis schedules used by the coalescing and hitting checks.
inline constexpr int kRandomScheduleShape[10][2] = {{8, 3}, {9, 2}, {10, 4}, {11, 3}, {12, 2},
                                                    {13, 3}, {14, 4}, {15, 2}, {16, 3}, {16, 5}};

}  // namespace detail

inline Json random_metropolis_descriptor(int i) {
  const auto& sh = detail::kRandomScheduleShape[i];
  return Json{{"type", "random_cyclic"},
              {"n", sh[0]},
              {"period", sh[1]},
              {"seed", 1000 + i},
              {"extra", 0.3},
              {"kernel", "lazy_metropolis"}};
}

/// Named experiments with pinned seeds, one or more per reproducible claim.
inline std::vector<NamedExperiment> experiment_registry() {
  using detail::graph_schedule;
  using detail::make_spec;
  std::vector<NamedExperiment> r;
  auto add = [&](const std::string& desc, ExperimentSpec s) { r.push_back({s.id, desc, std::move(s)}); };

  add("chain inequality suite on 200 random lazy reversible chains plus 50 schedules",
      make_spec("lemma-suite", "verify-lemmas", Json::object()));
  add("hitting and meeting lemmas on 50 random common-pi schedules",
      make_spec("htl-mtl", "verify-lemmas", Json{{"chains", 0}, {"schedules", 50}}));
  add("exact t_hit of the lazy walk on the 4-cycle", make_spec("exact-cycle4", "spectra", {{"schedule", graph_schedule("cycle", 4)}}));
  for (int n : {3, 5, 8})
    add("exact t_hit of the lazy walk on K_n",
        make_spec("exact-complete" + std::to_string(n), "spectra", {{"schedule", graph_schedule("complete", n)}}));
  add("Monte Carlo hitting time, 4-cycle, opposite vertices",
      make_spec("mc-cycle4-hit", "hit",
                {{"schedule", graph_schedule("cycle", 4)}, {"start", 0}, {"target", 2}, {"trials", 100000},
                 {"horizon", 100000}}));
  add("non-hit frequency at T=5 on the 4-cycle (censored fraction)",
      make_spec("mc-cycle4-nonhit", "hit",
                {{"schedule", graph_schedule("cycle", 4)}, {"start", 0}, {"target", 2}, {"trials", 100000},
                 {"horizon", 5}}));
  add("consensus/coalescing duality, lazy walk on P_3",
      make_spec("duality-path3", "duality", {{"schedule", graph_schedule("path", 3)}, {"j", {1, 2, 3}}}));
  add("consensus/coalescing duality, two alternating chains on K_3",
      make_spec("duality-cyclic-k3", "duality",
                {{"schedule",
                  {{"type", "chain"},
                   {"kind", "cyclic"},
                   {"matrices",
                    {{{"n", 3}, {"rows", {{0.5, 0.25, 0.25}, {0.25, 0.5, 0.25}, {0.25, 0.25, 0.5}}}},
                     {{"n", 3}, {"rows", {{0.75, 0.125, 0.125}, {0.125, 0.75, 0.125}, {0.125, 0.125, 0.75}}}}}},
                   {"pi", {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}}},
                 {"j", {1, 2, 3}}}));
  add("winning probability of a single opinion at a degree-2 vertex of P_5",
      make_spec("win-path5", "win-prob",
                {{"schedule", graph_schedule("path", 5)},
                 {"opinions", {0, 1, 0, 0, 0}},
                 {"sigma", 1},
                 {"trials", 200000},
                 {"horizon", 100000}}));
  for (int n = 7; n <= 10; ++n)
    add("Sisyphus wheel hitting time from vertex 0 to vertex n-1",
        make_spec("sisyphus-n" + std::to_string(n), "hit",
                  {{"schedule", {{"type", "sisyphus"}, {"n", n}, {"kernel", "lazy_simple"}}},
                   {"start", 0},
                   {"target", n - 1},
                   {"trials", 2000},
                   {"horizon", 10000000}}));
  add("meeting on the rotating double star, m=30, from u_{m-1} and w_{m-1}",
      make_spec("ot-meet-m30", "meet",
                {{"schedule", {{"type", "double_star"}, {"m", 30}}}, {"a", 29}, {"b", 59}, {"trials", 100},
                 {"horizon", 100000}}));
  {
    std::vector<int> ops(40, 0);
    for (int i = 20; i < 40; ++i) ops[static_cast<std::size_t>(i)] = 1;
    add("pull-voting consensus on the rotating double star, m=20, sides split 0/1",
        make_spec("ot-consensus-m20", "vote",
                  {{"schedule", {{"type", "double_star"}, {"m", 20}}}, {"opinions", ops}, {"trials", 100},
                   {"horizon", 100000}}));
  }
  for (int i = 0; i < 10; ++i)
    add("coalescing, hitting and cover times against t_HIT/t_sep bounds",
        make_spec("bounds-random" + std::to_string(i), "bounds",
                  {{"schedule", random_metropolis_descriptor(i)},
                   {"ks", {1, 2, 4}},
                   {"trials", 1000},
                   {"horizon", 1000000},
                   {"K", 1.0},
                   {"coal_mult_trials", 2000}}));
  add("relaxation times of lazy Metropolis snapshots of the edge-Markovian graph",
      make_spec("em-probe-n200", "em-probe", {{"n", 200}, {"p", 0.5}, {"q", 0.5}, {"J", 0}, {"samples", 200}}));
  return r;
}

inline const NamedExperiment& find_experiment(const std::vector<NamedExperiment>& reg, const std::string& name) {
  for (const auto& e : reg)
    if (e.name == name) return e;
  throw ConfigError("unknown experiment '" + name + "' (see 'list')");
}

}  // namespace dynwalk
