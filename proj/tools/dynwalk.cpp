// Command-line driver for the dynwalk experiments.

#include "dynwalk/experiment/experiment.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace dynwalk;

constexpr const char* kOutputHelp = R"(Output columns
  spectra        scope,index,lazy,irreducible,t_hit,t_rel,lambda_star,t_sep,t_mix_inf
  hit/cover/meet/coalesce/vote sim
                 experiment_id,n,k,trials,mean,std_err,ci_lo,ci_hi,censored
  vote win-prob  experiment_id,n,trials,frequency,std_err,ci99_lo,ci99_hi,predicted,censored,brackets
  vote duality   experiment_id,n,j,lhs,rhs,abs_diff,sequences
  em probe       t,connected,lambda_star,t_rel,leq_C
  verify-lemmas  name,checks,violations,max_excess,pass
  run <bounds>   quantity,k,trials,mean,std_err,ci_lo,ci_hi,censored,bound,holds
CSV goes to --out (or stdout); a JSON array with the same rows is written next to it (.json).
Exit codes: 0 success, 1 a checked property failed, 2 configuration error, 3 runtime error.)";

struct Global {
  std::string config;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out;
};

// Flags shared by the schedule-driven subcommands.
struct ScheduleFlags {
  std::string graph;
  int n = 0;
  std::string kernel;
  std::string schedule_file;
};

struct SimFlags {
  long long trials = 0;
  long long horizon = 0;
};

void add_global(CLI::App* app, Global& g) {
  app->add_option("--config", g.config, "JSON file: a full experiment spec or just its params");
  app->add_option("--seed", g.seed, "master seed (default 20240607)");
  app->add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 1024));
  app->add_option("--out", g.out, "CSV output path");
}

void add_schedule(CLI::App* app, ScheduleFlags& s) {
  app->add_option("--graph", s.graph, "static graph: cycle, path, complete, star");
  app->add_option("--n", s.n, "number of vertices for --graph");
  app->add_option("--kernel", s.kernel, "lazy_simple, dmax_lazy or lazy_metropolis");
  app->add_option("--schedule-file", s.schedule_file, "schedule JSON file");
}

void add_sim(CLI::App* app, SimFlags& f) {
  app->add_option("--trials", f.trials, "number of trials");
  app->add_option("--horizon", f.horizon, "censoring horizon");
}

ExperimentSpec base_spec(const Global& g, const std::string& kind) {
  ExperimentSpec spec;
  spec.id = kind;
  spec.kind = kind;
  if (!g.config.empty()) {
    const auto doc = JsonDoc::load(g.config);
    if (doc.root().is_object() && doc.root().contains("kind")) {
      spec = spec_from_json(JsonReader(doc, ""));
      if (spec.kind != kind)
        throw ConfigError(g.config + ": kind '" + spec.kind + "' does not match subcommand '" + kind + "'");
    } else {
      const JsonReader r(doc, "");
      r.require_object(experiment_kinds().at(kind));
      spec.params = doc.root();
      spec.origin = std::make_shared<const JsonDoc>(doc);
      spec.params_pointer = "";
    }
  }
  return spec;
}

void apply_schedule(ExperimentSpec& spec, const ScheduleFlags& s, CLI::App* app) {
  if (app->count("--schedule-file")) {
    spec.params["schedule"] = {{"type", "file"}, {"path", s.schedule_file}};
  } else if (app->count("--graph")) {
    if (!app->count("--n")) throw ConfigError("--graph requires --n");
    spec.params["schedule"] = {{"type", "graph"}, {"graph", s.graph}, {"n", s.n}};
  }
  if (app->count("--kernel")) {
    if (!spec.params.contains("schedule")) throw ConfigError("--kernel requires a schedule");
    spec.params["schedule"]["kernel"] = s.kernel;
  }
}

void apply_sim(ExperimentSpec& spec, const SimFlags& f, CLI::App* app) {
  if (app->count("--trials")) spec.params["trials"] = f.trials;
  if (app->count("--horizon")) spec.params["horizon"] = f.horizon;
}

int execute(ExperimentSpec spec, const Global& g) {
  if (g.seed) spec.seed = *g.seed;
  if (!g.out.empty()) spec.out = g.out;
  const auto result = run(spec, g.threads);
  if (spec.out.empty() || spec.out == "-") {
    result.table.write_csv(std::cout);
  } else {
    write_outputs(spec.out, result);
    std::cerr << spec.id << ": wrote " << spec.out << " and " << json_path_for(spec.out) << "\n";
  }
  return result.exit_code;
}

Json load_param_file(const std::string& path) { return JsonDoc::load(path).root(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random walks, coalescence and voting on dynamic graphs."};
  app.footer(kOutputHelp);
  app.require_subcommand(1);
  Global g;

  // spectra
  ScheduleFlags spectra_s;
  double spectra_eps = 0.5;
  auto* spectra = app.add_subcommand("spectra", "per-snapshot t_hit, t_rel and schedule t_sep");
  add_global(spectra, g);
  add_schedule(spectra, spectra_s);
  spectra->add_option("--eps", spectra_eps, "mixing threshold");

  // walks
  ScheduleFlags walk_s;
  SimFlags walk_f;
  std::vector<int> starts;
  int k = 1, start = 0, target = -1, a = 0, b = -1;
  auto* hit = app.add_subcommand("hit", "hitting time of k independent walkers");
  auto* cover = app.add_subcommand("cover", "cover time of k independent walkers");
  auto* meet = app.add_subcommand("meet", "meeting time of two walkers");
  auto* coalesce = app.add_subcommand("coalesce", "coalescing time, one walker per vertex");
  for (auto* c : {hit, cover, meet, coalesce}) {
    add_global(c, g);
    add_schedule(c, walk_s);
    add_sim(c, walk_f);
  }
  for (auto* c : {hit, cover}) {
    c->add_option("--starts", starts, "explicit starting vertices");
    c->add_option("--k", k, "number of walkers started at --start");
    c->add_option("--start", start, "starting vertex");
  }
  hit->add_option("--target", target, "target vertex (default n-1)");
  meet->add_option("--a", a, "first walker's start");
  meet->add_option("--b", b, "second walker's start (default n-1)");

  // vote
  auto* vote = app.add_subcommand("vote", "pull voting");
  vote->require_subcommand(1);
  ScheduleFlags vote_s;
  SimFlags vote_f;
  std::string opinions_file;
  int sigma = 1;
  std::vector<int> js;
  auto* vote_sim = vote->add_subcommand("sim", "consensus time");
  auto* vote_win = vote->add_subcommand("win-prob", "probability that opinion sigma wins");
  auto* vote_dual = vote->add_subcommand("duality", "exact consensus/coalescing comparison");
  for (auto* c : {vote_sim, vote_win, vote_dual}) {
    add_global(c, g);
    add_schedule(c, vote_s);
  }
  for (auto* c : {vote_sim, vote_win}) {
    add_sim(c, vote_f);
    c->add_option("--opinions", opinions_file, "JSON map vertex -> opinion");
  }
  vote_win->add_option("--sigma", sigma, "opinion whose winning probability is estimated");
  vote_dual->add_option("--j", js, "times j at which both sides are compared");

  // em
  auto* em = app.add_subcommand("em", "edge-Markovian graphs");
  em->require_subcommand(1);
  auto* em_probe = em->add_subcommand("probe", "relaxation times of lazy Metropolis snapshots");
  add_global(em_probe, g);
  int em_n = 200;
  double em_p = 0.5, em_q = 0.5;
  long long em_samples = 200, em_J = 0;
  em_probe->add_option("--n", em_n, "vertices");
  em_probe->add_option("--p", em_p, "edge birth probability");
  em_probe->add_option("--q", em_q, "edge death probability");
  em_probe->add_option("--samples", em_samples, "number of checkpoints");
  em_probe->add_option("--J", em_J, "window length J");

  // verify-lemmas
  auto* lemmas = app.add_subcommand("verify-lemmas", "inequality suite on random chains and schedules");
  add_global(lemmas, g);
  int chains = -1, schedules = -1;
  lemmas->add_option("--chains", chains, "random chains (default 200)");
  lemmas->add_option("--schedules", schedules, "random schedules (default 50)");

  // registry
  auto* list = app.add_subcommand("list", "list named experiments");
  auto* runc = app.add_subcommand("run", "run named experiments (or a spec via --config)");
  std::vector<std::string> names;
  std::string out_dir = ".";
  bool all = false;
  add_global(runc, g);
  runc->add_option("names", names, "experiment names");
  runc->add_flag("--all", all, "run every named experiment");
  runc->add_option("--dir", out_dir, "directory for outputs of named experiments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectra) {
      auto spec = base_spec(g, "spectra");
      apply_schedule(spec, spectra_s, spectra);
      if (spectra->count("--eps")) spec.params["eps"] = spectra_eps;
      return execute(spec, g);
    }
    for (auto* c : {hit, cover, meet, coalesce}) {
      if (!*c) continue;
      auto spec = base_spec(g, c->get_name());
      apply_schedule(spec, walk_s, c);
      apply_sim(spec, walk_f, c);
      if (c == hit || c == cover) {
        if (c->count("--starts")) spec.params["starts"] = starts;
        if (c->count("--k")) spec.params["k"] = k;
        if (c->count("--start")) spec.params["start"] = start;
      }
      if (c == hit && hit->count("--target")) spec.params["target"] = target;
      if (c == meet) {
        if (meet->count("--a")) spec.params["a"] = a;
        if (meet->count("--b")) spec.params["b"] = b;
      }
      return execute(spec, g);
    }
    if (*vote) {
      auto* c = *vote_sim ? vote_sim : *vote_win ? vote_win : vote_dual;
      const std::string kind = c == vote_sim ? "vote" : c == vote_win ? "win-prob" : "duality";
      auto spec = base_spec(g, kind);
      apply_schedule(spec, vote_s, c);
      if (c != vote_dual) {
        apply_sim(spec, vote_f, c);
        if (c->count("--opinions")) spec.params["opinions"] = load_param_file(opinions_file);
      }
      if (c == vote_win && c->count("--sigma")) spec.params["sigma"] = sigma;
      if (c == vote_dual && c->count("--j")) spec.params["j"] = js;
      return execute(spec, g);
    }
    if (*em_probe) {
      auto spec = base_spec(g, "em-probe");
      if (em_probe->count("--n")) spec.params["n"] = em_n;
      if (em_probe->count("--p")) spec.params["p"] = em_p;
      if (em_probe->count("--q")) spec.params["q"] = em_q;
      if (em_probe->count("--samples")) spec.params["samples"] = em_samples;
      if (em_probe->count("--J")) spec.params["J"] = em_J;
      return execute(spec, g);
    }
    if (*lemmas) {
      auto spec = base_spec(g, "verify-lemmas");
      if (lemmas->count("--chains")) spec.params["chains"] = chains;
      if (lemmas->count("--schedules")) spec.params["schedules"] = schedules;
      return execute(spec, g);
    }
    const auto reg = experiment_registry();
    if (*list) {
      for (const auto& e : reg) std::cout << e.name << "\t" << e.spec.kind << "\tseed " << e.spec.seed << "\t" << e.description << "\n";
      return 0;
    }
    if (*runc) {
      if (!g.config.empty()) {
        const auto doc = JsonDoc::load(g.config);
        return execute(spec_from_json(JsonReader(doc, "")), g);
      }
      if (all)
        for (const auto& e : reg) names.push_back(e.name);
      if (names.empty()) throw ConfigError("run: give experiment names, --all, or --config");
      if (!g.out.empty() && names.size() > 1) throw ConfigError("run: --out applies to a single experiment");
      if (!out_dir.empty() && out_dir != ".") std::filesystem::create_directories(out_dir);
      int code = 0;
      for (const auto& name : names) {
        auto spec = find_experiment(reg, name).spec;
        spec.out = out_dir + "/" + spec.out;
        code = std::max(code, execute(spec, g));
      }
      return code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
