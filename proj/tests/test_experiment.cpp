#include "dynwalk/experiment/experiment.hpp"

#include <gtest/gtest.h>

#include <set>

namespace dynwalk {
namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "<no error>";
}

TEST(Spec, RoundTripThroughText) {
  for (const auto& e : experiment_registry()) {
    const auto back = spec_from_text(e.spec.to_json().dump(2));
    EXPECT_EQ(back, e.spec) << e.name;
  }
}

TEST(Spec, RejectsUnknownKindFieldAndParam) {
  EXPECT_NE(error_of([] { (void)spec_from_text(R"({"id": "x", "kind": "teleport", "params": {}})"); })
                .find("unknown experiment kind"),
            std::string::npos);
  EXPECT_EQ(error_of([] { (void)spec_from_text("{\"id\": \"x\",\n\"kind\": \"hit\",\n\"colour\": 1}", "s.json"); }),
            "s.json:3: /colour: unknown field 'colour'");
  EXPECT_EQ(error_of([] {
              (void)spec_from_text(
                  "{\"id\": \"x\", \"kind\": \"hit\",\n \"params\": {\n  \"schedule\": {\"type\": \"graph\", "
                  "\"graph\": \"cycle\", \"n\": 4},\n  \"trails\": 10}}",
                  "p.json");
            }),
            "p.json:4: /params/trails: unknown field 'trails'");
}

TEST(Spec, ParamErrorsCarryPointers) {
  ExperimentSpec s;
  s.id = "bad";
  s.kind = "hit";
  s.params = Json{{"schedule", {{"type", "graph"}, {"graph", "cycle"}, {"n", 4}, {"kernel", "nope"}}}};
  EXPECT_NE(error_of([&] { (void)run(s); }).find("/params/schedule/kernel"), std::string::npos);
  s.params = Json{{"schedule", {{"type", "graph"}, {"graph", "cycle"}, {"n", 4}}}, {"target", 9}};
  EXPECT_NE(error_of([&] { (void)run(s); }).find("/params/target"), std::string::npos);
  s.params = Json{{"schedule", {{"type", "wormhole"}}}};
  EXPECT_NE(error_of([&] { (void)run(s); }).find("unknown schedule type"), std::string::npos);
  s.kind = "win-prob";
  s.params = Json{{"schedule", {{"type", "sisyphus"}, {"n", 4}}}, {"opinions", {0, 1, 0, 0}}};
  EXPECT_NE(error_of([&] { (void)run(s); }).find("/params"), std::string::npos);
}

TEST(Run, SameSeedIsByteIdentical) {
  ExperimentSpec s;
  s.id = "rep";
  s.kind = "bounds";
  s.params = Json{{"schedule", random_metropolis_descriptor(0)}, {"trials", 100}, {"coal_mult_trials", 200}};
  const auto a = run(s, 1);
  const auto b = run(s, 3);
  EXPECT_EQ(a.table.csv(), b.table.csv());
  EXPECT_EQ(a.table.json().dump(), b.table.json().dump());
  s.seed += 1;
  EXPECT_NE(run(s, 1).table.csv(), a.table.csv());
}

TEST(Run, SmallExperimentsOfEachKind) {
  const Json cycle4{{"type", "graph"}, {"graph", "cycle"}, {"n", 4}};
  auto make = [](const std::string& kind, Json params) {
    ExperimentSpec s;
    s.id = kind;
    s.kind = kind;
    s.params = std::move(params);
    return s;
  };
  const auto spectra = run(make("spectra", {{"schedule", cycle4}}));
  ASSERT_EQ(spectra.table.rows().size(), 2u);
  EXPECT_NEAR(std::get<double>(spectra.table.rows().back()[4]), 8.0, 1e-9);
  const auto hit = run(make("hit", {{"schedule", cycle4}, {"target", 2}, {"k", 2}, {"trials", 50}}));
  EXPECT_EQ(std::get<std::int64_t>(hit.table.rows()[0][2]), 2);
  for (const char* kind : {"cover", "meet", "coalesce", "vote"}) {
    const auto r = run(make(kind, {{"schedule", cycle4}, {"trials", 20}}));
    EXPECT_EQ(r.exit_code, 0) << kind;
    EXPECT_EQ(std::get<std::int64_t>(r.table.rows()[0][8]), 0) << kind;
  }
  const auto dual = run(make("duality", {{"schedule", {{"type", "graph"}, {"graph", "path"}, {"n", 3}}}, {"j", {2}}}));
  EXPECT_LE(std::get<double>(dual.table.rows()[0][5]), 1e-12);
  const auto probe = run(make("em-probe", {{"n", 20}, {"p", 0.5}, {"q", 0.5}, {"samples", 3}}));
  EXPECT_EQ(probe.table.rows().size(), 3u);
  const auto lem = run(make("verify-lemmas", {{"chains", 3}, {"schedules", 2}}));
  EXPECT_EQ(lem.exit_code, 0);
  const auto graphs = run(make(
      "spectra", {{"schedule", {{"type", "graphs"}, {"graphs", {{{"n", 3}, {"edges", {{0, 1}, {1, 2}}}}, {{"n", 3}, {"edges", {{0, 2}, {1, 2}}}}}}}}}));
  EXPECT_EQ(graphs.table.rows().size(), 3u);
}

TEST(Registry, NamesAreUniqueAndFindable) {
  const auto reg = experiment_registry();
  std::set<std::string> names;
  for (const auto& e : reg) {
    EXPECT_TRUE(names.insert(e.name).second) << e.name;
    EXPECT_EQ(e.spec.id, e.name);
    EXPECT_TRUE(experiment_kinds().count(e.spec.kind)) << e.name;
  }
  EXPECT_EQ(find_experiment(reg, "win-path5").spec.kind, "win-prob");
  EXPECT_THROW(find_experiment(reg, "nope"), ConfigError);
}

TEST(Registry, OutputsWrittenWithJsonMirror) {
  ExperimentSpec s;
  s.id = "tiny";
  s.kind = "duality";
  s.params = Json{{"schedule", {{"type", "graph"}, {"graph", "path"}, {"n", 3}}}, {"j", {1}}};
  const auto r = run(s);
  const std::string path = ::testing::TempDir() + "dynwalk_tiny.csv";
  write_outputs(path, r);
  const auto doc = JsonDoc::load(json_path_for(path));
  EXPECT_EQ(doc.root().size(), 1u);
  EXPECT_EQ(doc.root()[0]["j"].get<int>(), 1);
}

}  // namespace
}  // namespace dynwalk
