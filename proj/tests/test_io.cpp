#include "dynwalk/chain/random.hpp"
#include "dynwalk/experiment/experiment.hpp"
#include "dynwalk/io/csv.hpp"
#include "dynwalk/io/json_io.hpp"

#include <gtest/gtest.h>

#include <string>

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

TEST(JsonIo, MatrixRoundTrip) {
  RngStream gen(1, 0);
  const auto p = random_reversible_chain(random_distribution(5, gen), gen, true);
  const auto doc = JsonDoc::from_value(to_json(p));
  EXPECT_EQ(matrix_from_json(JsonReader(doc, "")), p);
}

TEST(JsonIo, ScheduleRoundTrip) {
  RngStream gen(2, 0);
  const auto s = random_common_pi_schedule(random_distribution(4, gen), 3, gen, true);
  const auto doc = JsonDoc::parse(to_json(s).dump(1));
  const auto back = schedule_from_json(JsonReader(doc, ""));
  EXPECT_EQ(back.kind(), ScheduleKind::Cyclic);
  EXPECT_EQ(back.period(), s.period());
  for (Time t = 1; t <= 7; ++t) EXPECT_EQ(back.at(t), s.at(t));
  ASSERT_TRUE(back.declared_pi());
  for (int i = 0; i < 4; ++i) EXPECT_EQ((*back.declared_pi())[i], (*s.declared_pi())[i]);
  const auto st = ChainSchedule::static_schedule(s.at(1));
  const auto st_back = schedule_from_json(JsonReader(JsonDoc::from_value(to_json(st)), ""));
  EXPECT_EQ(st_back.kind(), ScheduleKind::Static);
  EXPECT_EQ(st_back.at(99), st.at(1));
}

TEST(JsonIo, GraphAndOpinionsRoundTrip) {
  const auto g = graphs::star(5, 2);
  const auto doc = JsonDoc::from_value(to_json(g));
  const auto back = graph_from_json(JsonReader(doc, ""));
  EXPECT_EQ(back.size(), 5);
  EXPECT_EQ(back.edges(), g.edges());
  const std::vector<int> ops{3, 1, 4, 1, 5};
  const auto od = JsonDoc::from_value(opinions_to_json(ops));
  EXPECT_EQ(opinions_from_json(JsonReader(od, ""), 5), ops);
  const auto arr = JsonDoc::parse("[3, 1, 4, 1, 5]");
  EXPECT_EQ(opinions_from_json(JsonReader(arr, ""), 5), ops);
}

TEST(JsonIo, ErrorsNameSourceLineAndPointer) {
  const std::string text =
      "{\n"
      "  \"n\": 2,\n"
      "  \"rows\": [\n"
      "    [0.5, 0.5],\n"
      "    [0.25, 0.5]\n"
      "  ]\n"
      "}\n";
  const auto doc = JsonDoc::parse(text, "m.json");
  const auto msg = error_of([&] { (void)matrix_from_json(JsonReader(doc, "")); });
  EXPECT_EQ(msg.rfind("m.json:5: /rows/1: row sums to 0.75", 0), 0u) << msg;
  const auto neg = JsonDoc::parse("{\"n\": 2,\n \"rows\": [[1.5, -0.5],\n [0, 1]]}", "neg.json");
  EXPECT_EQ(error_of([&] { (void)matrix_from_json(JsonReader(neg, "")); }).rfind("neg.json:2: /rows/0/1:", 0), 0u);
  const auto extra = JsonDoc::parse("{\"n\": 2,\n\n \"edges\": [],\n \"color\": 1}", "g.json");
  EXPECT_EQ(error_of([&] { (void)graph_from_json(JsonReader(extra, "")); }),
            "g.json:4: /color: unknown field 'color'");
  const auto loop = JsonDoc::parse("{\"n\": 3, \"edges\": [\n[0, 1],\n[2, 2]]}", "l.json");
  EXPECT_EQ(error_of([&] { (void)graph_from_json(JsonReader(loop, "")); }),
            "l.json:3: /edges/1: self-loops are not allowed");
  EXPECT_EQ(error_of([] { (void)JsonDoc::parse("{\n\"n\": ,\n}", "bad.json"); }).rfind("bad.json:2: JSON syntax", 0),
            0u);
  EXPECT_EQ(error_of([] { (void)JsonDoc::load("/nonexistent/file.json"); }),
            "/nonexistent/file.json: cannot open file");
}

TEST(JsonIo, ScheduleValidation) {
  const auto two = JsonDoc::parse(
      R"({"kind": "static", "matrices": [{"n": 1, "rows": [[1]]}, {"n": 1, "rows": [[1]]}]})", "s.json");
  EXPECT_NE(error_of([&] { (void)schedule_from_json(JsonReader(two, "")); }).find("exactly one matrix"),
            std::string::npos);
  const auto period = JsonDoc::parse(R"({"kind": "cyclic", "period": 3, "matrices": [{"n": 1, "rows": [[1]]}]})");
  EXPECT_NE(error_of([&] { (void)schedule_from_json(JsonReader(period, "")); }).find("/period"), std::string::npos);
  const auto kind = JsonDoc::parse(R"({"kind": "wobbly", "matrices": [{"n": 1, "rows": [[1]]}]})");
  EXPECT_NE(error_of([&] { (void)schedule_from_json(JsonReader(kind, "")); }).find("/kind"), std::string::npos);
  const auto pi = JsonDoc::parse(R"({"kind": "static", "matrices": [{"n": 2, "rows": [[1,0],[0,1]]}], "pi": [1]})");
  EXPECT_NE(error_of([&] { (void)schedule_from_json(JsonReader(pi, "")); }).find("/pi"), std::string::npos);
}

TEST(JsonIo, OpinionValidation) {
  const auto missing = JsonDoc::parse(R"({"0": 1, "2": 0})");
  EXPECT_NE(error_of([&] { (void)opinions_from_json(JsonReader(missing, ""), 3); }).find("vertex 1 has no opinion"),
            std::string::npos);
  const auto bad = JsonDoc::parse(R"({"0": 1, "x": 0})");
  EXPECT_NE(error_of([&] { (void)opinions_from_json(JsonReader(bad, ""), 2); }).find("/x"), std::string::npos);
}

TEST(Table, CsvAndJson) {
  Table empty({"a", "b"});
  EXPECT_EQ(empty.csv(), "a,b\n");
  EXPECT_EQ(empty.json().dump(), "[]");
  Table t({"name", "x", "flag", "k"});
  t.add({std::string("plain"), 0.1, true, std::int64_t{3}});
  t.add({std::string("has,comma \"q\""), kInfinity, false, std::int64_t{-1}});
  EXPECT_EQ(t.csv(), "name,x,flag,k\nplain,0.1,true,3\n\"has,comma \"\"q\"\"\",inf,false,-1\n");
  const auto j = t.json();
  EXPECT_EQ(j[0]["x"].get<double>(), 0.1);
  EXPECT_EQ(j[1]["x"].get<std::string>(), "inf");
  EXPECT_EQ(j[1]["k"].get<int>(), -1);
  EXPECT_THROW(t.add({std::string("short")}), InvalidInput);
}

TEST(Table, NumbersRoundTrip) {
  for (double x : {1.0 / 3.0, 2.5e-300, 123456789.125, -0.0})
    EXPECT_EQ(std::stod(format_number(x)), x);
  EXPECT_EQ(format_number(-kInfinity), "-inf");
}

TEST(Table, JsonPathFor) {
  EXPECT_EQ(json_path_for("out/res.csv"), "out/res.json");
  EXPECT_EQ(json_path_for("res"), "res.json");
  EXPECT_EQ(json_path_for("dir.d/res"), "dir.d/res.json");
}

}  // namespace
}  // namespace dynwalk
