#pragma once

#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/graph/dynamic.hpp"
#include "dynwalk/io/json_io.hpp"

#include <string>

namespace dynwalk {

/// Builds a schedule from a descriptor object. Supported "type"s:
///   graph          {"graph": cycle|path|complete|star, "n", "kernel"}
///   graphs         {"graphs": [graph objects], "kernel"}  cyclic over the listed snapshots
///   sisyphus       {"n", "kernel"}
///   double_star    {"m", "kernel"}
///   random_cyclic  {"n", "period", "seed", "extra", "kernel"}
///   chain          {"kind", "matrices", "period", "seed", "pi"}  explicit matrices
///   file           {"path"}  a schedule JSON file
inline ChainSchedule schedule_from_descriptor(const JsonReader& r) {
  if (!r.value().is_object()) r.fail("schedule descriptor must be an object");
  const auto type_r = r.required("type");
  const std::string type = type_r.string();
  auto kernel = [&](Kernel def) {
    if (!r.has("kernel")) return def;
    const auto c = r.child("kernel");
    const std::string name = c.string();
    try {
      return kernel_from_string(name);
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidInput& e) {
      c.fail(e.what());
    }
  };
  auto size = [&](const char* key, long long lo, long long hi) {
    const auto c = r.required(key);
    const long long v = c.integer();
    if (v < lo || v > hi) c.fail(detail::concat(key, " must lie in [", lo, ", ", hi, "]"));
    return static_cast<int>(v);
  };
  try {
    if (type == "graph") {
      r.require_object({"type", "graph", "n", "kernel"});
      const auto g = graphs::by_name(r.required("graph").string(), size("n", 2, 4096));
      return static_graph(g, kernel(Kernel::LazySimple)).to_chain_schedule();
    }
    if (type == "graphs") {
      r.require_object({"type", "graphs", "kernel"});
      const auto list_r = r.required("graphs");
      const auto& arr = list_r.array();
      if (arr.empty()) list_r.fail("at least one graph is required");
      auto snaps = std::make_shared<std::vector<GraphSnapshot>>();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        snaps->push_back(graph_from_json(list_r.child(i)));
        if (snaps->back().size() != snaps->front().size()) list_r.child(i).fail("graphs disagree on n");
      }
      DynamicGraphSchedule d;
      d.n = snaps->front().size();
      d.generator = [snaps](Time t) { return (*snaps)[static_cast<std::size_t>(t - 1)]; };
      d.kernel = kernel(Kernel::LazySimple);
      d.period = static_cast<Time>(snaps->size());
      return d.to_chain_schedule();
    }
    if (type == "sisyphus") {
      r.require_object({"type", "n", "kernel"});
      return sisyphus_schedule(size("n", 3, 4096), kernel(Kernel::LazySimple)).to_chain_schedule();
    }
    if (type == "double_star") {
      r.require_object({"type", "m", "kernel"});
      return ot_double_star(size("m", 2, 2048)).schedule.dynamic(kernel(Kernel::LazySimple)).to_chain_schedule();
    }
    if (type == "random_cyclic") {
      r.require_object({"type", "n", "period", "seed", "extra", "kernel"});
      const double extra = r.has("extra") ? r.child("extra").number() : 0.3;
      if (extra < 0.0 || extra > 1.0) r.child("extra").fail("extra must lie in [0, 1]");
      const std::uint64_t seed = r.has("seed") ? r.child("seed").unsigned_integer() : kDefaultSeed;
      return random_cyclic_graphs(size("n", 2, 4096), size("period", 1, 100000), seed, extra,
                                  kernel(Kernel::LazyMetropolis))
          .to_chain_schedule();
    }
    if (type == "chain") {
      return schedule_from_json(r, true);
    }
    if (type == "file") {
      r.require_object({"type", "path"});
      const auto doc = JsonDoc::load(r.required("path").string());
      return schedule_from_json(JsonReader(doc, ""));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    r.fail(e.what());
  }
  type_r.fail("unknown schedule type '" + type +
              "' (expected graph, graphs, sisyphus, double_star, random_cyclic, chain, file)");
}

}  // namespace dynwalk
