#pragma once

#include "dynwalk/chain/random.hpp"
#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/graph/graph.hpp"
#include "dynwalk/graph/kernels.hpp"

#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dynwalk {

/// t -> G_t for t >= 1 together with a walk kernel.
struct DynamicGraphSchedule {
  int n = 0;
  std::function<GraphSnapshot(Time)> generator;
  Kernel kernel = Kernel::LazySimple;
  std::optional<Time> period;   // snapshots repeat with this period
  std::optional<Time> horizon;  // finite schedules only
  bool require_connected = false;

  [[nodiscard]] GraphSnapshot graph_at(Time t) const {
    if (t < 1) throw InvalidInput(detail::concat("dynamic graph: time must be >= 1, got ", t));
    if (period) return generator((t - 1) % *period + 1);
    if (horizon && t > *horizon)
      throw HorizonExceeded(detail::concat("dynamic graph: t=", t, " exceeds horizon ", *horizon));
    return generator(t);
  }

  /// Kernel matrices as a ChainSchedule. The declared stationary distribution is uniform for the
  /// symmetric kernels and degree-proportional for lazy_simple when every snapshot shares a degree sequence.
  [[nodiscard]] ChainSchedule to_chain_schedule() const {
    detail::require(period.has_value() != horizon.has_value(),
                    "dynamic graph: exactly one of period and horizon must be set");
    const Time len = period ? *period : *horizon;
    detail::require(len >= 1, "dynamic graph: period/horizon must be >= 1");
    std::vector<GraphSnapshot> pool;
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(len));
    for (Time t = 1; t <= len; ++t) {
      GraphSnapshot g = generator(t);
      if (g.size() != n)
        throw InvalidInput(detail::concat("dynamic graph: snapshot at t=", t, " has n=", g.size(), ", expected ", n));
      if (require_connected && !g.connected())
        throw InvalidInput(detail::concat("dynamic graph: snapshot at t=", t, " is disconnected"));
      int idx = -1;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (pool[i] == g) {
          idx = static_cast<int>(i);
          break;
        }
      if (idx < 0) {
        idx = static_cast<int>(pool.size());
        pool.push_back(std::move(g));
      }
      seq.push_back(idx);
    }
    std::vector<StochasticMatrix> mats;
    mats.reserve(pool.size());
    for (const auto& g : pool) mats.push_back(apply_kernel(kernel, g));
    std::optional<ProbabilityVector> pi;
    if (kernel == Kernel::LazySimple) {
      const auto degs = pool.front().degrees();
      bool same = true;
      for (const auto& g : pool) same = same && g.degrees() == degs;
      if (same) pi = kernel_stationary(kernel, pool.front());
    } else {
      pi = ProbabilityVector::uniform(n);
    }
    if (period)
      return ChainSchedule::indexed(*period == 1 ? ScheduleKind::Static : ScheduleKind::Cyclic, std::move(mats), {}, std::move(seq), pi);
    return ChainSchedule::indexed(ScheduleKind::Generated, std::move(mats), std::move(seq), {}, pi);
  }
};

/// G_1 = base, G_{t+1} = eta(G_t).
struct PermutationSchedule {
  GraphSnapshot base;
  std::vector<Vertex> eta;

  PermutationSchedule(GraphSnapshot b, std::vector<Vertex> e) : base(std::move(b)), eta(std::move(e)) {
    detail::require(static_cast<int>(eta.size()) == base.size(), "permutation schedule: size mismatch");
    std::vector<char> seen(eta.size(), 0);
    for (Vertex v : eta) {
      require_vertex(base.size(), v, "permutation schedule");
      detail::require(!seen[static_cast<std::size_t>(v)], "permutation schedule: eta is not a permutation");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  [[nodiscard]] GraphSnapshot at(Time t) const {
    if (t < 1) throw InvalidInput("permutation schedule: time must be >= 1");
    GraphSnapshot g = base;
    const Time steps = (t - 1) % order();
    for (Time i = 0; i < steps; ++i) g = g.permuted(eta);
    return g;
  }

  /// Order of eta (lcm of its cycle lengths); the snapshot sequence repeats with this period.
  [[nodiscard]] Time order() const {
    const int n = base.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    Time l = 1;
    for (int v = 0; v < n; ++v) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      Time len = 0;
      for (int u = v; !seen[static_cast<std::size_t>(u)]; u = eta[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++len;
      }
      l = std::lcm(l, len);
    }
    return l;
  }

  [[nodiscard]] DynamicGraphSchedule dynamic(Kernel k) const {
    DynamicGraphSchedule d;
    d.n = base.size();
    // Snapshots within one period are precomputed so generator calls are cheap.
    auto snaps = std::make_shared<std::vector<GraphSnapshot>>();
    GraphSnapshot g = base;
    const Time ord = order();
    for (Time i = 0; i < ord; ++i) {
      snaps->push_back(g);
      g = g.permuted(eta);
    }
    d.generator = [snaps](Time t) { return (*snaps)[static_cast<std::size_t>((t - 1) % static_cast<Time>(snaps->size()))]; };
    d.kernel = k;
    d.period = ord;
    d.require_connected = true;
    return d;
  }
};

/// Star centered at v(t) = t mod (n-1); vertex n-1 is never a center.
inline DynamicGraphSchedule sisyphus_schedule(int n, Kernel k = Kernel::LazySimple) {
  detail::require(n >= 3, detail::concat("sisyphus schedule needs n >= 3, got ", n));
  DynamicGraphSchedule d;
  d.n = n;
  d.generator = [n](Time t) { return graphs::star(n, static_cast<Vertex>(t % (n - 1))); };
  d.kernel = k;
  d.period = n - 1;
  d.require_connected = true;
  return d;
}

inline Vertex sisyphus_center(int n, Time t) { return static_cast<Vertex>(t % (n - 1)); }

/// Two stars on U = {u_0..u_{m-1}} (labels 0..m-1) and W = {w_0..w_{m-1}} (labels m..2m-1)
/// joined by {u_0, w_0}; eta shifts indices within each side.
struct DoubleStar {
  int m = 0;
  GraphSnapshot graph;
  PermutationSchedule schedule;

  [[nodiscard]] Vertex u(int i) const { return i; }
  [[nodiscard]] Vertex w(int i) const { return m + i; }
};

inline DoubleStar ot_double_star(int m) {
  detail::require(m >= 2, detail::concat("double star needs m >= 2, got ", m));
  std::vector<Edge> e;
  e.emplace_back(0, m);
  for (int i = 1; i < m; ++i) {
    e.emplace_back(0, i);
    e.emplace_back(m, m + i);
  }
  GraphSnapshot g(2 * m, std::move(e));
  std::vector<Vertex> eta(static_cast<std::size_t>(2 * m));
  for (int i = 0; i < m; ++i) {
    eta[static_cast<std::size_t>(i)] = (i + 1) % m;
    eta[static_cast<std::size_t>(m + i)] = m + (i + 1) % m;
  }
  PermutationSchedule ps(g, std::move(eta));
  return DoubleStar{m, std::move(g), std::move(ps)};
}

inline GraphSnapshot random_connected_graph(int n, RngStream& rng, double extra) {
  return GraphSnapshot(n, random_connected_edges(n, rng, extra));
}

/// Cyclic schedule of `period` random connected graphs drawn from `seed`.
inline DynamicGraphSchedule random_cyclic_graphs(int n, int period, std::uint64_t seed, double extra,
                                                 Kernel k = Kernel::LazyMetropolis) {
  detail::require(n >= 2 && period >= 1, "random cyclic graphs: need n >= 2 and period >= 1");
  auto snaps = std::make_shared<std::vector<GraphSnapshot>>();
  RngStream rng(seed, 0, 0, 7);
  for (int i = 0; i < period; ++i) snaps->push_back(random_connected_graph(n, rng, extra));
  DynamicGraphSchedule d;
  d.n = n;
  d.generator = [snaps](Time t) { return (*snaps)[static_cast<std::size_t>((t - 1) % static_cast<Time>(snaps->size()))]; };
  d.kernel = k;
  d.period = period;
  d.require_connected = true;
  return d;
}

inline DynamicGraphSchedule static_graph(const GraphSnapshot& g, Kernel k) {
  DynamicGraphSchedule d;
  d.n = g.size();
  d.generator = [g](Time) { return g; };
  d.kernel = k;
  d.period = 1;
  return d;
}

}  // namespace dynwalk
