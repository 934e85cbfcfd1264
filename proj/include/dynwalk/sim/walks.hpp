#pragma once

#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/sim/estimate.hpp"
#include "dynwalk/sim/rng.hpp"
#include "dynwalk/sim/sampler.hpp"

#include <cstdint>
#include <vector>

namespace dynwalk {

// Stream tags keep the different simulations from sharing draws under one master seed.
namespace stream_tag {
inline constexpr std::uint64_t walk = 1;
inline constexpr std::uint64_t vote = 2;
inline constexpr std::uint64_t start = 3;
inline constexpr std::uint64_t edges = 4;
}  // namespace stream_tag

/// Positions of k walkers at time t with merge and kill bookkeeping.
struct EnsembleState {
  Time t = 0;
  std::vector<Vertex> positions;
  std::vector<int> rep;      // coalescing representative: rep[a] <= a, rep[a] == a while unmerged
  std::vector<char> alive;   // killed walkers stay dead

  static EnsembleState start(const std::vector<Vertex>& starts) {
    EnsembleState s;
    s.positions = starts;
    s.rep.resize(starts.size());
    for (std::size_t a = 0; a < starts.size(); ++a) s.rep[a] = static_cast<int>(a);
    s.alive.assign(starts.size(), 1);
    return s;
  }

  [[nodiscard]] int distinct_positions(int n) const {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int c = 0;
    for (std::size_t a = 0; a < positions.size(); ++a) {
      if (!alive[a]) continue;
      auto& s = seen[static_cast<std::size_t>(positions[a])];
      if (!s) {
        s = 1;
        ++c;
      }
    }
    return c;
  }
};

/// Per-trial walker streams: walker a of trial j draws from RngStream(seed, j, a).
class WalkerStreams {
 public:
  WalkerStreams(std::uint64_t seed, long trial, std::size_t k) {
    streams_.reserve(k);
    for (std::size_t a = 0; a < k; ++a)
      streams_.emplace_back(seed, static_cast<std::uint64_t>(trial), a, stream_tag::walk);
  }
  RngStream& operator[](std::size_t a) { return streams_[a]; }
  [[nodiscard]] std::size_t size() const { return streams_.size(); }

 private:
  std::vector<RngStream> streams_;
};

namespace detail {

inline void require_starts(int n, const std::vector<Vertex>& starts, const char* op) {
  if (starts.empty()) throw InvalidInput(concat(op, ": need k >= 1 walkers"));
  for (Vertex v : starts) require_vertex(n, v, op);
}

}  // namespace detail

/// Advances every walker by one step using P_{t+1}. With `coalescing`, a walker that shares its
/// position at time t with a smaller-index walker copies that walker's move (and is marked merged);
/// otherwise walkers move independently. Dead walkers do not move.
inline void step(const ScheduleSampler& sampler, EnsembleState& state, WalkerStreams& rng, bool coalescing) {
  const Time t = state.t + 1;
  if (!sampler.schedule().within_horizon(t))
    throw HorizonExceeded(detail::concat("step: t=", t, " exceeds schedule horizon"));
  const RowSampler& row = sampler.at(t);
  const std::size_t k = state.positions.size();
  if (!coalescing) {
    for (std::size_t a = 0; a < k; ++a)
      if (state.alive[a]) state.positions[a] = row.sample(state.positions[a], rng[a]);
  } else {
    const int n = sampler.size();
    std::vector<int> first(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> next(k);
    for (std::size_t a = 0; a < k; ++a) {
      if (!state.alive[a]) continue;
      auto& f = first[static_cast<std::size_t>(state.positions[a])];
      if (f < 0) {
        f = static_cast<int>(a);
        next[a] = row.sample(state.positions[a], rng[a]);
      } else {
        state.rep[a] = state.rep[static_cast<std::size_t>(f)];
        next[a] = next[static_cast<std::size_t>(f)];
      }
    }
    for (std::size_t a = 0; a < k; ++a)
      if (state.alive[a]) state.positions[a] = next[a];
  }
  state.t = t;
}

/// First t >= 0 at which any walker is at `target`; censored at `horizon`.
inline TrialOutcome sample_hit(const ScheduleSampler& sampler, const std::vector<Vertex>& starts, Vertex target,
                               Time horizon, std::uint64_t seed, long trial) {
  WalkerStreams rng(seed, trial, starts.size());
  auto st = EnsembleState::start(starts);
  auto hit = [&] {
    for (Vertex v : st.positions)
      if (v == target) return true;
    return false;
  };
  while (!hit()) {
    if (st.t >= horizon) return {static_cast<double>(horizon), true};
    step(sampler, st, rng, false);
  }
  return {static_cast<double>(st.t), false};
}

/// First t >= 0 at which the walkers have jointly visited every vertex.
inline TrialOutcome sample_cover(const ScheduleSampler& sampler, const std::vector<Vertex>& starts, Time horizon,
                                 std::uint64_t seed, long trial) {
  const int n = sampler.size();
  WalkerStreams rng(seed, trial, starts.size());
  auto st = EnsembleState::start(starts);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int count = 0;
  auto mark = [&] {
    for (Vertex v : st.positions)
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
      }
  };
  mark();
  while (count < n) {
    if (st.t >= horizon) return {static_cast<double>(horizon), true};
    step(sampler, st, rng, false);
    mark();
  }
  return {static_cast<double>(st.t), false};
}

/// min{t >= 0 : X_t(1) = X_t(2)} for two independent walkers.
inline TrialOutcome sample_meet(const ScheduleSampler& sampler, Vertex a, Vertex b, Time horizon,
                                std::uint64_t seed, long trial) {
  WalkerStreams rng(seed, trial, 2);
  auto st = EnsembleState::start({a, b});
  while (st.positions[0] != st.positions[1]) {
    if (st.t >= horizon) return {static_cast<double>(horizon), true};
    step(sampler, st, rng, false);
  }
  return {static_cast<double>(st.t), false};
}

/// min{t : |S(C_t)| = 1} for coalescing walkers from `starts`.
inline TrialOutcome sample_coalesce(const ScheduleSampler& sampler, const std::vector<Vertex>& starts, Time horizon,
                                    std::uint64_t seed, long trial) {
  const int n = sampler.size();
  WalkerStreams rng(seed, trial, starts.size());
  auto st = EnsembleState::start(starts);
  while (st.distinct_positions(n) > 1) {
    if (st.t >= horizon) return {static_cast<double>(horizon), true};
    step(sampler, st, rng, true);
  }
  return {static_cast<double>(st.t), false};
}

struct SimOptions {
  Time horizon = 100000;
  long trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
};

inline EstimateReport simulate_hit(const ChainSchedule& s, const std::vector<Vertex>& starts, Vertex target,
                                   const SimOptions& o) {
  detail::require_starts(s.size(), starts, "simulate_hit");
  require_vertex(s.size(), target, "simulate_hit");
  const ScheduleSampler sampler(s);
  sampler.require_horizon(o.horizon, "simulate_hit");
  return summarize(run_trials<TrialOutcome>(o.trials, o.threads, [&](long j) {
    return sample_hit(sampler, starts, target, o.horizon, o.seed, j);
  }));
}

inline EstimateReport simulate_cover(const ChainSchedule& s, const std::vector<Vertex>& starts, const SimOptions& o) {
  detail::require_starts(s.size(), starts, "simulate_cover");
  const ScheduleSampler sampler(s);
  sampler.require_horizon(o.horizon, "simulate_cover");
  return summarize(run_trials<TrialOutcome>(o.trials, o.threads, [&](long j) {
    return sample_cover(sampler, starts, o.horizon, o.seed, j);
  }));
}

inline EstimateReport simulate_meet(const ChainSchedule& s, Vertex a, Vertex b, const SimOptions& o) {
  require_vertex(s.size(), a, "simulate_meet");
  require_vertex(s.size(), b, "simulate_meet");
  const ScheduleSampler sampler(s);
  sampler.require_horizon(o.horizon, "simulate_meet");
  return summarize(run_trials<TrialOutcome>(o.trials, o.threads, [&](long j) {
    return sample_meet(sampler, a, b, o.horizon, o.seed, j);
  }));
}

/// One walker per vertex. Other starting configurations are outside the coalescing-time
/// definition and need `allow_custom_starts`.
inline EstimateReport simulate_coalesce(const ChainSchedule& s, const SimOptions& o,
                                        const std::vector<Vertex>& custom_starts = {},
                                        bool allow_custom_starts = false) {
  std::vector<Vertex> starts;
  if (!custom_starts.empty()) {
    if (!allow_custom_starts)
      throw InvalidInput("simulate_coalesce: custom starts require allow_custom_starts (non-standard definition)");
    detail::require_starts(s.size(), custom_starts, "simulate_coalesce");
    starts = custom_starts;
  } else {
    for (int v = 0; v < s.size(); ++v) starts.push_back(v);
  }
  const ScheduleSampler sampler(s);
  sampler.require_horizon(o.horizon, "simulate_coalesce");
  return summarize(run_trials<TrialOutcome>(o.trials, o.threads, [&](long j) {
    return sample_coalesce(sampler, starts, o.horizon, o.seed, j);
  }));
}

/// Starting vertices drawn from a distribution, one stream per trial.
inline std::vector<Vertex> sample_starts(const ProbabilityVector& mu, std::size_t k, std::uint64_t seed, long trial) {
  RngStream rng(seed, static_cast<std::uint64_t>(trial), 0, stream_tag::start);
  std::vector<Vertex> out(k);
  for (auto& v : out) {
    double x = rng.uniform();
    v = mu.size() - 1;
    for (int i = 0; i < mu.size(); ++i) {
      x -= mu[i];
      if (x < 0.0) {
        v = i;
        break;
      }
    }
  }
  return out;
}

}  // namespace dynwalk
