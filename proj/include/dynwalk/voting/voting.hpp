#pragma once

#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/sim/estimate.hpp"
#include "dynwalk/sim/sampler.hpp"
#include "dynwalk/sim/walks.hpp"

#include <cmath>
#include <vector>

namespace dynwalk {

using Opinion = int;

struct VotingState {
  Time t = 0;
  std::vector<Opinion> opinions;
  std::vector<Opinion> scratch;  // previous round, reused between steps

  [[nodiscard]] bool consensus() const {
    for (Opinion o : opinions)
      if (o != opinions.front()) return false;
    return true;
  }
};

/// Synchronous pull update: every vertex samples a vertex from its row and copies that vertex's
/// previous opinion.
inline void vote_step(const RowSampler& row, VotingState& state, RngStream& rng) {
  state.scratch.swap(state.opinions);
  const auto& prev = state.scratch;
  state.opinions.resize(prev.size());
  for (std::size_t u = 0; u < prev.size(); ++u)
    state.opinions[u] = prev[static_cast<std::size_t>(row.sample(static_cast<Vertex>(u), rng))];
  ++state.t;
}

inline void vote_step(const StochasticMatrix& p, VotingState& state, RngStream& rng) {
  require_same_size(p.size(), static_cast<int>(state.opinions.size()), "vote_step");
  vote_step(RowSampler(p), state, rng);
}

/// One voting trajectory until consensus or the horizon; one stream per trial.
inline VotingState run_vote(const ScheduleSampler& sampler, const std::vector<Opinion>& initial, Time horizon,
                            std::uint64_t seed, long trial) {
  RngStream rng(seed, static_cast<std::uint64_t>(trial), 0, stream_tag::vote);
  VotingState st{0, initial, {}};
  while (!st.consensus() && st.t < horizon) vote_step(sampler.at(st.t + 1), st, rng);
  return st;
}

inline EstimateReport simulate_consensus(const ChainSchedule& s, const std::vector<Opinion>& initial,
                                         const SimOptions& o) {
  require_same_size(s.size(), static_cast<int>(initial.size()), "simulate_consensus");
  const ScheduleSampler sampler(s);
  sampler.require_horizon(o.horizon, "simulate_consensus");
  return summarize(run_trials<TrialOutcome>(o.trials, o.threads, [&](long j) {
    const auto st = run_vote(sampler, initial, o.horizon, o.seed, j);
    return TrialOutcome{static_cast<double>(st.t), !st.consensus()};
  }));
}

struct WinReport {
  EstimateReport frequency;  // indicator of final consensus on sigma
  double predicted = 0.0;    // sum of pi over vertices initially holding sigma
  double ci99_lo = 0.0;
  double ci99_hi = 0.0;

  [[nodiscard]] bool brackets_prediction() const { return ci99_lo <= predicted && predicted <= ci99_hi; }
};

inline constexpr double kMaxWinCensoring = 0.001;

/// Frequency of consensus on sigma, compared with pi(V_sigma). Requires a lazy schedule reversible
/// w.r.t. a declared common pi.
inline WinReport winning_probability(const ChainSchedule& s, const std::vector<Opinion>& initial, Opinion sigma,
                                     const SimOptions& o) {
  require_same_size(s.size(), static_cast<int>(initial.size()), "winning_probability");
  if (!s.declared_pi())
    throw InvalidInput("winning_probability: schedule must declare a common stationary distribution");
  if (!s.all_lazy()) throw InvalidInput("winning_probability: schedule must be lazy");
  const auto& pi = *s.declared_pi();
  const ScheduleSampler sampler(s);
  sampler.require_horizon(o.horizon, "winning_probability");
  const auto outcomes = run_trials<TrialOutcome>(o.trials, o.threads, [&](long j) {
    const auto st = run_vote(sampler, initial, o.horizon, o.seed, j);
    const bool done = st.consensus();
    return TrialOutcome{done && st.opinions.front() == sigma ? 1.0 : 0.0, !done};
  });
  WinReport r;
  r.frequency = summarize(outcomes);
  if (r.frequency.censored_fraction() > kMaxWinCensoring)
    throw Error(detail::concat("winning_probability: ", r.frequency.censored_count, " of ", r.frequency.trials,
                               " trials did not reach consensus by t=", o.horizon,
                               "; increase the horizon so censoring stays below 0.1%"));
  for (std::size_t v = 0; v < initial.size(); ++v)
    if (initial[v] == sigma) r.predicted += pi[static_cast<Vertex>(v)];
  r.ci99_lo = r.frequency.mean - kZ99 * r.frequency.std_err;
  r.ci99_hi = r.frequency.mean + kZ99 * r.frequency.std_err;
  return r;
}

}  // namespace dynwalk
