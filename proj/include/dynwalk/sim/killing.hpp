#pragma once

#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/sim/estimate.hpp"
#include "dynwalk/sim/walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace dynwalk {

/// Walker indices below are 1-based, as in the killing construction: class i holds walkers
/// 2^i <= b < 2^{i+1}. Walker b corresponds to position b-1 of an ensemble.
inline int walker_class(int b) {
  int i = 0;
  while ((2 << i) <= b) ++i;
  return i;
}

inline int ceil_log2(int n) {
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

/// Allowed-killings list A_t. Built either from the level recursion
/// L_ell = t_sep, L_i = L_{i+1} + ceil(K t_HIT / 2^i), or from an explicit list of
/// (from, to, killer, victim) entries (times inclusive).
class KillingSchedule {
 public:
  struct Entry {
    Time from = 0;
    Time to = 0;
    int killer = 0;
    int victim = 0;
  };

  static KillingSchedule from_levels(int n, Time t_sep, double t_HIT, double K) {
    detail::require(n >= 1, "killing schedule: n must be >= 1");
    detail::require(t_sep >= 0, "killing schedule: t_sep must be finite and >= 0");
    detail::require(std::isfinite(t_HIT) && t_HIT >= 0.0, "killing schedule: t_HIT must be finite and >= 0");
    detail::require(K > 0.0, "killing schedule: K must be > 0");
    KillingSchedule ks;
    ks.n_ = n;
    ks.ell_ = ceil_log2(n);
    ks.K_ = K;
    ks.levels_.assign(static_cast<std::size_t>(ks.ell_) + 1, 0);
    ks.levels_[static_cast<std::size_t>(ks.ell_)] = t_sep;
    for (int i = ks.ell_ - 1; i >= 0; --i)
      ks.levels_[static_cast<std::size_t>(i)] =
          ks.levels_[static_cast<std::size_t>(i) + 1] + static_cast<Time>(std::ceil(K * t_HIT / std::ldexp(1.0, i)));
    const double bound = static_cast<double>(t_sep) + std::log2(static_cast<double>(n)) + 2.0 * K * t_HIT;
    if (static_cast<double>(ks.L0()) > bound + 1e-9)
      throw Error(detail::concat("killing schedule: L_0=", ks.L0(), " exceeds t_sep + log2 n + 2 K t_HIT = ", bound));
    return ks;
  }

  static KillingSchedule from_summary(const ScheduleSummary& s, int n, double K) {
    if (!s.t_sep) throw InvalidInput("killing schedule: separation time not found within the search limit");
    return from_levels(n, *s.t_sep, s.t_HIT, K);
  }

  static KillingSchedule explicit_list(int n, std::vector<Entry> entries) {
    KillingSchedule ks;
    ks.n_ = n;
    ks.ell_ = ceil_log2(n);
    for (const auto& e : entries) {
      detail::require(e.killer >= 1 && e.killer <= n && e.victim >= 1 && e.victim <= n,
                      "killing schedule: walker index out of range");
      detail::require(e.killer < e.victim, "killing schedule: killer must have the smaller index");
      detail::require(e.from <= e.to, "killing schedule: empty time window");
    }
    ks.entries_ = std::move(entries);
    ks.explicit_ = true;
    return ks;
  }

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] int ell() const noexcept { return ell_; }
  [[nodiscard]] double K() const noexcept { return K_; }
  [[nodiscard]] bool is_explicit() const noexcept { return explicit_; }
  /// L_i for i = 0..ell.
  [[nodiscard]] Time level(int i) const { return levels_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] Time L0() const { return levels_.empty() ? 0 : levels_.front(); }

  /// Level i with L_{i+1} < t <= L_i, or -1 outside every window.
  [[nodiscard]] int window(Time t) const {
    for (int i = 0; i < ell_; ++i)
      if (levels_[static_cast<std::size_t>(i) + 1] < t && t <= levels_[static_cast<std::size_t>(i)]) return i;
    return -1;
  }

  [[nodiscard]] bool allows(Time t, int killer, int victim) const {
    if (explicit_) {
      for (const auto& e : entries_)
        if (e.killer == killer && e.victim == victim && e.from <= t && t <= e.to) return true;
      return false;
    }
    const int i = window(t);
    if (i < 0) return false;
    return (1 << i) <= killer && killer < (2 << i) && victim >= (2 << i);
  }

  /// All pairs (killer, victim) of A_t, sorted by victim then killer.
  [[nodiscard]] std::vector<std::pair<int, int>> pairs(Time t) const {
    std::vector<std::pair<int, int>> out;
    if (explicit_) {
      for (const auto& e : entries_)
        if (e.from <= t && t <= e.to) out.emplace_back(e.killer, e.victim);
    } else {
      const int i = window(t);
      if (i < 0) return out;
      for (int a = 2 << i; a <= n_; ++a)
        for (int b = 1 << i; b < (2 << i) && b < a; ++b) out.emplace_back(b, a);
    }
    std::sort(out.begin(), out.end(), [](auto x, auto y) { return x.second != y.second ? x.second < y.second : x.first < y.first; });
    return out;
  }

 private:
  int n_ = 0;
  int ell_ = 0;
  double K_ = 0.0;
  std::vector<Time> levels_;
  std::vector<Entry> entries_;
  bool explicit_ = false;
};

/// traj[t][a] for t = 0..H.
using Trajectories = std::vector<std::vector<Vertex>>;

/// Independent trajectories of walkers from `starts` over t = 0..horizon.
inline Trajectories independent_trajectories(const ScheduleSampler& sampler, const std::vector<Vertex>& starts,
                                             Time horizon, std::uint64_t seed, long trial) {
  WalkerStreams rng(seed, trial, starts.size());
  auto st = EnsembleState::start(starts);
  Trajectories out;
  out.reserve(static_cast<std::size_t>(horizon) + 1);
  out.push_back(st.positions);
  for (Time t = 1; t <= horizon; ++t) {
    step(sampler, st, rng, false);
    out.push_back(st.positions);
  }
  return out;
}

/// Coalescing trajectories built from independent ones: an unmerged walker follows its own path,
/// a merged walker follows its representative.
inline Trajectories coalesce_trajectories(const Trajectories& x, int n) {
  Trajectories c = x;
  if (x.empty()) return c;
  const std::size_t k = x.front().size();
  std::vector<int> rep(k);
  for (std::size_t a = 0; a < k; ++a) rep[a] = static_cast<int>(a);
  for (std::size_t t = 0; t < x.size(); ++t) {
    for (std::size_t a = 0; a < k; ++a) c[t][a] = x[t][static_cast<std::size_t>(rep[a])];
    // Co-location at time t merges into the smallest index from t+1 on.
    std::vector<int> first(static_cast<std::size_t>(n), -1);
    for (std::size_t a = 0; a < k; ++a) {
      auto& f = first[static_cast<std::size_t>(c[t][a])];
      if (f < 0)
        f = static_cast<int>(a);
      else
        rep[a] = rep[static_cast<std::size_t>(f)];
    }
  }
  return c;
}

/// |S(Y_t)| (ks == nullptr: every smaller index kills) or |S(Z_t)| (kills restricted to A_t),
/// driven by the given trajectories, for t = 0..H.
inline std::vector<int> killed_alive_counts(const Trajectories& x, const KillingSchedule* ks, int n) {
  std::vector<int> out;
  if (x.empty()) return out;
  const std::size_t k = x.front().size();
  if (ks && ks->size() != static_cast<int>(k))
    throw InvalidInput(detail::concat("killed walks: killing schedule is for n=", ks->size(), " walkers, got ", k));
  std::vector<char> alive(k, 1);
  int count = static_cast<int>(k);
  std::vector<int> first(static_cast<std::size_t>(n), -1);
  for (std::size_t t = 0; t < x.size(); ++t) {
    const auto& pos = x[t];
    if (!ks) {
      std::fill(first.begin(), first.end(), -1);
      for (std::size_t a = 0; a < k; ++a) {
        if (!alive[a]) continue;
        auto& f = first[static_cast<std::size_t>(pos[a])];
        if (f < 0)
          f = static_cast<int>(a);
        else {
          alive[a] = 0;
          --count;
        }
      }
    } else {
      for (auto [b, a] : ks->pairs(static_cast<Time>(t))) {
        const auto ia = static_cast<std::size_t>(a - 1);
        const auto ib = static_cast<std::size_t>(b - 1);
        if (alive[ia] && alive[ib] && pos[ia] == pos[ib]) {
          alive[ia] = 0;
          --count;
        }
      }
    }
    out.push_back(count);
  }
  return out;
}

enum class KillMode { Killings, AllowedKillings };
enum class TrajectorySource { Independent, Coalesced };

struct KilledReport {
  long trials = 0;
  std::vector<double> mean_alive;  // per t = 0..H
  long survivors_at_horizon = 0;   // trials with at least two walkers alive at H
  long coupling_checks = 0;
  long coupling_violations = 0;    // t with |S(Y_t)| > |S(Z_t)| or |S(Y_t)| != |S(C_t)| on coalesced paths
};

/// Simulates the killed constructions from one walker per vertex (or `starts`).
inline KilledReport simulate_killed(const ChainSchedule& s, KillMode mode, const KillingSchedule* ks,
                                    TrajectorySource source, const SimOptions& o,
                                    std::vector<Vertex> starts = {}) {
  const int n = s.size();
  if (starts.empty())
    for (int v = 0; v < n; ++v) starts.push_back(v);
  detail::require_starts(n, starts, "simulate_killed");
  if (mode == KillMode::AllowedKillings && !ks)
    throw InvalidInput("simulate_killed: allowed-killings mode requires a killing schedule");
  if (ks && ks->size() != static_cast<int>(starts.size()))
    throw InvalidInput(detail::concat("simulate_killed: killing schedule has n=", ks->size(), " but ",
                                      starts.size(), " walkers"));
  const ScheduleSampler sampler(s);
  sampler.require_horizon(o.horizon, "simulate_killed");
  struct One {
    std::vector<int> alive;
    long checks = 0;
    long violations = 0;
  };
  const auto runs = run_trials<One>(o.trials, o.threads, [&](long j) {
    One r;
    const auto x = independent_trajectories(sampler, starts, o.horizon, o.seed, j);
    const auto c = coalesce_trajectories(x, n);
    const auto& drive = source == TrajectorySource::Independent ? x : c;
    r.alive = killed_alive_counts(drive, mode == KillMode::Killings ? nullptr : ks, n);
    if (ks) {
      const auto y = killed_alive_counts(c, nullptr, n);
      const auto z = killed_alive_counts(c, ks, n);
      for (std::size_t t = 0; t < c.size(); ++t) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        int distinct = 0;
        for (Vertex v : c[t])
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            ++distinct;
          }
        ++r.checks;
        if (y[t] > z[t] || y[t] != distinct) ++r.violations;
      }
    }
    return r;
  });
  KilledReport rep;
  rep.trials = o.trials;
  rep.mean_alive.assign(static_cast<std::size_t>(o.horizon) + 1, 0.0);
  for (const auto& r : runs) {
    for (std::size_t t = 0; t < r.alive.size(); ++t) rep.mean_alive[t] += r.alive[t];
    if (!r.alive.empty() && r.alive.back() >= 2) ++rep.survivors_at_horizon;
    rep.coupling_checks += r.checks;
    rep.coupling_violations += r.violations;
  }
  if (o.trials > 0)
    for (auto& m : rep.mean_alive) m /= static_cast<double>(o.trials);
  return rep;
}

/// Event on independent walks: some walker a >= 2 avoids every killer b of a lower class
/// throughout b's window (L_{i+1}, L_i], i = class(b), with a >= 2^{i+1}.
inline bool independent_survival_event(const Trajectories& x, const KillingSchedule& ks) {
  const int k = static_cast<int>(x.front().size());
  for (int a = 2; a <= k; ++a) {
    bool survives = true;
    for (int b = 1; b < a && survives; ++b) {
      const int i = walker_class(b);
      if (a < (2 << i)) continue;
      const Time lo = ks.level(i + 1) + 1;
      const Time hi = ks.level(i);
      for (Time t = lo; t <= hi; ++t)
        if (x[static_cast<std::size_t>(t)][static_cast<std::size_t>(a - 1)] ==
            x[static_cast<std::size_t>(t)][static_cast<std::size_t>(b - 1)]) {
          survives = false;
          break;
        }
    }
    if (survives) return true;
  }
  return false;
}

struct CoalMultReport {
  long trials = 0;
  Time L0 = 0;
  long coalescence_late = 0;   // trials with tau_coal > L_0
  long independent_event = 0;  // trials where the independent survival event occurs
  [[nodiscard]] double lhs() const { return trials ? static_cast<double>(coalescence_late) / trials : 0.0; }
  [[nodiscard]] double rhs() const { return trials ? static_cast<double>(independent_event) / trials : 0.0; }
  /// Combined standard error of the two frequencies (independent samples).
  [[nodiscard]] double std_err() const {
    if (!trials) return 0.0;
    const double p = lhs(), q = rhs();
    return std::sqrt((p * (1 - p) + q * (1 - q)) / static_cast<double>(trials));
  }
};

/// Estimates both sides of Pr[tau_coal > L_0] <= Pr[independent survival event] with independent
/// samples for each side.
inline CoalMultReport coal_mult_check(const ChainSchedule& s, const KillingSchedule& ks, const SimOptions& o) {
  const int n = s.size();
  if (ks.size() != n) throw InvalidInput("coal_mult_check: killing schedule size differs from n");
  const ScheduleSampler sampler(s);
  const Time horizon = ks.L0();
  sampler.require_horizon(horizon, "coal_mult_check");
  std::vector<Vertex> starts;
  for (int v = 0; v < n; ++v) starts.push_back(v);
  const auto lhs = run_trials<char>(o.trials, o.threads, [&](long j) -> char {
    return sample_coalesce(sampler, starts, horizon, o.seed, j).censored ? 1 : 0;
  });
  const std::uint64_t other = o.seed ^ 0x9e3779b97f4a7c15ULL;
  const auto rhs = run_trials<char>(o.trials, o.threads, [&](long j) -> char {
    return independent_survival_event(independent_trajectories(sampler, starts, horizon, other, j), ks) ? 1 : 0;
  });
  CoalMultReport r;
  r.trials = o.trials;
  r.L0 = horizon;
  for (char c : lhs) r.coalescence_late += c;
  for (char c : rhs) r.independent_event += c;
  return r;
}

}  // namespace dynwalk
