#pragma once

#include "dynwalk/chain/spectral.hpp"
#include "dynwalk/graph/graph.hpp"
#include "dynwalk/graph/kernels.hpp"
#include "dynwalk/sim/rng.hpp"
#include "dynwalk/sim/walks.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace dynwalk {

struct EdgeMarkovianParams {
  int n = 2;
  double p = 0.5;  // 0 -> 1 per step
  double q = 0.5;  // 1 -> 0 per step
  std::uint64_t seed = kDefaultSeed;

  void validate() const {
    detail::require(n >= 2, "edge-markovian: n must be >= 2");
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
      throw InvalidInput(detail::concat("edge-markovian: p=", p, ", q=", q, " must lie in [0,1]"));
  }

  [[nodiscard]] double stationary_density() const {
    detail::require(p + q > 0.0, "edge-markovian: stationary density undefined for p+q=0");
    return p / (p + q);
  }

  /// p/(p+q) >= 32(c+1) ln n / n for the given c.
  [[nodiscard]] bool in_expander_regime(double c) const {
    return p + q > 0.0 && p + q <= 1.0 && stationary_density() >= 32.0 * (c + 1.0) * std::log(n) / n;
  }
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

inline Matrix2 m_matrix(double p, double q) { return {{{1.0 - p, p}, {q, 1.0 - q}}}; }

/// M^t = ([[q,p],[q,p]] + (1-p-q)^t [[p,-p],[-q,q]]) / (p+q).
inline Matrix2 m_power_closed_form(double p, double q, Time t) {
  if (t < 0) throw InvalidInput("m_power_closed_form: t must be >= 0");
  if (!(p + q > 0.0)) throw InvalidInput("m_power_closed_form: p+q must be positive (M is the identity)");
  const double s = p + q;
  const double r = std::pow(1.0 - s, static_cast<double>(t));
  return {{{(q + r * p) / s, (p - r * p) / s}, {(q - r * q) / s, (p + r * q) / s}}};
}

/// Edge indices enumerate pairs {a<b} in lexicographic order.
inline std::size_t edge_index(int n, Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  const auto na = static_cast<std::size_t>(a);
  return na * static_cast<std::size_t>(n) - na * (na + 1) / 2 + static_cast<std::size_t>(b - a - 1);
}

inline std::size_t pair_count(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2; }

/// (Y_t(e)) for all pairs, advanced exactly by sampling each edge's geometric holding times.
/// Holding time in state 0 is Geometric(p), in state 1 Geometric(q); zero rates freeze the edge.
class EdgeMarkovianGraph {
 public:
  EdgeMarkovianGraph(const EdgeMarkovianParams& params, std::vector<char> b0)
      : params_(params), state_(std::move(b0)), rng_(params.seed, 0, 0, stream_tag::edges) {
    params_.validate();
    if (state_.size() != pair_count(params_.n))
      throw InvalidInput(detail::concat("edge-markovian: initial state has ", state_.size(), " entries, expected ",
                                        pair_count(params_.n)));
    next_flip_.resize(state_.size());
    for (std::size_t e = 0; e < state_.size(); ++e) next_flip_[e] = holding(state_[e] != 0);
  }

  static EdgeMarkovianGraph empty(const EdgeMarkovianParams& params) {
    return {params, std::vector<char>(pair_count(params.n), 0)};
  }

  [[nodiscard]] Time time() const { return t_; }
  [[nodiscard]] const std::vector<char>& state() const { return state_; }
  [[nodiscard]] const EdgeMarkovianParams& params() const { return params_; }

  /// Moves to absolute time `target` >= time().
  void advance_to(Time target) {
    if (target < t_) throw InvalidInput(detail::concat("edge-markovian: cannot rewind from ", t_, " to ", target));
    for (std::size_t e = 0; e < state_.size(); ++e) {
      while (next_flip_[e] <= target) {
        state_[e] = state_[e] ? 0 : 1;
        const Time h = holding(state_[e] != 0);
        next_flip_[e] = h == kNever ? kNever : next_flip_[e] + h;
      }
    }
    t_ = target;
  }

  void step() { advance_to(t_ + 1); }

  [[nodiscard]] GraphSnapshot snapshot() const {
    const int n = params_.n;
    std::vector<Edge> edges;
    std::size_t e = 0;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b, ++e)
        if (state_[e]) edges.emplace_back(a, b);
    return GraphSnapshot(n, std::move(edges));
  }

 private:
  static constexpr Time kNever = std::numeric_limits<Time>::max();

  Time holding(bool on) {
    const double rate = on ? params_.q : params_.p;
    if (rate <= 0.0) return kNever;
    if (rate >= 1.0) return 1;
    return 1 + static_cast<Time>(std::geometric_distribution<Time>(rate)(rng_.engine()));
  }

  EdgeMarkovianParams params_;
  std::vector<char> state_;
  std::vector<Time> next_flip_;
  RngStream rng_;
  Time t_ = 0;
};

/// Reference stepper: one Bernoulli draw per edge per step. Used to cross-check EdgeMarkovianGraph.
inline void step_naive(const EdgeMarkovianParams& params, std::vector<char>& state, RngStream& rng) {
  for (auto& y : state) {
    if (y)
      y = rng.bernoulli(params.q) ? 0 : 1;
    else
      y = rng.bernoulli(params.p) ? 1 : 0;
  }
}

inline constexpr double kExpanderC = 8192.0;

/// Window arithmetic: S(l,i) = (l(l-1)/2 + i)(I+J); probes sit at S(l,i-1)+I.
struct IntervalPlan {
  Time I = 1;
  Time J = 0;

  static IntervalPlan from_params(double p, double q, Time J) {
    if (!(p > 0.0)) throw InvalidInput("interval plan: p must be positive");
    if (!(p + q > 0.0 && p + q <= 1.0)) throw InvalidInput("interval plan: need 0 < p+q <= 1");
    if (J < 0) throw InvalidInput("interval plan: J must be >= 0");
    const double num = std::max(1.0, q > 0.0 ? std::log(q / p) : 1.0);
    return {static_cast<Time>(std::ceil(num / (p + q))), J};
  }

  [[nodiscard]] Time S(Time l, Time i) const {
    if (l < 0 || i < 0 || i > l) throw InvalidInput(detail::concat("interval plan: need 0 <= i <= l, got l=", l, ", i=", i));
    return (l * (l - 1) / 2 + i) * (I + J);
  }

  /// Start of the k-th window (0-based) in (l,i) lexicographic order, i = 1..l.
  [[nodiscard]] Time checkpoint(Time k) const {
    Time l = 1;
    while (k >= l) {
      k -= l;
      ++l;
    }
    return S(l, k) + I;
  }
};

struct ProbeSample {
  Time t = 0;
  bool connected = false;
  double lambda_star = 1.0;
  double t_rel = kInfinity;
  [[nodiscard]] bool leq_c() const { return t_rel <= kExpanderC; }
};

struct ProbeReport {
  std::vector<ProbeSample> samples;

  [[nodiscard]] double fraction_leq_c() const {
    if (samples.empty()) return 0.0;
    long ok = 0;
    for (const auto& s : samples) ok += s.leq_c() ? 1 : 0;
    return static_cast<double>(ok) / static_cast<double>(samples.size());
  }
};

inline constexpr int kProbeMaxN = 512;

/// Relaxation time of the lazy Metropolis chain on a snapshot; +inf when disconnected.
inline ProbeSample probe_snapshot(const GraphSnapshot& g, Time t) {
  ProbeSample s;
  s.t = t;
  s.connected = g.connected();
  if (!s.connected) return s;
  const auto sp = spectrum(lazy_metropolis_kernel(g), ProbabilityVector::uniform(g.size()));
  s.lambda_star = sp.lambda_star;
  s.t_rel = sp.t_rel;
  return s;
}

/// Runs the edge chains from b0 and evaluates t_rel(P_LM(G_t)) at the first `count` checkpoints.
inline ProbeReport expander_probe(const EdgeMarkovianParams& params, std::vector<char> b0, const IntervalPlan& plan,
                                  long count) {
  params.validate();
  if (params.n > kProbeMaxN)
    throw BudgetExceeded(detail::concat("expander_probe: n=", params.n, " exceeds ", kProbeMaxN));
  if (count < 0) throw InvalidInput("expander_probe: count must be >= 0");
  ProbeReport r;
  if (count == 0) return r;
  EdgeMarkovianGraph g(params, std::move(b0));
  for (Time k = 0; k < count; ++k) {
    const Time t = plan.checkpoint(k);
    g.advance_to(t);
    r.samples.push_back(probe_snapshot(g.snapshot(), t));
  }
  return r;
}

}  // namespace dynwalk
