#pragma once

#include "dynwalk/chain/hitting.hpp"
#include "dynwalk/chain/spectral.hpp"
#include "dynwalk/chain/types.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dynwalk {

enum class ScheduleKind { Static, Cyclic, Generated, Prefixed };

inline const char* to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Static:
      return "static";
    case ScheduleKind::Cyclic:
      return "cyclic";
    case ScheduleKind::Generated:
      return "generated";
    case ScheduleKind::Prefixed:
      return "prefixed";
  }
  return "?";
}

/// The sequence t -> P_t, t >= 1, stored as a finite prefix followed by a repeating cycle.
/// A generated schedule has no cycle and ends at its horizon.
class ChainSchedule {
 public:
  ChainSchedule() = default;

  static ChainSchedule static_schedule(StochasticMatrix p, std::optional<ProbabilityVector> pi = std::nullopt) {
    return ChainSchedule(ScheduleKind::Static, {std::move(p)}, {}, {0}, std::move(pi));
  }

  static ChainSchedule cyclic(std::vector<StochasticMatrix> list,
                              std::optional<ProbabilityVector> pi = std::nullopt) {
    detail::require(!list.empty(), "cyclic schedule: empty matrix list");
    std::vector<int> cycle(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) cycle[i] = static_cast<int>(i);
    return ChainSchedule(ScheduleKind::Cyclic, std::move(list), {}, std::move(cycle), std::move(pi));
  }

  /// Finite schedule P_1..P_H; queries past H throw HorizonExceeded.
  static ChainSchedule generated(std::vector<StochasticMatrix> list, std::uint64_t seed,
                                 std::optional<ProbabilityVector> pi = std::nullopt) {
    detail::require(!list.empty(), "generated schedule: horizon must be >= 1");
    std::vector<int> prefix(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) prefix[i] = static_cast<int>(i);
    ChainSchedule s(ScheduleKind::Generated, std::move(list), std::move(prefix), {}, std::move(pi));
    s.seed_ = seed;
    return s;
  }

  /// Materializes P_t = gen(t) for t = 1..horizon.
  static ChainSchedule generated(const std::function<StochasticMatrix(Time)>& gen, Time horizon,
                                 std::uint64_t seed, std::optional<ProbabilityVector> pi = std::nullopt) {
    detail::require(horizon >= 1, "generated schedule: horizon must be >= 1");
    std::vector<StochasticMatrix> list;
    list.reserve(static_cast<std::size_t>(horizon));
    for (Time t = 1; t <= horizon; ++t) list.push_back(gen(t));
    return generated(std::move(list), seed, std::move(pi));
  }

  /// prefix[0], prefix[1], ..., then cycle repeated forever.
  static ChainSchedule prefixed(std::vector<StochasticMatrix> prefix, std::vector<StochasticMatrix> cycle,
                                std::optional<ProbabilityVector> pi = std::nullopt) {
    detail::require(!cycle.empty(), "prefixed schedule: cycle must be nonempty");
    std::vector<StochasticMatrix> all;
    std::vector<int> pi_idx;
    std::vector<int> cy_idx;
    for (auto& m : prefix) {
      pi_idx.push_back(static_cast<int>(all.size()));
      all.push_back(std::move(m));
    }
    for (auto& m : cycle) {
      cy_idx.push_back(static_cast<int>(all.size()));
      all.push_back(std::move(m));
    }
    return ChainSchedule(ScheduleKind::Prefixed, std::move(all), std::move(pi_idx), std::move(cy_idx),
                         std::move(pi));
  }

  /// Indexed construction over a pool of distinct matrices; used by graph schedules to avoid duplicates.
  static ChainSchedule indexed(ScheduleKind kind, std::vector<StochasticMatrix> pool, std::vector<int> prefix,
                               std::vector<int> cycle, std::optional<ProbabilityVector> pi = std::nullopt,
                               std::optional<std::uint64_t> seed = std::nullopt) {
    ChainSchedule s(kind, std::move(pool), std::move(prefix), std::move(cycle), std::move(pi));
    s.seed_ = seed;
    return s;
  }

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] ScheduleKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::optional<ProbabilityVector>& declared_pi() const noexcept { return pi_; }
  [[nodiscard]] std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  [[nodiscard]] Time prefix_length() const noexcept { return static_cast<Time>(prefix_.size()); }

  /// Length of the repeating part; nullopt for finite schedules.
  [[nodiscard]] std::optional<Time> period() const {
    if (cycle_.empty()) return std::nullopt;
    return static_cast<Time>(cycle_.size());
  }

  /// Last valid t; nullopt when the schedule is infinite.
  [[nodiscard]] std::optional<Time> horizon() const {
    if (!cycle_.empty()) return std::nullopt;
    return static_cast<Time>(prefix_.size());
  }

  [[nodiscard]] bool within_horizon(Time t) const {
    return t >= 1 && (!cycle_.empty() || t <= static_cast<Time>(prefix_.size()));
  }

  /// Index of P_t in distinct_matrices().
  [[nodiscard]] int index_at(Time t) const {
    if (t < 1) throw InvalidInput(detail::concat("schedule: time must be >= 1, got ", t));
    const auto pl = static_cast<Time>(prefix_.size());
    if (t <= pl) return prefix_[static_cast<std::size_t>(t - 1)];
    if (cycle_.empty())
      throw HorizonExceeded(detail::concat("schedule: t=", t, " exceeds horizon ", pl));
    const auto c = static_cast<Time>(cycle_.size());
    return cycle_[static_cast<std::size_t>((t - pl - 1) % c)];
  }

  [[nodiscard]] const StochasticMatrix& at(Time t) const {
    return (*mats_)[static_cast<std::size_t>(index_at(t))];
  }

  [[nodiscard]] const std::vector<StochasticMatrix>& distinct_matrices() const { return *mats_; }

  /// Indices of matrices used at t = 1..prefix+period (or 1..horizon).
  [[nodiscard]] std::vector<int> used_indices() const {
    std::vector<char> used(mats_->size(), 0);
    for (int i : prefix_) used[static_cast<std::size_t>(i)] = 1;
    for (int i : cycle_) used[static_cast<std::size_t>(i)] = 1;
    std::vector<int> out;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) out.push_back(static_cast<int>(i));
    return out;
  }

  /// Number of shifts s needed to cover sup_{s >= 0}: prefix + one period, or the horizon.
  [[nodiscard]] Time shift_count() const {
    return static_cast<Time>(prefix_.size()) + static_cast<Time>(cycle_.size());
  }

  [[nodiscard]] bool all_lazy() const {
    for (int i : used_indices())
      if (!(*mats_)[static_cast<std::size_t>(i)].is_lazy()) return false;
    return true;
  }

  friend bool operator==(const ChainSchedule& a, const ChainSchedule& b) {
    if (a.n_ != b.n_ || a.kind_ != b.kind_ || a.prefix_.size() != b.prefix_.size() ||
        a.cycle_.size() != b.cycle_.size() || a.pi_.has_value() != b.pi_.has_value())
      return false;
    if (a.pi_ && !(*a.pi_ == *b.pi_)) return false;
    for (std::size_t i = 0; i < a.prefix_.size(); ++i)
      if (!(a.mat(a.prefix_[i]) == b.mat(b.prefix_[i]))) return false;
    for (std::size_t i = 0; i < a.cycle_.size(); ++i)
      if (!(a.mat(a.cycle_[i]) == b.mat(b.cycle_[i]))) return false;
    return true;
  }

 private:
  ChainSchedule(ScheduleKind kind, std::vector<StochasticMatrix> pool, std::vector<int> prefix,
                std::vector<int> cycle, std::optional<ProbabilityVector> pi)
      : kind_(kind),
        mats_(std::make_shared<const std::vector<StochasticMatrix>>(std::move(pool))),
        prefix_(std::move(prefix)),
        cycle_(std::move(cycle)),
        pi_(std::move(pi)) {
    detail::require(!mats_->empty(), "schedule: no matrices");
    detail::require(!prefix_.empty() || !cycle_.empty(), "schedule: empty sequence");
    n_ = mats_->front().size();
    for (const auto& m : *mats_)
      if (m.size() != n_)
        throw InvalidInput(detail::concat("schedule: matrices disagree on n (", n_, " vs ", m.size(), ")"));
    for (int i : prefix_) detail::require(i >= 0 && i < static_cast<int>(mats_->size()), "schedule: bad index");
    for (int i : cycle_) detail::require(i >= 0 && i < static_cast<int>(mats_->size()), "schedule: bad index");
    if (pi_) {
      require_same_size(pi_->size(), n_, "schedule");
      if (!pi_->positive()) throw InvalidInput("schedule: declared pi must be positive");
      for (int i : used_indices()) {
        const double d = reversibility_defect((*mats_)[static_cast<std::size_t>(i)], *pi_);
        if (d > tol::reversibility)
          throw InvalidInput(detail::concat("schedule: matrix ", i,
                                            " violates detailed balance w.r.t. declared pi (defect ", d, ")"));
      }
    }
  }

  [[nodiscard]] const StochasticMatrix& mat(int i) const { return (*mats_)[static_cast<std::size_t>(i)]; }

  ScheduleKind kind_ = ScheduleKind::Static;
  int n_ = 0;
  std::shared_ptr<const std::vector<StochasticMatrix>> mats_;
  std::vector<int> prefix_;
  std::vector<int> cycle_;
  std::optional<ProbabilityVector> pi_;
  std::optional<std::uint64_t> seed_;
};

/// P_{[a,b]} = P_a P_{a+1} ... P_b.
inline StochasticMatrix product(const ChainSchedule& s, Time a, Time b) {
  if (a < 1 || a > b)
    throw InvalidInput(detail::concat("product: need 1 <= a <= b, got a=", a, " b=", b));
  if (!s.within_horizon(b))
    throw HorizonExceeded(detail::concat("product: b=", b, " exceeds horizon ", *s.horizon()));
  Matrix m = s.at(a).matrix();
  for (Time t = a + 1; t <= b; ++t) m = m * s.at(t).matrix();
  // Renormalize rows to absorb round-off so the result passes the stochastic invariant.
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m.row(i) = m.row(i).cwiseMax(0.0);
    m.row(i) /= m.row(i).sum();
  }
  return StochasticMatrix(std::move(m));
}

namespace detail {

enum class MixCriterion { Separation, Uniform };

inline double mixing_distance(const Matrix& m, const Vector& pi, MixCriterion c) {
  double worst = 0.0;
  for (Eigen::Index u = 0; u < m.rows(); ++u)
    for (Eigen::Index v = 0; v < m.cols(); ++v) {
      const double r = m(u, v) / pi(v);
      worst = std::max(worst, c == MixCriterion::Separation ? 1.0 - r : std::abs(r - 1.0));
    }
  return worst;
}

// Least t <= t_max with sup over shifts of the distance of P_{[s+1,s+t]} at most eps.
inline std::optional<Time> mixing_search(const ChainSchedule& s, const ProbabilityVector& pi, double eps,
                                         Time t_max, MixCriterion c) {
  if (t_max < 1) throw InvalidInput(concat("mixing time search: T_max must be >= 1, got ", t_max));
  if (!(eps >= 0.0)) throw InvalidInput("mixing time search: eps must be >= 0");
  require_same_size(s.size(), pi.size(), "mixing time search");
  if (!pi.positive()) throw InvalidInput("mixing time search: pi must be positive");
  const int n = s.size();
  const Vector& p = pi.values();
  if (mixing_distance(Matrix::Identity(n, n), p, c) <= eps) return Time{0};
  const auto hz = s.horizon();
  const Time shifts = s.shift_count();
  std::vector<Matrix> prods(static_cast<std::size_t>(shifts), Matrix::Identity(n, n));
  for (Time t = 1; t <= t_max; ++t) {
    if (hz && t > *hz) return std::nullopt;
    bool ok = true;
    for (Time sh = 0; sh < shifts; ++sh) {
      if (hz && sh + t > *hz) break;
      auto& m = prods[static_cast<std::size_t>(sh)];
      m = m * s.at(sh + t).matrix();
      if (ok && mixing_distance(m, p, c) > eps) ok = false;
    }
    if (ok) return t;
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<Time> separation_time(const ChainSchedule& s, const ProbabilityVector& pi, double eps,
                                           Time t_max) {
  return detail::mixing_search(s, pi, eps, t_max, detail::MixCriterion::Separation);
}

inline std::optional<Time> uniform_mixing_time(const ChainSchedule& s, const ProbabilityVector& pi,
                                               double eps, Time t_max) {
  return detail::mixing_search(s, pi, eps, t_max, detail::MixCriterion::Uniform);
}

/// Probability that a walk started from `start` avoids w_t at every time t = 0..T,
/// where T = targets.size() - 1.
inline double non_hit_probability(const ChainSchedule& s, const Vector& start, const std::vector<Vertex>& targets) {
  if (targets.empty()) throw InvalidInput("non_hit_probability: need T >= 0 (at least one target)");
  require_same_size(s.size(), static_cast<int>(start.size()), "non_hit_probability");
  const auto big_t = static_cast<Time>(targets.size()) - 1;
  if (big_t >= 1 && !s.within_horizon(big_t))
    throw HorizonExceeded(detail::concat("non_hit_probability: T=", big_t, " exceeds horizon"));
  for (Vertex w : targets) require_vertex(s.size(), w, "non_hit_probability");
  RowVector x = start.transpose();
  x(targets[0]) = 0.0;
  for (Time t = 1; t <= big_t; ++t) {
    x = x * s.at(t).matrix();
    x(targets[static_cast<std::size_t>(t)]) = 0.0;
  }
  return std::clamp(x.sum(), 0.0, 1.0);
}

inline double non_hit_probability(const ChainSchedule& s, const ProbabilityVector& start, Vertex w, Time big_t) {
  if (big_t < 0) throw InvalidInput("non_hit_probability: T must be >= 0");
  return non_hit_probability(s, start.values(), std::vector<Vertex>(static_cast<std::size_t>(big_t + 1), w));
}

inline double non_hit_probability(const ChainSchedule& s, const ProbabilityVector& start,
                                  const std::vector<Vertex>& targets) {
  return non_hit_probability(s, start.values(), targets);
}

struct SnapshotDiagnostics {
  int index = 0;  // position in distinct_matrices()
  bool lazy = false;
  bool irreducible = false;
  double t_hit = kInfinity;
  double t_rel = kInfinity;
  double lambda_star = 1.0;
};

struct ScheduleSummary {
  double t_HIT = kInfinity;
  double t_REL = kInfinity;
  std::optional<Time> t_sep;
  std::optional<Time> t_mix_inf;
  Time evaluated_horizon = 0;
  std::vector<SnapshotDiagnostics> snapshots;
};

inline ScheduleSummary schedule_summary(const ChainSchedule& s, const ProbabilityVector& pi, double eps = 0.5,
                                        Time t_max = 10000) {
  ScheduleSummary out;
  out.evaluated_horizon = s.shift_count();
  out.t_HIT = 0.0;
  out.t_REL = 0.0;
  for (int idx : s.used_indices()) {
    const auto& p = s.distinct_matrices()[static_cast<std::size_t>(idx)];
    SnapshotDiagnostics d;
    d.index = idx;
    const auto diag = validate(p);
    d.lazy = diag.lazy;
    d.irreducible = diag.irreducible;
    const auto spec = spectrum(p, pi);
    d.lambda_star = spec.lambda_star;
    d.t_rel = diag.irreducible ? spec.t_rel : kInfinity;
    d.t_hit = diag.irreducible ? t_hit(p) : kInfinity;
    out.t_HIT = std::max(out.t_HIT, d.t_hit);
    out.t_REL = std::max(out.t_REL, d.t_rel);
    out.snapshots.push_back(d);
  }
  out.t_sep = separation_time(s, pi, eps, t_max);
  out.t_mix_inf = uniform_mixing_time(s, pi, eps, t_max);
  return out;
}

}  // namespace dynwalk
