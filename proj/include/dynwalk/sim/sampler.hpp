#pragma once

#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/chain/types.hpp"
#include "dynwalk/sim/rng.hpp"

#include <algorithm>
#include <memory>
#include <vector>

namespace dynwalk {

/// Inverse-CDF sampling over the nonzero entries of each row.
class RowSampler {
 public:
  explicit RowSampler(const StochasticMatrix& p) {
    const int n = p.size();
    offsets_.reserve(static_cast<std::size_t>(n) + 1);
    offsets_.push_back(0);
    for (int u = 0; u < n; ++u) {
      double acc = 0.0;
      for (int v = 0; v < n; ++v) {
        const double x = p(u, v);
        if (x <= 0.0) continue;
        acc += x;
        cdf_.push_back(acc);
        target_.push_back(v);
      }
      // Guard the last bucket against round-off so every draw lands in the row's support.
      cdf_.back() = 2.0;
      offsets_.push_back(cdf_.size());
    }
  }

  Vertex sample(Vertex u, double x) const {
    const auto b = offsets_[static_cast<std::size_t>(u)];
    const auto e = offsets_[static_cast<std::size_t>(u) + 1];
    if (e - b == 1) return target_[b];
    if (e - b <= 8) {
      for (auto i = b; i < e; ++i)
        if (x < cdf_[i]) return target_[i];
      return target_[e - 1];
    }
    const auto it = std::upper_bound(cdf_.begin() + static_cast<std::ptrdiff_t>(b),
                                     cdf_.begin() + static_cast<std::ptrdiff_t>(e), x);
    return target_[static_cast<std::size_t>(it - cdf_.begin())];
  }

  Vertex sample(Vertex u, RngStream& rng) const { return sample(u, rng.uniform()); }

 private:
  std::vector<double> cdf_;
  std::vector<Vertex> target_;
  std::vector<std::size_t> offsets_;
};

/// Row samplers for every distinct matrix of a schedule.
class ScheduleSampler {
 public:
  explicit ScheduleSampler(ChainSchedule s) : schedule_(std::move(s)) {
    for (const auto& m : schedule_.distinct_matrices()) samplers_.emplace_back(m);
  }

  [[nodiscard]] const ChainSchedule& schedule() const noexcept { return schedule_; }
  [[nodiscard]] int size() const noexcept { return schedule_.size(); }

  /// Sampler for the step into time t (uses P_t).
  [[nodiscard]] const RowSampler& at(Time t) const {
    return samplers_[static_cast<std::size_t>(schedule_.index_at(t))];
  }

  void require_horizon(Time horizon, const char* op) const {
    if (horizon < 0) throw InvalidInput(detail::concat(op, ": horizon must be >= 0"));
    if (horizon >= 1 && !schedule_.within_horizon(horizon))
      throw HorizonExceeded(detail::concat(op, ": horizon ", horizon, " exceeds schedule horizon ",
                                           *schedule_.horizon()));
  }

 private:
  ChainSchedule schedule_;
  std::vector<RowSampler> samplers_;
};

}  // namespace dynwalk
