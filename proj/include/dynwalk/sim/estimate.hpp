#pragma once

#include "dynwalk/chain/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace dynwalk {

struct TrialOutcome {
  double value = 0.0;
  bool censored = false;
};

struct EstimateReport {
  long trials = 0;
  double mean = 0.0;
  double std_err = 0.0;
  double ci_lo = 0.0;  // mean - 1.96 std_err
  double ci_hi = 0.0;  // mean + 1.96 std_err
  long censored_count = 0;

  [[nodiscard]] double censored_fraction() const {
    return trials > 0 ? static_cast<double>(censored_count) / static_cast<double>(trials) : 0.0;
  }
};

inline constexpr double kZ95 = 1.96;
inline constexpr double kZ99 = 2.5758293035489;

/// Mean and standard error; censored trials contribute their (horizon) value and are counted.
inline EstimateReport summarize(const std::vector<TrialOutcome>& xs) {
  EstimateReport r;
  r.trials = static_cast<long>(xs.size());
  if (xs.empty()) return r;
  double sum = 0.0;
  for (const auto& x : xs) {
    sum += x.value;
    if (x.censored) ++r.censored_count;
  }
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const auto& x : xs) ss += (x.value - r.mean) * (x.value - r.mean);
    r.std_err = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  r.ci_lo = r.mean - kZ95 * r.std_err;
  r.ci_hi = r.mean + kZ95 * r.std_err;
  return r;
}

/// Runs fn(trial) for trial = 0..trials-1 on up to `threads` workers. Each result lands in its
/// trial's slot, so the output does not depend on the worker count.
template <typename T>
std::vector<T> run_trials(long trials, int threads, const std::function<T(long)>& fn) {
  if (trials < 0) throw InvalidInput("run_trials: trials must be >= 0");
  std::vector<T> out(static_cast<std::size_t>(trials));
  const long workers = std::clamp<long>(threads, 1, std::max<long>(1, trials));
  if (workers == 1) {
    for (long i = 0; i < trials; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (long w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (long i = w; i < trials; i += workers) out[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace dynwalk
