#pragma once

#include "dynwalk/chain/schedule.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace dynwalk {

/// Binary matrix with exactly one 1 per row, stored as the chosen column of each row.
class SelectionMatrix {
 public:
  explicit SelectionMatrix(std::vector<Vertex> choice) : choice_(std::move(choice)) {
    const int n = static_cast<int>(choice_.size());
    detail::require(n >= 1, "selection matrix: empty");
    for (Vertex v : choice_) require_vertex(n, v, "selection matrix");
  }

  static SelectionMatrix from_matrix(const Matrix& m) {
    detail::check_square(m, "selection matrix");
    std::vector<Vertex> c(static_cast<std::size_t>(m.rows()), -1);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      int ones = 0;
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (m(i, j) == 1.0) {
          ++ones;
          c[static_cast<std::size_t>(i)] = static_cast<Vertex>(j);
        } else if (m(i, j) != 0.0) {
          throw InvalidInput("selection matrix: entries must be 0 or 1");
        }
      }
      if (ones != 1) throw InvalidInput(detail::concat("selection matrix: row ", i, " must contain exactly one 1"));
    }
    return SelectionMatrix(std::move(c));
  }

  [[nodiscard]] int size() const { return static_cast<int>(choice_.size()); }
  [[nodiscard]] Vertex operator[](Vertex i) const { return choice_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<Vertex>& choices() const { return choice_; }

  [[nodiscard]] Matrix to_matrix() const {
    const int n = size();
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, choice_[static_cast<std::size_t>(i)]) = 1.0;
    return m;
  }

 private:
  std::vector<Vertex> choice_;
};

struct WeightedSelection {
  SelectionMatrix selection;
  double probability;
};

inline constexpr int kSelectionMaxN = 5;
inline constexpr int kSelectionMaxSupport = 4;

/// mu_P(S) = prod_i P(i, S(i)) over all selections with positive probability.
inline std::vector<WeightedSelection> selection_measure(const StochasticMatrix& p) {
  const int n = p.size();
  if (n > kSelectionMaxN)
    throw BudgetExceeded(detail::concat("selection_measure: n=", n, " exceeds enumeration budget ", kSelectionMaxN));
  std::vector<std::vector<Vertex>> support(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (p(i, j) > 0.0) support[static_cast<std::size_t>(i)].push_back(j);
    if (static_cast<int>(support[static_cast<std::size_t>(i)].size()) > kSelectionMaxSupport)
      throw BudgetExceeded(detail::concat("selection_measure: row ", i, " has support larger than ",
                                          kSelectionMaxSupport));
  }
  std::vector<WeightedSelection> out;
  std::vector<Vertex> choice(static_cast<std::size_t>(n));
  std::function<void(int, double)> rec = [&](int i, double prob) {
    if (i == n) {
      out.push_back({SelectionMatrix(choice), prob});
      return;
    }
    for (Vertex j : support[static_cast<std::size_t>(i)]) {
      choice[static_cast<std::size_t>(i)] = j;
      rec(i + 1, prob * p(i, j));
    }
  };
  rec(0, 1.0);
  return out;
}

/// Q_t = P_{i-t+1} for t <= i, followed by P_1 forever. A static schedule is its own reversal.
inline ChainSchedule reversed(const ChainSchedule& s, Time pivot) {
  if (pivot < 0) throw InvalidInput("reversed: pivot must be >= 0");
  if (s.kind() == ScheduleKind::Static) return s;
  if (pivot >= 1 && !s.within_horizon(pivot))
    throw HorizonExceeded(detail::concat("reversed: pivot ", pivot, " exceeds horizon"));
  std::vector<StochasticMatrix> prefix;
  for (Time t = 1; t <= pivot; ++t) prefix.push_back(s.at(pivot - t + 1));
  return ChainSchedule::prefixed(std::move(prefix), {s.at(1)}, s.declared_pi());
}

struct DualityResult {
  double lhs = 0.0;  // Pr[tau_cons(P) <= j], all opinions initially distinct
  double rhs = 0.0;  // Pr[tau_coal(Q^(j)) <= j]
  long sequences = 0;
  [[nodiscard]] double abs_diff() const { return std::abs(lhs - rhs); }
};

struct DualityBudget {
  int max_n = 4;
  Time max_j = 4;
  long max_sequences = 4000000;
};

namespace detail {

inline std::vector<std::vector<WeightedSelection>> measures_for(const ChainSchedule& s, Time j) {
  std::vector<std::vector<WeightedSelection>> out;
  for (Time t = 1; t <= j; ++t) out.push_back(selection_measure(s.at(t)));
  return out;
}

inline long sequence_count(const std::vector<std::vector<WeightedSelection>>& ms, long cap) {
  long total = 1;
  for (const auto& m : ms) {
    total *= static_cast<long>(m.size());
    if (total > cap) return total;
  }
  return total;
}

}  // namespace detail

/// Exact enumeration of both sides of the consensus/coalescing relation at time j.
/// Voting side: y_t = S_t y_{t-1}, i.e. vertex u holds y_0((S_1 o ... o S_t)(u)); consensus iff that
/// composed map has a single value. Coalescing side: walker counts c_t = c_{t-1} S'_t under Q^(j).
inline DualityResult duality_check(const ChainSchedule& s, Time j, const DualityBudget& budget = {}) {
  const int n = s.size();
  if (n > budget.max_n) throw BudgetExceeded(detail::concat("duality_check: n=", n, " exceeds budget ", budget.max_n));
  if (j < 0) throw InvalidInput("duality_check: j must be >= 0");
  if (j > budget.max_j) throw BudgetExceeded(detail::concat("duality_check: j=", j, " exceeds budget ", budget.max_j));
  DualityResult r;
  if (j == 0) {
    r.lhs = n == 1 ? 1.0 : 0.0;
    r.rhs = r.lhs;
    return r;
  }
  const auto mp = detail::measures_for(s, j);
  const ChainSchedule q = reversed(s, j);
  const auto mq = detail::measures_for(q, j);
  r.sequences = detail::sequence_count(mp, budget.max_sequences);
  if (r.sequences > budget.max_sequences || detail::sequence_count(mq, budget.max_sequences) > budget.max_sequences)
    throw BudgetExceeded(detail::concat("duality_check: more than ", budget.max_sequences, " selection sequences"));

  // Voting: track f_t = S_1 o ... o S_t as a map V -> V.
  std::vector<Vertex> ident(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) ident[static_cast<std::size_t>(v)] = v;
  std::function<void(Time, const std::vector<Vertex>&, double)> vote = [&](Time t, const std::vector<Vertex>& f,
                                                                           double prob) {
    if (t > j) {
      for (Vertex v : f)
        if (v != f.front()) return;
      r.lhs += prob;
      return;
    }
    std::vector<Vertex> g(static_cast<std::size_t>(n));
    for (const auto& ws : mp[static_cast<std::size_t>(t - 1)]) {
      for (int u = 0; u < n; ++u) g[static_cast<std::size_t>(u)] = f[static_cast<std::size_t>(ws.selection[u])];
      vote(t + 1, g, prob * ws.probability);
    }
  };
  vote(1, ident, 1.0);

  // Coalescing: walker counts per vertex.
  std::vector<int> ones(static_cast<std::size_t>(n), 1);
  std::function<void(Time, const std::vector<int>&, double)> coal = [&](Time t, const std::vector<int>& c,
                                                                        double prob) {
    if (t > j) {
      for (int x : c)
        if (x == n) {
          r.rhs += prob;
          return;
        }
      return;
    }
    std::vector<int> d(static_cast<std::size_t>(n));
    for (const auto& ws : mq[static_cast<std::size_t>(t - 1)]) {
      std::fill(d.begin(), d.end(), 0);
      for (int u = 0; u < n; ++u) d[static_cast<std::size_t>(ws.selection[u])] += c[static_cast<std::size_t>(u)];
      coal(t + 1, d, prob * ws.probability);
    }
  };
  coal(1, ones, 1.0);
  return r;
}

}  // namespace dynwalk
