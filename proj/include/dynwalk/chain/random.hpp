#pragma once

#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/chain/types.hpp"
#include "dynwalk/sim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace dynwalk {

/// Random positive distribution with entries bounded away from zero.
inline ProbabilityVector random_distribution(int n, RngStream& rng, double floor = 0.05) {
  Vector w(n);
  for (int i = 0; i < n; ++i) w(i) = floor + rng.uniform();
  return ProbabilityVector(w / w.sum(), true);
}

/// Random probability vector that may have zero entries.
inline ProbabilityVector random_probability(int n, RngStream& rng) {
  Vector w(n);
  for (int i = 0; i < n; ++i) w(i) = rng.bernoulli(0.2) ? 0.0 : -std::log(rng.uniform_open());
  if (w.sum() <= 0.0) w(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)))) = 1.0;
  return ProbabilityVector(w / w.sum());
}

/// Random connected support: a random spanning tree plus extra edges with probability `extra`.
inline std::vector<std::pair<int, int>> random_connected_edges(int n, RngStream& rng, double extra) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[static_cast<std::size_t>(i)], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<std::pair<int, int>> edges;
  auto add = [&](int a, int b) {
    if (a == b || adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) return;
    adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
    edges.emplace_back(std::min(a, b), std::max(a, b));
  };
  for (int i = 1; i < n; ++i)
    add(order[static_cast<std::size_t>(i)], order[rng.below(static_cast<std::uint64_t>(i))]);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.bernoulli(extra)) add(a, b);
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// Random irreducible chain reversible w.r.t. pi: P(u,v) = c W(u,v) / pi(u) for a symmetric
/// weight W on a random connected support. Lazy chains keep every diagonal >= 1/2; otherwise
/// the scaling makes at least one diagonal entry zero.
inline StochasticMatrix random_reversible_chain(const ProbabilityVector& pi, RngStream& rng, bool lazy,
                                                double extra = 0.4) {
  const int n = pi.size();
  if (n == 1) return StochasticMatrix::identity(1);
  const auto edges = random_connected_edges(n, rng, extra);
  Matrix w = Matrix::Zero(n, n);
  for (auto [a, b] : edges) {
    const double x = 0.1 + rng.uniform();
    w(a, b) = x;
    w(b, a) = x;
  }
  double c = kInfinity;
  const double budget_mass = lazy ? 0.5 : 1.0;
  for (int u = 0; u < n; ++u) c = std::min(c, budget_mass * pi[u] / w.row(u).sum());
  if (lazy) c *= 0.5 + 0.5 * rng.uniform();
  Matrix p = Matrix::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    double off = 0.0;
    for (int v = 0; v < n; ++v)
      if (v != u) {
        p(u, v) = c * w(u, v) / pi[u];
        off += p(u, v);
      }
    p(u, u) = std::max(0.0, 1.0 - off);
  }
  return StochasticMatrix(std::move(p));
}

/// Cyclic schedule of `len` random chains sharing the stationary distribution pi.
inline ChainSchedule random_common_pi_schedule(const ProbabilityVector& pi, int len, RngStream& rng, bool lazy,
                                               double extra = 0.4) {
  std::vector<StochasticMatrix> list;
  for (int i = 0; i < len; ++i) list.push_back(random_reversible_chain(pi, rng, lazy, extra));
  return ChainSchedule::cyclic(std::move(list), pi);
}

/// Random real vector with standard-normal-like entries.
inline Vector random_vector(int n, RngStream& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vector f(n);
  for (int i = 0; i < n; ++i) f(i) = nd(rng.engine());
  return f;
}

}  // namespace dynwalk
