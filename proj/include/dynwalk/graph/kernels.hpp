#pragma once

#include "dynwalk/chain/types.hpp"
#include "dynwalk/graph/graph.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace dynwalk {

enum class Kernel { LazySimple, DmaxLazy, LazyMetropolis };

inline const char* to_string(Kernel k) {
  switch (k) {
    case Kernel::LazySimple:
      return "lazy_simple";
    case Kernel::DmaxLazy:
      return "dmax_lazy";
    case Kernel::LazyMetropolis:
      return "lazy_metropolis";
  }
  return "?";
}

inline Kernel kernel_from_string(const std::string& s) {
  if (s == "lazy_simple") return Kernel::LazySimple;
  if (s == "dmax_lazy") return Kernel::DmaxLazy;
  if (s == "lazy_metropolis") return Kernel::LazyMetropolis;
  throw InvalidInput(detail::concat("unknown kernel '", s, "' (expected lazy_simple, dmax_lazy, lazy_metropolis)"));
}

/// P(u,v) = 1/(2 deg u) on edges, 1/2 on the diagonal.
inline StochasticMatrix lazy_simple_kernel(const GraphSnapshot& g) {
  const int n = g.size();
  Matrix p = Matrix::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    const int d = g.degree(u);
    if (d == 0) throw InvalidInput(detail::concat("lazy_simple_kernel: vertex ", u, " is isolated"));
    p(u, u) = 0.5;
    for (Vertex v : g.neighbors(u)) p(u, v) = 1.0 / (2.0 * d);
  }
  return StochasticMatrix(std::move(p));
}

/// P(u,v) = 1/(2 d_max) on edges, 1 - deg(u)/(2 d_max) on the diagonal.
inline StochasticMatrix dmax_lazy_kernel(const GraphSnapshot& g) {
  if (g.edge_count() == 0) throw InvalidInput("dmax_lazy_kernel: graph has no edges");
  const int n = g.size();
  const double dmax = g.max_degree();
  const double x = 1.0 / (2.0 * dmax);
  Matrix p = Matrix::Zero(n, n);
  for (auto [a, b] : g.edges()) {
    p(a, b) = x;
    p(b, a) = x;
  }
  for (int u = 0; u < n; ++u) p(u, u) = 1.0 - g.degree(u) / (2.0 * dmax);
  return StochasticMatrix(std::move(p));
}

/// P(u,v) = 1/(2 max{deg u, deg v}) on edges; the diagonal completes each row.
inline StochasticMatrix lazy_metropolis_kernel(const GraphSnapshot& g) {
  if (g.edge_count() == 0) throw InvalidInput("lazy_metropolis_kernel: graph has no edges");
  const int n = g.size();
  Matrix p = Matrix::Zero(n, n);
  for (auto [a, b] : g.edges()) {
    const double x = 1.0 / (2.0 * std::max(g.degree(a), g.degree(b)));
    p(a, b) = x;
    p(b, a) = x;
  }
  for (int u = 0; u < n; ++u) {
    double off = 0.0;
    for (Vertex v : g.neighbors(u)) off += p(u, v);
    p(u, u) = 1.0 - off;
  }
  return StochasticMatrix(std::move(p));
}

inline StochasticMatrix apply_kernel(Kernel k, const GraphSnapshot& g) {
  switch (k) {
    case Kernel::LazySimple:
      return lazy_simple_kernel(g);
    case Kernel::DmaxLazy:
      return dmax_lazy_kernel(g);
    case Kernel::LazyMetropolis:
      return lazy_metropolis_kernel(g);
  }
  throw InvalidInput("apply_kernel: unknown kernel");
}

/// Degree-proportional distribution deg(v)/2m.
inline ProbabilityVector degree_distribution(const GraphSnapshot& g) {
  detail::require(g.edge_count() > 0, "degree_distribution: graph has no edges");
  Vector d(g.size());
  for (int v = 0; v < g.size(); ++v) d(v) = g.degree(v);
  return ProbabilityVector(d / (2.0 * static_cast<double>(g.edge_count())));
}

/// Stationary distribution the kernel guarantees for g, if any.
inline std::optional<ProbabilityVector> kernel_stationary(Kernel k, const GraphSnapshot& g) {
  if (k == Kernel::LazySimple) {
    for (int v = 0; v < g.size(); ++v)
      if (g.degree(v) == 0) return std::nullopt;
    return degree_distribution(g);
  }
  return ProbabilityVector::uniform(g.size());
}

}  // namespace dynwalk
