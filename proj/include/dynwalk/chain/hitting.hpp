#pragma once

#include "dynwalk/chain/spectral.hpp"
#include "dynwalk/chain/types.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dynwalk {

namespace detail {

// True when every vertex can reach w along positive entries.
inline bool all_reach(const Matrix& m, Vertex w) {
  const auto n = m.rows();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> stack{w};
  seen[static_cast<std::size_t>(w)] = 1;
  Eigen::Index count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (Eigen::Index u = 0; u < n; ++u)
      if (m(u, v) > 0.0 && !seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n;
}

}  // namespace detail

/// E_u[tau_w] for every u, by solving (I - P restricted to V\{w}) h = 1.
inline Vector exact_hitting_times(const StochasticMatrix& p, Vertex w) {
  const int n = p.size();
  require_vertex(n, w, "exact_hitting_times");
  if (n > budget::hitting_max_n)
    throw BudgetExceeded(detail::concat("exact_hitting_times: n=", n, " exceeds ", budget::hitting_max_n));
  Vector h = Vector::Zero(n);
  if (n == 1) return h;
  if (!detail::all_reach(p.matrix(), w))
    throw NotIrreducible(detail::concat("exact_hitting_times: singular system, target ", w,
                                        " is unreachable from some vertex"));
  const Matrix sub = detail::principal_without(p.matrix(), w);
  const Matrix a = Matrix::Identity(n - 1, n - 1) - sub;
  const Vector ones = Vector::Ones(n - 1);
  Eigen::PartialPivLU<Matrix> lu(a);
  const Vector x = lu.solve(ones);
  const double residual = (a * x - ones).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (!x.allFinite() || residual > tol::hitting_residual * scale || x.minCoeff() < 1.0 - 1e-9)
    throw NotIrreducible(detail::concat("exact_hitting_times: ill-posed system for target ", w,
                                        " (residual ", residual, ")"));
  for (int i = 0, r = 0; i < n; ++i) {
    if (i == w) continue;
    h(i) = x(r++);
  }
  return h;
}

/// max over u, w of E_u[tau_w].
inline double t_hit(const StochasticMatrix& p) {
  const int n = p.size();
  if (n == 1) return 0.0;
  require_irreducible(p, "t_hit");
  double worst = 0.0;
  for (int w = 0; w < n; ++w) worst = std::max(worst, exact_hitting_times(p, w).maxCoeff());
  return worst;
}

/// Like t_hit but reports +inf for reducible chains instead of throwing.
inline double t_hit_or_inf(const StochasticMatrix& p) {
  if (!support_strongly_connected(p.matrix())) return kInfinity;
  return t_hit(p);
}

}  // namespace dynwalk
