#pragma once

#include "dynwalk/chain/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace dynwalk {

struct SpectralSummary {
  std::vector<double> eigenvalues;  // descending
  double lambda2 = 0.0;
  double lambda_star = 0.0;
  double t_rel = 1.0;
};

inline void require_same_size(int a, int b, const char* op) {
  if (a != b) throw InvalidInput(detail::concat(op, ": dimension mismatch (", a, " vs ", b, ")"));
}

inline ProbabilityVector stationary(const StochasticMatrix& p) {
  const int n = p.size();
  if (n > budget::hitting_max_n)
    throw BudgetExceeded(detail::concat("stationary: n=", n, " exceeds ", budget::hitting_max_n));
  require_irreducible(p, "stationary");
  if (n == 1) return ProbabilityVector(Vector::Ones(1));
  // Solve pi (P - I) = 0 with the last equation replaced by sum(pi) = 1.
  Matrix a = (p.matrix() - Matrix::Identity(n, n)).transpose();
  a.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Vector pi = a.partialPivLu().solve(rhs);
  for (int i = 0; i < n; ++i) {
    if (pi(i) <= 0.0) throw NotIrreducible("stationary: solution has non-positive entry");
  }
  pi /= pi.sum();
  const double residual = (pi.transpose() * p.matrix() - pi.transpose()).cwiseAbs().maxCoeff();
  if (residual > tol::stationarity)
    throw Error(detail::concat("stationary: residual ", residual, " above tolerance"));
  return ProbabilityVector(std::move(pi), true);
}

inline double reversibility_defect(const StochasticMatrix& p, const ProbabilityVector& pi) {
  require_same_size(p.size(), pi.size(), "is_reversible");
  const int n = p.size();
  double worst = 0.0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      worst = std::max(worst, std::abs(pi[u] * p(u, v) - pi[v] * p(v, u)));
  return worst;
}

inline bool is_reversible(const StochasticMatrix& p, const ProbabilityVector& pi,
                          double tolerance = tol::reversibility) {
  if (!pi.positive()) throw InvalidInput("is_reversible: pi must be positive");
  return reversibility_defect(p, pi) <= tolerance;
}

namespace detail {

inline void require_reversible(const StochasticMatrix& p, const ProbabilityVector& pi, const char* op) {
  require_same_size(p.size(), pi.size(), op);
  if (!pi.positive()) throw InvalidInput(concat(op, ": pi must be positive"));
  const double d = reversibility_defect(p, pi);
  if (d > tol::reversibility)
    throw InvalidInput(concat(op, ": matrix is not reversible w.r.t. pi (defect ", d, ")"));
}

// S(u,v) = sqrt(pi(u)/pi(v)) P(u,v), symmetrized to remove round-off asymmetry.
inline Matrix symmetrize(const Matrix& p, const Vector& pi) {
  const Vector s = pi.cwiseSqrt();
  const Vector inv = s.cwiseInverse();
  Matrix m = s.asDiagonal() * p * inv.asDiagonal();
  return (m + m.transpose()) * 0.5;
}

inline double relaxation_time(double lambda_star) {
  if (lambda_star >= 1.0 - tol::probability) return kInfinity;
  return 1.0 / (1.0 - lambda_star);
}

}  // namespace detail

inline SpectralSummary spectrum(const StochasticMatrix& p, const ProbabilityVector& pi) {
  detail::require_reversible(p, pi, "spectrum");
  const int n = p.size();
  if (n > budget::eigen_max_n)
    throw BudgetExceeded(detail::concat("spectrum: n=", n, " exceeds ", budget::eigen_max_n));
  SpectralSummary out;
  if (n == 1) {
    out.eigenvalues = {1.0};
    out.lambda2 = 0.0;
    out.lambda_star = 0.0;
    out.t_rel = 1.0;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(detail::symmetrize(p.matrix(), pi.values()),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("spectrum: eigensolver failed");
  const Vector& ev = es.eigenvalues();  // ascending
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.eigenvalues[static_cast<std::size_t>(i)] = ev(n - 1 - i);
  out.lambda2 = out.eigenvalues[1];
  out.lambda_star = std::max(std::abs(out.eigenvalues[1]), std::abs(out.eigenvalues.back()));
  out.t_rel = detail::relaxation_time(out.lambda_star);
  return out;
}

inline SubstochasticMatrix killed_matrix(const StochasticMatrix& p, Vertex w) {
  require_vertex(p.size(), w, "killed_matrix");
  Matrix m = p.matrix();
  m.row(w).setZero();
  m.col(w).setZero();
  return SubstochasticMatrix(std::move(m));
}

inline SubstochasticMatrix killed_matrix(const SubstochasticMatrix& q, Vertex w) {
  require_vertex(q.size(), w, "killed_matrix");
  Matrix m = q.matrix();
  m.row(w).setZero();
  m.col(w).setZero();
  return SubstochasticMatrix(std::move(m));
}

namespace detail {

inline Matrix principal_without(const Matrix& m, Vertex w) {
  const auto n = m.rows();
  Matrix out(n - 1, n - 1);
  for (Eigen::Index i = 0, r = 0; i < n; ++i) {
    if (i == w) continue;
    for (Eigen::Index j = 0, c = 0; j < n; ++j) {
      if (j == w) continue;
      out(r, c++) = m(i, j);
    }
    ++r;
  }
  return out;
}

}  // namespace detail

/// Spectral radius of D_w P D_w for reversible P.
inline double spectral_radius_killed(const StochasticMatrix& p, const ProbabilityVector& pi, Vertex w) {
  require_vertex(p.size(), w, "spectral_radius_killed");
  detail::require_reversible(p, pi, "spectral_radius_killed");
  require_irreducible(p, "spectral_radius_killed");
  const int n = p.size();
  if (n == 1) return 0.0;
  if (n > budget::eigen_max_n)
    throw BudgetExceeded(detail::concat("spectral_radius_killed: n=", n, " exceeds budget"));
  const Matrix sub = detail::principal_without(detail::symmetrize(p.matrix(), pi.values()), w);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("spectral_radius_killed: eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Spectral radius of the symmetric form of D_x P D_x when x may be any mask; helper for lemma checks.
inline double spectral_radius_masked(const StochasticMatrix& p, const ProbabilityVector& pi,
                                     const std::vector<char>& keep) {
  detail::require_reversible(p, pi, "spectral_radius_masked");
  const int n = p.size();
  std::vector<int> idx;
  for (int i = 0; i < n; ++i)
    if (keep.at(static_cast<std::size_t>(i))) idx.push_back(i);
  if (idx.empty()) return 0.0;
  const Matrix s = detail::symmetrize(p.matrix(), pi.values());
  const auto k = static_cast<Eigen::Index>(idx.size());
  Matrix sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = s(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sub, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline double inner_pi(const Vector& f, const Vector& g, const ProbabilityVector& pi) {
  return (pi.values().array() * f.array() * g.array()).sum();
}

inline double norm_pi(const Vector& f, const ProbabilityVector& pi) { return std::sqrt(inner_pi(f, f, pi)); }

inline double variance_pi(const Vector& f, const ProbabilityVector& pi) {
  const double m = pi.values().dot(f);
  return inner_pi(f, f, pi) - m * m;
}

/// E(f) = <f,f>_pi - <f,Pf>_pi, cross-checked against the edge-sum form.
inline double dirichlet_form(const StochasticMatrix& p, const ProbabilityVector& pi, const Vector& f) {
  require_same_size(p.size(), static_cast<int>(f.size()), "dirichlet_form");
  detail::require_reversible(p, pi, "dirichlet_form");
  const Vector pf = p.matrix() * f;
  const double quad = inner_pi(f, f, pi) - inner_pi(f, pf, pi);
  const int n = p.size();
  double edges = 0.0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const double d = f(u) - f(v);
      edges += pi[u] * p(u, v) * d * d;
    }
  edges *= 0.5;
  const double scale = std::max(1.0, inner_pi(f, f, pi));
  if (std::abs(quad - edges) > 1e-10 * scale)
    throw Error(detail::concat("dirichlet_form: formulas disagree (", quad, " vs ", edges, ")"));
  return edges;
}

enum class Norm { L1, L2, Linf };

/// d^{(p,pi)} for an arbitrary real row (e.g. a row of a product matrix).
inline double lp_distance(const Vector& mu, const ProbabilityVector& pi, Norm p) {
  require_same_size(static_cast<int>(mu.size()), pi.size(), "lp_distance");
  if (!pi.positive()) throw InvalidInput("lp_distance: pi must be positive");
  const Eigen::ArrayXd r = mu.array() / pi.values().array() - 1.0;
  switch (p) {
    case Norm::L1:
      return (pi.values().array() * r.abs()).sum();
    case Norm::L2:
      return std::sqrt((pi.values().array() * r.square()).sum());
    case Norm::Linf:
      return r.abs().maxCoeff();
  }
  return 0.0;
}

inline double lp_distance(const ProbabilityVector& mu, const ProbabilityVector& pi, Norm p) {
  return lp_distance(mu.values(), pi, p);
}

/// Exact min over 0 < pi(S) <= 1/2 of Q(S)/pi(S), by Gray-code enumeration of all subsets.
inline double conductance(const StochasticMatrix& p, const ProbabilityVector& pi) {
  require_same_size(p.size(), pi.size(), "conductance");
  const int n = p.size();
  if (n > budget::conductance_max_n)
    throw BudgetExceeded(detail::concat("conductance: n=", n, " exceeds exhaustive budget ",
                                        budget::conductance_max_n,
                                        "; use the spectral bound via spectrum() instead"));
  if (n == 1) return kInfinity;
  // flow(u,v) = pi(u)P(u,v); Q(S) = sum_{u in S, v not in S} flow(u,v).
  Matrix flow = pi.values().asDiagonal() * p.matrix();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  double q = 0.0;
  double mass = 0.0;
  double best = kInfinity;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = __builtin_ctzll(k);
    const bool adding = !in[static_cast<std::size_t>(bit)];
    // Flow across the cut changes only through edges incident to `bit`.
    double out_to_rest = 0.0;
    double in_from_set = 0.0;
    for (int v = 0; v < n; ++v) {
      if (v == bit) continue;
      if (in[static_cast<std::size_t>(v)])
        in_from_set += flow(v, bit);
      else
        out_to_rest += flow(bit, v);
    }
    if (adding) {
      q += out_to_rest - in_from_set;
      mass += pi[bit];
    } else {
      q -= out_to_rest - in_from_set;
      mass -= pi[bit];
    }
    in[static_cast<std::size_t>(bit)] = adding ? 1 : 0;
    if (mass > 0.0 && mass <= 0.5 + tol::probability) best = std::min(best, std::max(q, 0.0) / mass);
  }
  return best;
}

}  // namespace dynwalk
