#pragma once

#include "dynwalk/chain/hitting.hpp"
#include "dynwalk/chain/random.hpp"
#include "dynwalk/chain/schedule.hpp"
#include "dynwalk/chain/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace dynwalk {

struct LemmaRow {
  std::string name;
  long checks = 0;
  long violations = 0;
  double max_excess = -kInfinity;  // max of lhs - rhs over all checks; <= slack means pass

  [[nodiscard]] bool pass() const { return checks > 0 && violations == 0; }
};

struct LemmaSuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  int chains = 200;
  int n_min = 3;
  int n_max = 8;
  int vectors = 20;
  int schedules = 50;
  int schedule_n_max = 6;
  int schedule_t_max = 10;
  double slack = 1e-9;
  bool chain_checks = true;
  bool schedule_checks = true;
};

namespace lemma_names {
inline constexpr const char* matrix_eigen = "matrix_eigen_contraction";
inline constexpr const char* l2_decay = "l2_decay";
inline constexpr const char* mihail = "mihail_variance";
inline constexpr const char* dirichlet_hitting = "dirichlet_hitting";
inline constexpr const char* killed_radius = "killed_spectral_radius";
inline constexpr const char* two_sided = "two_sided_killed_contraction";
inline constexpr const char* hit_sandwich = "hitting_time_sandwich";
inline constexpr const char* cheeger = "cheeger_sandwich";
inline constexpr const char* lp_monotone = "lp_monotonicity";
inline constexpr const char* l2_uniform = "l2_to_uniform";
inline constexpr const char* htl = "hitting_time_lemma";
inline constexpr const char* mtl = "meeting_time_lemma";
}  // namespace lemma_names

namespace detail {

class LemmaTally {
 public:
  explicit LemmaTally(double slack) : slack_(slack) {}

  LemmaRow& row(const std::string& name) {
    for (auto& r : rows_)
      if (r.name == name) return r;
    rows_.push_back(LemmaRow{name});
    return rows_.back();
  }

  // Records the check lhs <= rhs with slack scaled by max(1, |rhs|).
  void leq(const std::string& name, double lhs, double rhs) {
    auto& r = row(name);
    ++r.checks;
    const double excess = lhs - rhs;
    r.max_excess = std::max(r.max_excess, excess);
    if (!(excess <= slack_ * std::max(1.0, std::abs(rhs)))) ++r.violations;
  }

  std::vector<LemmaRow> take() { return std::move(rows_); }

 private:
  double slack_;
  std::vector<LemmaRow> rows_;
};

inline int uniform_int(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

inline void check_single_chain(const StochasticMatrix& p, const ProbabilityVector& pi, RngStream& rng,
                               const LemmaSuiteConfig& cfg, LemmaTally& tally) {
  const int n = p.size();
  const auto spec = spectrum(p, pi);
  const double th = t_hit(p);
  const Matrix& m = p.matrix();
  const Vector ones = Vector::Ones(n);

  for (int k = 0; k < cfg.vectors; ++k) {
    // Contraction on the orthogonal complement of constants.
    Vector f = random_vector(n, rng);
    f.array() -= pi.values().dot(f);
    const Vector pf = m * f;
    tally.leq(lemma_names::matrix_eigen, norm_pi(pf, pi), spec.lambda_star * norm_pi(f, pi));
    tally.leq(lemma_names::matrix_eigen, inner_pi(pf, f, pi), spec.lambda_star * inner_pi(f, f, pi));

    // Variance decay for lazy chains.
    const Vector g = random_vector(n, rng);
    tally.leq(lemma_names::mihail, variance_pi(m * g, pi), variance_pi(g, pi) - dirichlet_form(p, pi, g));

    // Dirichlet form against hitting time, and l^p ordering.
    const ProbabilityVector mu = random_probability(n, rng);
    const Vector ratio = mu.values().cwiseQuotient(pi.values());
    const double var = variance_pi(ratio, pi);
    tally.leq(lemma_names::dirichlet_hitting, var * var / th, dirichlet_form(p, pi, ratio));
    const double d1 = lp_distance(mu, pi, Norm::L1);
    const double d2 = lp_distance(mu, pi, Norm::L2);
    const double di = lp_distance(mu, pi, Norm::Linf);
    tally.leq(lemma_names::lp_monotone, d1, d2);
    tally.leq(lemma_names::lp_monotone, d2, di);

    // Two-sided killing: ||D_x P D_y h||^2 <= rho(D_x P D_x) rho(D_y P D_y) ||h||^2.
    const int x = uniform_int(rng, 0, n - 1);
    const int y = uniform_int(rng, 0, n - 1);
    Vector h = random_vector(n, rng);
    Vector dyh = h;
    dyh(y) = 0.0;
    Vector lhs = m * dyh;
    lhs(x) = 0.0;
    const double rx = spectral_radius_killed(p, pi, x);
    const double ry = spectral_radius_killed(p, pi, y);
    tally.leq(lemma_names::two_sided, inner_pi(lhs, lhs, pi), rx * ry * inner_pi(h, h, pi));
  }

  for (int w = 0; w < n; ++w)
    tally.leq(lemma_names::killed_radius, spectral_radius_killed(p, pi, w), 1.0 - 1.0 / th);

  tally.leq(lemma_names::hit_sandwich, 1.0 / (1.0 - spec.lambda2), th);
  tally.leq(lemma_names::hit_sandwich, th, 2.0 / (pi.min() * (1.0 - spec.lambda2)));

  const double phi = conductance(p, pi);
  const double gap = 1.0 - spec.lambda_star;
  tally.leq(lemma_names::cheeger, phi * phi / 2.0, gap);
  tally.leq(lemma_names::cheeger, gap, 2.0 * phi);
}

inline void check_chain_schedule(const ProbabilityVector& pi, RngStream& rng, const LemmaSuiteConfig& cfg,
                                 LemmaTally& tally) {
  const int n = pi.size();
  const int big_t = uniform_int(rng, 1, cfg.schedule_t_max);
  std::vector<StochasticMatrix> mats;
  for (int t = 0; t < 2 * big_t; ++t) mats.push_back(random_reversible_chain(pi, rng, true));
  const auto sched = ChainSchedule::generated(mats, 0, pi);

  // l^2 decay along the first T steps.
  double lam_prod = 1.0;
  for (int t = 1; t <= big_t; ++t) lam_prod *= spectrum(sched.at(t), pi).lambda_star;
  const Matrix fwd = product(sched, 1, big_t).matrix();
  for (int k = 0; k < cfg.vectors; ++k) {
    const ProbabilityVector mu = random_probability(n, rng);
    const Vector moved = (mu.values().transpose() * fwd).transpose();
    tally.leq(lemma_names::l2_decay, lp_distance(moved, pi, Norm::L2), lp_distance(mu, pi, Norm::L2) * lam_prod);
  }

  // |P_[1,2T](u,v)/pi(v) - 1| <= d2(P_[1,T](u,.)) d2((P_2T ... P_{T+1})(v,.)).
  Matrix rev = sched.at(2 * big_t).matrix();
  for (int t = 2 * big_t - 1; t >= big_t + 1; --t) rev = rev * sched.at(t).matrix();
  const Matrix full = product(sched, 1, 2 * big_t).matrix();
  for (int u = 0; u < n; ++u) {
    const double du = lp_distance(Vector(fwd.row(u).transpose()), pi, Norm::L2);
    for (int v = 0; v < n; ++v) {
      const double dv = lp_distance(Vector(rev.row(v).transpose()), pi, Norm::L2);
      tally.leq(lemma_names::l2_uniform, std::abs(full(u, v) / pi[v] - 1.0), du * dv);
    }
  }
}

inline void check_hitting_schedule(RngStream& rng, const LemmaSuiteConfig& cfg, LemmaTally& tally) {
  const int n = uniform_int(rng, 2, cfg.schedule_n_max);
  const int big_t = uniform_int(rng, 1, cfg.schedule_t_max);
  const ProbabilityVector pi = random_distribution(n, rng);

  // HTL allows non-lazy chains; mix both kinds.
  std::vector<StochasticMatrix> mixed;
  std::vector<StochasticMatrix> lazy;
  for (int t = 0; t < big_t; ++t) {
    mixed.push_back(random_reversible_chain(pi, rng, rng.bernoulli(0.5)));
    lazy.push_back(random_reversible_chain(pi, rng, true));
  }
  const auto s_mixed = ChainSchedule::generated(mixed, 0, pi);
  const auto s_lazy = ChainSchedule::generated(lazy, 0, pi);

  auto bound = [&](const ChainSchedule& s, int upto) {
    double b = 1.0;
    for (int t = 1; t <= upto; ++t) b *= 1.0 - 1.0 / t_hit(s.at(t));
    return b;
  };

  for (int w = 0; w < n; ++w)
    for (int upto = 0; upto <= big_t; ++upto)
      tally.leq(lemma_names::htl, non_hit_probability(s_mixed, pi, w, upto), bound(s_mixed, upto));

  for (int k = 0; k < 4 * n; ++k) {
    std::vector<Vertex> targets(static_cast<std::size_t>(big_t) + 1);
    for (auto& w : targets) w = uniform_int(rng, 0, n - 1);
    tally.leq(lemma_names::mtl, non_hit_probability(s_lazy, pi, targets), bound(s_lazy, big_t));
  }
}

}  // namespace detail

/// Evaluates every chain-level inequality on seeded random instances.
inline std::vector<LemmaRow> verify_lemmas(const LemmaSuiteConfig& cfg = {}) {
  detail::require(cfg.n_min >= 2 && cfg.n_max >= cfg.n_min, "verify_lemmas: need 2 <= n_min <= n_max");
  detail::require(cfg.n_max <= budget::conductance_max_n, "verify_lemmas: n_max exceeds conductance budget");
  detail::require(cfg.schedule_n_max >= 2 && cfg.schedule_t_max >= 1, "verify_lemmas: bad schedule ranges");
  detail::LemmaTally tally(cfg.slack);
  using namespace lemma_names;
  if (cfg.chain_checks) {
    for (const char* name : {matrix_eigen, l2_decay, mihail, dirichlet_hitting, killed_radius, two_sided,
                             hit_sandwich, cheeger, lp_monotone, l2_uniform})
      tally.row(name);
    for (int c = 0; c < cfg.chains; ++c) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(c), 0, 1);
      const int n = detail::uniform_int(rng, cfg.n_min, cfg.n_max);
      const ProbabilityVector pi = random_distribution(n, rng);
      const StochasticMatrix p = random_reversible_chain(pi, rng, true);
      detail::check_single_chain(p, pi, rng, cfg, tally);
      detail::check_chain_schedule(pi, rng, cfg, tally);
    }
  }
  if (cfg.schedule_checks) {
    tally.row(htl);
    tally.row(mtl);
    for (int s = 0; s < cfg.schedules; ++s) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(s), 0, 2);
      detail::check_hitting_schedule(rng, cfg, tally);
    }
  }
  return tally.take();
}

}  // namespace dynwalk
