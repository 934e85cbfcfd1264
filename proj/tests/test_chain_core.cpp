#include "dynwalk/chain/hitting.hpp"
#include "dynwalk/chain/lemmas.hpp"
#include "dynwalk/chain/spectral.hpp"
#include "dynwalk/chain/types.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace dynwalk {
namespace {

StochasticMatrix to_stochastic(const oracle::Mat& m) {
  const int n = static_cast<int>(m.size());
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m[i][j];
  return StochasticMatrix(out);
}

ProbabilityVector to_pv(const oracle::Vec& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return ProbabilityVector(out);
}

StochasticMatrix half_half() {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return StochasticMatrix(m);
}

StochasticMatrix rotation3() {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = m(1, 2) = m(2, 0) = 1.0;
  return StochasticMatrix(m);
}

TEST(Types, ProbabilityVectorRejectsBadInput) {
  EXPECT_THROW(ProbabilityVector(Vector::Zero(0)), InvalidInput);
  Vector neg(2);
  neg << 1.5, -0.5;
  EXPECT_THROW(ProbabilityVector{neg}, InvalidInput);
  Vector short_sum(2);
  short_sum << 0.5, 0.49;
  EXPECT_THROW(ProbabilityVector{short_sum}, InvalidInput);
  Vector with_zero(2);
  with_zero << 1.0, 0.0;
  EXPECT_NO_THROW(ProbabilityVector{with_zero});
  EXPECT_THROW(ProbabilityVector(with_zero, true), InvalidInput);
}

TEST(Types, StochasticAndSubstochasticInvariants) {
  Matrix bad(2, 2);
  bad << 0.5, 0.499, 0.5, 0.5;
  EXPECT_THROW(StochasticMatrix{bad}, InvalidInput);
  Matrix neg(2, 2);
  neg << 1.5, -0.5, 0.5, 0.5;
  EXPECT_THROW(StochasticMatrix{neg}, InvalidInput);
  Matrix nonsquare(2, 3);
  nonsquare.setConstant(1.0 / 3.0);
  EXPECT_THROW(StochasticMatrix{nonsquare}, InvalidInput);
  Matrix sub(2, 2);
  sub << 0.5, 0.0, 0.0, 0.0;
  EXPECT_NO_THROW(SubstochasticMatrix{sub});
  sub(0, 1) = 0.6;
  EXPECT_THROW(SubstochasticMatrix{sub}, InvalidInput);
}

TEST(Validate, IdentityIsLazyButReducible) {
  const auto d = validate(StochasticMatrix::identity(3));
  EXPECT_TRUE(d.stochastic);
  EXPECT_TRUE(d.lazy);
  EXPECT_FALSE(d.irreducible);
}

TEST(Validate, SymmetricTwoState) {
  const auto d = validate(half_half());
  EXPECT_TRUE(d.stochastic && d.lazy && d.irreducible);
}

TEST(Validate, RowSumOffThrows) {
  Matrix m(2, 2);
  m << 0.5, 0.499, 0.5, 0.5;
  EXPECT_THROW(validate(m), InvalidInput);
}

TEST(Stationary, SymmetricIsUniform) {
  oracle::Gen gen(11);
  for (int n = 2; n <= 7; ++n) {
    const auto pi = stationary(to_stochastic(gen.lazy_symmetric(n)));
    for (int v = 0; v < n; ++v) EXPECT_NEAR(pi[v], 1.0 / n, 1e-12);
  }
}

TEST(Stationary, LazyPathIsDegreeProportional) {
  const auto p = to_stochastic(oracle::lazy_srw(3, oracle::path_edges(3)));
  const auto pi = stationary(p);
  EXPECT_NEAR(pi[0], 0.25, 1e-12);
  EXPECT_NEAR(pi[1], 0.5, 1e-12);
  EXPECT_NEAR(pi[2], 0.25, 1e-12);
  const RowVector check = pi.values().transpose() * p.matrix();
  EXPECT_NEAR((check - pi.values().transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(Stationary, ReducibleThrows) { EXPECT_THROW(stationary(StochasticMatrix::identity(3)), NotIrreducible); }

TEST(Reversible, Cases) {
  EXPECT_TRUE(is_reversible(half_half(), ProbabilityVector::uniform(2)));
  const auto path = to_stochastic(oracle::lazy_srw(4, oracle::path_edges(4)));
  Vector deg(4);
  deg << 1, 2, 2, 1;
  EXPECT_TRUE(is_reversible(path, ProbabilityVector::from_weights(deg)));
  EXPECT_FALSE(is_reversible(path, ProbabilityVector::uniform(4)));
  EXPECT_FALSE(is_reversible(rotation3(), ProbabilityVector::uniform(3)));
}

TEST(Spectrum, TwoStateByHand) {
  const auto s = spectrum(half_half(), ProbabilityVector::uniform(2));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues[1], 0.0, 1e-12);
  EXPECT_NEAR(s.lambda_star, 0.0, 1e-12);
  EXPECT_NEAR(s.t_rel, 1.0, 1e-12);
}

TEST(Spectrum, LazyCycleMatchesCirculantEigenvalues) {
  for (int n = 3; n <= 12; ++n) {
    const auto s = spectrum(to_stochastic(oracle::lazy_srw(n, oracle::cycle_edges(n))), ProbabilityVector::uniform(n));
    std::vector<double> expect;
    for (int k = 0; k < n; ++k) expect.push_back(0.5 + 0.5 * std::cos(2.0 * std::numbers::pi * k / n));
    std::sort(expect.rbegin(), expect.rend());
    ASSERT_EQ(s.eigenvalues.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(s.eigenvalues[i], expect[i], 1e-9) << "n=" << n;
    EXPECT_NEAR(s.lambda2, 0.5 + 0.5 * std::cos(2.0 * std::numbers::pi / n), 1e-9);
  }
}

TEST(Spectrum, IdentityHasInfiniteRelaxation) {
  const auto s = spectrum(StochasticMatrix::identity(3), ProbabilityVector::uniform(3));
  for (double e : s.eigenvalues) EXPECT_NEAR(e, 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(s.t_rel));
}

TEST(Spectrum, NonReversibleThrows) {
  EXPECT_THROW(spectrum(rotation3(), ProbabilityVector::uniform(3)), InvalidInput);
}

TEST(Killed, MaskingTwoState) {
  const auto k = killed_matrix(half_half(), 1);
  EXPECT_DOUBLE_EQ(k(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(k(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(k(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(k(1, 1), 0.0);
  EXPECT_EQ(killed_matrix(k, 1).matrix(), k.matrix());
}

TEST(Killed, RowSumsAtMostOne) {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(2, 8);
    const auto k = killed_matrix(to_stochastic(gen.lazy_symmetric(n)), gen.integer(0, n - 1));
    for (int i = 0; i < n; ++i) EXPECT_LE(k.matrix().row(i).sum(), 1.0 + 1e-12);
  }
}

TEST(Killed, SpectralRadiusTwoState) {
  EXPECT_NEAR(spectral_radius_killed(half_half(), ProbabilityVector::uniform(2), 0), 0.5, 1e-12);
  EXPECT_NEAR(spectral_radius_killed(half_half(), ProbabilityVector::uniform(2), 1), 0.5, 1e-12);
}

TEST(Killed, SpectralRadiusMatchesPowerIteration) {
  oracle::Gen gen(17);
  std::vector<oracle::Mat> cases{oracle::lazy_srw(3, oracle::complete_edges(3)),
                                 oracle::lazy_srw(6, oracle::cycle_edges(6))};
  for (int i = 0; i < 10; ++i) cases.push_back(gen.lazy_symmetric(gen.integer(3, 7)));
  for (const auto& m : cases) {
    const int n = static_cast<int>(m.size());
    const auto p = to_stochastic(m);
    for (int w = 0; w < n; ++w) {
      oracle::Mat killed = m;
      for (int i = 0; i < n; ++i) killed[w][i] = killed[i][w] = 0.0;
      EXPECT_NEAR(spectral_radius_killed(p, ProbabilityVector::uniform(n), w),
                  oracle::power_iteration_radius(killed), 1e-8);
    }
  }
}

TEST(Killed, SpectralRadiusBelowHittingBound) {
  oracle::Gen gen(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto [m, piv] = gen.lazy_reversible(gen.integer(2, 7));
    const auto p = to_stochastic(m);
    const auto pi = to_pv(piv);
    const double th = t_hit(p);
    for (int w = 0; w < p.size(); ++w) EXPECT_LE(spectral_radius_killed(p, pi, w), 1.0 - 1.0 / th + 1e-9);
  }
}

TEST(Killed, ReducibleThrows) {
  EXPECT_THROW(spectral_radius_killed(StochasticMatrix::identity(3), ProbabilityVector::uniform(3), 0),
               NotIrreducible);
}

TEST(Hitting, FourCycleAntipode) {
  const auto h = exact_hitting_times(to_stochastic(oracle::lazy_srw(4, oracle::cycle_edges(4))), 2);
  EXPECT_NEAR(h(0), 8.0, 1e-8);
  EXPECT_NEAR(h(1), 6.0, 1e-8);
  EXPECT_NEAR(h(2), 0.0, 1e-12);
}

TEST(Hitting, CompleteGraph) {
  for (int n : {2, 3, 5, 8}) {
    const auto p = to_stochastic(oracle::lazy_srw(n, oracle::complete_edges(n)));
    const auto h = exact_hitting_times(p, 0);
    EXPECT_EQ(h(0), 0.0);
    for (int u = 1; u < n; ++u) EXPECT_NEAR(h(u), 2.0 * (n - 1), 1e-8);
    EXPECT_NEAR(t_hit(p), 2.0 * (n - 1), 1e-8);
  }
}

TEST(Hitting, PathEndToEnd) {
  // Simple walk on P_n needs (n-1)^2 steps end to end; laziness doubles it.
  for (int n = 2; n <= 9; ++n) {
    const auto p = to_stochastic(oracle::lazy_srw(n, oracle::path_edges(n)));
    EXPECT_NEAR(exact_hitting_times(p, n - 1)(0), 2.0 * (n - 1) * (n - 1), 1e-8);
    EXPECT_NEAR(t_hit(p), 2.0 * (n - 1) * (n - 1), 1e-8);
  }
}

TEST(Hitting, MatchesEliminationOracle) {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto [m, piv] = gen.lazy_reversible(gen.integer(2, 9));
    const auto p = to_stochastic(m);
    const int w = gen.integer(0, p.size() - 1);
    const auto h = exact_hitting_times(p, w);
    const auto ref = oracle::hitting_times(m, w);
    for (int u = 0; u < p.size(); ++u) EXPECT_NEAR(h(u), ref[static_cast<std::size_t>(u)], 1e-8 * std::max(1.0, ref[u]));
  }
}

TEST(Hitting, TwoStateAndReducible) {
  EXPECT_NEAR(t_hit(half_half()), 2.0, 1e-12);
  EXPECT_THROW(exact_hitting_times(StochasticMatrix::identity(3), 0), NotIrreducible);
  EXPECT_TRUE(std::isinf(t_hit_or_inf(StochasticMatrix::identity(3))));
}

TEST(Hitting, SpectralSandwich) {
  oracle::Gen gen(37);
  for (int trial = 0; trial < 40; ++trial) {
    const auto [m, piv] = gen.lazy_reversible(gen.integer(2, 8));
    const auto p = to_stochastic(m);
    const auto pi = to_pv(piv);
    const double gap = 1.0 - spectrum(p, pi).lambda2;
    const double th = t_hit(p);
    EXPECT_LE(1.0 / gap, th + 1e-9);
    EXPECT_LE(th, 2.0 / (pi.min() * gap) + 1e-9);
  }
}

TEST(Dirichlet, Cases) {
  const auto p = half_half();
  const auto pi = ProbabilityVector::uniform(2);
  EXPECT_NEAR(dirichlet_form(p, pi, Vector::Constant(2, 3.0)), 0.0, 1e-15);
  Vector ind(2);
  ind << 1.0, 0.0;
  EXPECT_NEAR(dirichlet_form(p, pi, ind), 0.25, 1e-15);
  oracle::Gen gen(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto [m, piv] = gen.lazy_reversible(gen.integer(2, 8));
    Vector f(static_cast<Eigen::Index>(m.size()));
    for (auto& x : f) x = gen.uniform(-3, 3);
    EXPECT_GE(dirichlet_form(to_stochastic(m), to_pv(piv), f), -1e-12);
  }
}

TEST(LpDistance, Cases) {
  const int n = 5;
  const auto pi = ProbabilityVector::uniform(n);
  for (auto norm : {Norm::L1, Norm::L2, Norm::Linf}) EXPECT_NEAR(lp_distance(pi, pi, norm), 0.0, 1e-15);
  EXPECT_NEAR(lp_distance(ProbabilityVector::point_mass(n, 2), pi, Norm::Linf), n - 1.0, 1e-12);
  oracle::Gen gen(43);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = gen.integer(2, 8);
    Vector a(m), b(m);
    for (int i = 0; i < m; ++i) {
      a(i) = gen.uniform();
      b(i) = gen.uniform(0.05, 1.0);
    }
    const auto mu = ProbabilityVector::from_weights(a);
    const auto nu = ProbabilityVector::from_weights(b);
    const double l1 = lp_distance(mu, nu, Norm::L1);
    const double l2 = lp_distance(mu, nu, Norm::L2);
    const double li = lp_distance(mu, nu, Norm::Linf);
    EXPECT_LE(l1, l2 + 1e-12);
    EXPECT_LE(l2, li + 1e-12);
  }
}

TEST(Conductance, Cases) {
  EXPECT_NEAR(conductance(half_half(), ProbabilityVector::uniform(2)), 0.5, 1e-15);
  EXPECT_NEAR(conductance(StochasticMatrix::identity(4), ProbabilityVector::uniform(4)), 0.0, 1e-15);
  oracle::Gen gen(47);
  for (int trial = 0; trial < 100; ++trial) {
    const auto [m, piv] = gen.lazy_reversible(gen.integer(2, 8));
    const auto p = to_stochastic(m);
    const auto pi = to_pv(piv);
    const double phi = conductance(p, pi);
    EXPECT_NEAR(phi, oracle::conductance(m, piv), 1e-12);
    const double gap = 1.0 - spectrum(p, pi).lambda_star;
    EXPECT_LE(phi * phi / 2.0, gap + 1e-9);
    EXPECT_LE(gap, 2.0 * phi + 1e-9);
  }
}

TEST(Conductance, BudgetExceeded) {
  EXPECT_THROW(conductance(StochasticMatrix::identity(23), ProbabilityVector::uniform(23)), BudgetExceeded);
}

TEST(LemmaSuite, AllRowsPassOnSmallRun) {
  LemmaSuiteConfig cfg;
  cfg.chains = 30;
  cfg.schedules = 10;
  const auto rows = verify_lemmas(cfg);
  EXPECT_EQ(rows.size(), 12u);
  for (const auto& r : rows) {
    EXPECT_GT(r.checks, 0) << r.name;
    EXPECT_EQ(r.violations, 0) << r.name << " max_excess=" << r.max_excess;
  }
}

TEST(LemmaSuite, DeterministicUnderSeed) {
  LemmaSuiteConfig cfg;
  cfg.chains = 10;
  cfg.schedules = 5;
  const auto a = verify_lemmas(cfg);
  const auto b = verify_lemmas(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].checks, b[i].checks);
    EXPECT_EQ(a[i].max_excess, b[i].max_excess);
  }
}

}  // namespace
}  // namespace dynwalk
