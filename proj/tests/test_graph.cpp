#include "dynwalk/chain/random.hpp"
#include "dynwalk/chain/spectral.hpp"
#include "dynwalk/experiment/descriptor.hpp"
#include "dynwalk/graph/dynamic.hpp"
#include "dynwalk/graph/graph.hpp"
#include "dynwalk/graph/kernels.hpp"

#include <gtest/gtest.h>

namespace dynwalk {
namespace {

TEST(Graph, RejectsMalformedEdges) {
  EXPECT_THROW(GraphSnapshot(3, {{0, 0}}), InvalidInput);
  EXPECT_THROW(GraphSnapshot(3, {{0, 3}}), InvalidInput);
  EXPECT_THROW(GraphSnapshot(3, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_THROW(GraphSnapshot(0, {}), InvalidInput);
}

TEST(Graph, DegreesAndConnectivity) {
  const GraphSnapshot g(5, {{0, 1}, {1, 2}, {3, 4}});
  EXPECT_EQ(g.degree(1), 2);
  EXPECT_EQ(g.max_degree(), 2);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_FALSE(g.connected());
  EXPECT_TRUE(graphs::path(5).connected());
}

TEST(Graph, StandardConstructions) {
  EXPECT_EQ(graphs::cycle(3).edge_count(), 3u);
  EXPECT_EQ(graphs::path(2), graphs::complete(2));
  EXPECT_EQ(graphs::complete(4).edge_count(), 6u);
  EXPECT_EQ(graphs::star(4).edge_count(), 3u);
  EXPECT_EQ(graphs::star(4, 2).degree(2), 3);
  EXPECT_THROW(graphs::cycle(2), InvalidInput);
  EXPECT_THROW(graphs::path(1), InvalidInput);
  EXPECT_THROW(graphs::by_name("torus", 4), InvalidInput);
}

TEST(Kernel, LazySimpleFormula) {
  const auto k2 = lazy_simple_kernel(graphs::complete(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(k2(i, j), 0.5);
  const auto c4 = lazy_simple_kernel(graphs::cycle(4));
  EXPECT_EQ(c4(0, 1), 0.25);
  EXPECT_EQ(c4(0, 3), 0.25);
  EXPECT_EQ(c4(0, 2), 0.0);
  EXPECT_THROW(lazy_simple_kernel(GraphSnapshot(3, {{0, 1}})), InvalidInput);
}

TEST(Kernel, LazySimpleStationaryIsDegreeProportional) {
  RngStream rng(1, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_connected_graph(3 + trial % 8, rng, 0.3);
    const auto p = lazy_simple_kernel(g);
    const auto pi = degree_distribution(g);
    const RowVector diff = pi.values().transpose() * p.matrix() - pi.values().transpose();
    EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(is_reversible(p, pi));
    EXPECT_TRUE(validate(p).lazy);
  }
}

TEST(Kernel, DmaxLazyOnStar) {
  const auto p = dmax_lazy_kernel(graphs::star(4));
  EXPECT_DOUBLE_EQ(p(1, 0), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(p(1, 1), 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(p(0, 0), 0.5);
  EXPECT_THROW(dmax_lazy_kernel(GraphSnapshot(3, {})), InvalidInput);
}

TEST(Kernel, MetropolisOnStar) {
  const auto p = lazy_metropolis_kernel(graphs::star(4));
  EXPECT_DOUBLE_EQ(p(1, 0), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(p(0, 1), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(p(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(p(2, 2), 5.0 / 6.0);
  EXPECT_THROW(lazy_metropolis_kernel(GraphSnapshot(2, {})), InvalidInput);
}

TEST(Kernel, MetropolisOnRegularGraph) {
  const auto p = lazy_metropolis_kernel(graphs::cycle(7));
  EXPECT_DOUBLE_EQ(p(3, 4), 0.25);
  const auto k = lazy_metropolis_kernel(graphs::complete(5));
  EXPECT_DOUBLE_EQ(k(0, 4), 1.0 / 8.0);
}

TEST(Kernel, SymmetricKernelsAreExactlySymmetric) {
  RngStream rng(2, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_connected_graph(2 + trial % 12, rng, 0.25);
    for (Kernel k : {Kernel::DmaxLazy, Kernel::LazyMetropolis}) {
      const auto p = apply_kernel(k, g);
      EXPECT_TRUE(p.matrix() == p.matrix().transpose());
      const auto d = validate(p);
      EXPECT_TRUE(d.stochastic && d.lazy && d.irreducible);
      EXPECT_TRUE(is_reversible(p, ProbabilityVector::uniform(g.size())));
    }
  }
}

TEST(Kernel, NamesRoundTrip) {
  for (Kernel k : {Kernel::LazySimple, Kernel::DmaxLazy, Kernel::LazyMetropolis})
    EXPECT_EQ(kernel_from_string(to_string(k)), k);
  EXPECT_THROW(kernel_from_string("beta"), InvalidInput);
}

TEST(Sisyphus, CentersAndPeriod) {
  const int n = 5;
  const auto d = sisyphus_schedule(n);
  EXPECT_EQ(d.graph_at(1), graphs::star(n, 1));
  for (Time t = 1; t <= 12; ++t) {
    const auto g = d.graph_at(t);
    EXPECT_EQ(g.edge_count(), static_cast<std::size_t>(n - 1));
    EXPECT_EQ(g.degree(sisyphus_center(n, t)), n - 1);
    EXPECT_EQ(g, d.graph_at(t + n - 1));
  }
  EXPECT_THROW(sisyphus_schedule(2), InvalidInput);
}

TEST(Sisyphus, LeavesOnlyMoveToCenter) {
  const int n = 7;
  const auto s = sisyphus_schedule(n).to_chain_schedule();
  EXPECT_EQ(s.kind(), ScheduleKind::Cyclic);
  EXPECT_EQ(s.period(), Time{n - 1});
  for (Time t = 1; t <= n - 1; ++t) {
    const auto& p = s.at(t);
    const Vertex c = sisyphus_center(n, t);
    for (Vertex u = 0; u < n; ++u) {
      if (u == c) continue;
      for (Vertex v = 0; v < n; ++v)
        if (v != u && v != c) {
          EXPECT_EQ(p(u, v), 0.0);
        }
      EXPECT_EQ(p(u, u), 0.5);
    }
  }
  EXPECT_FALSE(s.declared_pi());  // star degree sequences change with the center
}

TEST(DoubleStar, Structure) {
  const auto ds = ot_double_star(4);
  EXPECT_EQ(ds.graph.size(), 8);
  EXPECT_EQ(ds.graph.edge_count(), 7u);
  EXPECT_TRUE(ds.graph.has_edge(ds.u(0), ds.w(0)));
  for (int i = 1; i < 4; ++i) {
    EXPECT_TRUE(ds.graph.has_edge(ds.u(0), ds.u(i)));
    EXPECT_TRUE(ds.graph.has_edge(ds.w(0), ds.w(i)));
  }
  EXPECT_EQ(ds.schedule.order(), 4);
  EXPECT_EQ(ds.schedule.at(5), ds.graph);
  for (Time t = 1; t <= 4; ++t) EXPECT_TRUE(ds.schedule.at(t).connected());
  // At time 2 the hubs are u_1 and w_1.
  EXPECT_TRUE(ds.schedule.at(2).has_edge(ds.u(1), ds.w(1)));
  EXPECT_THROW(ot_double_star(1), InvalidInput);
}

TEST(DoubleStar, ScheduleSharesDegreeSequenceUpToRelabeling) {
  const auto s = ot_double_star(5).schedule.dynamic(Kernel::LazyMetropolis).to_chain_schedule();
  EXPECT_EQ(s.period(), Time{5});
  ASSERT_TRUE(s.declared_pi());
  for (Time t = 1; t <= 5; ++t) EXPECT_TRUE(is_reversible(s.at(t), *s.declared_pi()));
}

TEST(Permutation, RejectsNonPermutation) {
  EXPECT_THROW(PermutationSchedule(graphs::path(3), {0, 0, 1}), InvalidInput);
  EXPECT_THROW(PermutationSchedule(graphs::path(3), {0, 1}), InvalidInput);
}

TEST(DynamicSchedule, DeduplicatesSnapshots) {
  DynamicGraphSchedule d;
  d.n = 4;
  d.generator = [](Time t) { return t % 2 ? graphs::cycle(4) : graphs::path(4); };
  d.period = 6;
  const auto s = d.to_chain_schedule();
  EXPECT_EQ(s.distinct_matrices().size(), 2u);
  EXPECT_EQ(s.index_at(1), s.index_at(3));
  EXPECT_NE(s.index_at(1), s.index_at(2));
  EXPECT_FALSE(s.declared_pi());
}

TEST(DynamicSchedule, CommonDegreeSequenceDeclaresPi) {
  DynamicGraphSchedule d;
  d.n = 4;
  d.generator = [](Time t) { return graphs::cycle(4).permuted(t % 2 ? std::vector<Vertex>{0, 1, 2, 3} : std::vector<Vertex>{0, 2, 1, 3}); };
  d.period = 2;
  const auto s = d.to_chain_schedule();
  ASSERT_TRUE(s.declared_pi());
  for (Time t = 1; t <= 2; ++t) EXPECT_TRUE(is_reversible(s.at(t), *s.declared_pi()));
}

TEST(DynamicSchedule, HorizonAndValidation) {
  DynamicGraphSchedule d;
  d.n = 3;
  d.generator = [](Time) { return graphs::path(3); };
  d.horizon = 4;
  const auto s = d.to_chain_schedule();
  EXPECT_EQ(s.kind(), ScheduleKind::Generated);
  EXPECT_THROW(d.graph_at(5), HorizonExceeded);
  d.period = 2;
  EXPECT_THROW(d.to_chain_schedule(), InvalidInput);
  DynamicGraphSchedule bad;
  bad.n = 4;
  bad.generator = [](Time) { return GraphSnapshot(4, {{0, 1}, {2, 3}}); };
  bad.period = 1;
  bad.kernel = Kernel::LazyMetropolis;
  bad.require_connected = true;
  EXPECT_THROW(bad.to_chain_schedule(), InvalidInput);
}

TEST(RandomCyclic, DeterministicAndConnected) {
  const auto a = random_cyclic_graphs(10, 3, 42, 0.3);
  const auto b = random_cyclic_graphs(10, 3, 42, 0.3);
  const auto c = random_cyclic_graphs(10, 3, 43, 0.3);
  bool differs = false;
  for (Time t = 1; t <= 3; ++t) {
    EXPECT_EQ(a.graph_at(t), b.graph_at(t));
    EXPECT_TRUE(a.graph_at(t).connected());
    differs = differs || !(a.graph_at(t) == c.graph_at(t));
  }
  EXPECT_TRUE(differs);
  const auto s = a.to_chain_schedule();
  ASSERT_TRUE(s.declared_pi());
  EXPECT_EQ(*s.declared_pi(), ProbabilityVector::uniform(10));
}

TEST(Descriptor, BuildsEachType) {
  auto build = [](const Json& j) {
    const auto doc = JsonDoc::from_value(j);
    return schedule_from_descriptor(JsonReader(doc, ""));
  };
  EXPECT_EQ(build({{"type", "graph"}, {"graph", "cycle"}, {"n", 5}}).size(), 5);
  EXPECT_EQ(build({{"type", "sisyphus"}, {"n", 6}}).period(), Time{5});
  EXPECT_EQ(build({{"type", "double_star"}, {"m", 3}}).size(), 6);
  EXPECT_EQ(build({{"type", "random_cyclic"}, {"n", 8}, {"period", 2}, {"seed", 5}}).period(), Time{2});
  const auto gs = build({{"type", "graphs"},
                         {"graphs", {{{"n", 3}, {"edges", {{0, 1}, {1, 2}}}}, {{"n", 3}, {"edges", {{0, 2}, {1, 2}}}}}},
                         {"kernel", "lazy_metropolis"}});
  EXPECT_EQ(gs.period(), Time{2});
  EXPECT_THROW(build({{"type", "graph"}, {"graph", "cycle"}, {"n", 5}, {"kernel", "beta"}}), ConfigError);
  EXPECT_THROW(build({{"type", "wheel"}}), ConfigError);
  EXPECT_THROW(build({{"type", "graph"}, {"graph", "cycle"}, {"n", 1}}), ConfigError);
  EXPECT_THROW(build({{"type", "graph"}, {"graph", "cycle"}, {"n", 5}, {"extra", 1}}), ConfigError);
}

}  // namespace
}  // namespace dynwalk
