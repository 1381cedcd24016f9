#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ggpgm/family.hpp"
#include "ggpgm/pricing.hpp"
#include "test_support.hpp"

namespace ggpgm {
namespace {

using testing::line_instance;

TEST(Ordering, PositionsAndValidation) {
  const Ordering o({3, 1, 2});
  EXPECT_EQ(o.beta(3), 1);
  EXPECT_EQ(o.beta(1), 2);
  EXPECT_EQ(o.position(2), 2);
  EXPECT_TRUE(o.precedes(3, 2));
  EXPECT_FALSE(o.precedes(2, 1));
  EXPECT_THROW(Ordering({1, 1, 2}), std::invalid_argument);
  EXPECT_THROW(Ordering({0, 1}), std::invalid_argument);
  EXPECT_THROW(Ordering({1, 3}), std::invalid_argument);
  EXPECT_EQ(o.hash(), Ordering({3, 1, 2}).hash());
  EXPECT_NE(o.hash(), Ordering({1, 3, 2}).hash());
}

TEST(FamilyGraph, VertexCounts) {
  const Instance three = line_instance({{1, 0}, {2, 0}, {3, 0}}, 2, 3);
  EXPECT_EQ(FamilyGraph(three, Ordering({1, 2, 3})).n_vertices(), 8);

  const Instance one = line_instance({{3, 4}}, 6, 1);
  const FamilyGraph g(one, Ordering({1}));
  EXPECT_EQ(g.n_vertices(), 8);
  const auto paths = testing::all_paths(g);
  ASSERT_EQ(paths.size(), 1u);
  const Route r = column_of_path(g, paths[0]);
  EXPECT_EQ(r.visits, std::vector<int>{1});
  EXPECT_EQ(r.cost, 10);
  EXPECT_EQ(g.vertex_capacity(g.edge(paths[0][0]).head), 5);
}

TEST(FamilyGraph, NonUnitDemandVertexCount) {
  const Instance inst({{0, 0}, {1, 0}, {2, 0}, {0, 3}}, {1, 3, 2}, 4, 3);
  const FamilyGraph g(inst, Ordering({2, 3, 1}));
  // 2 + sum_u (d0 - d_u + 1)
  EXPECT_EQ(g.n_vertices(), 2 + 4 + 2 + 3);
}

TEST(FamilyGraph, EdgesMatchConstructionRules) {
  const Instance inst({{0, 0}, {5, 1}, {2, 7}, {9, 9}, {4, 4}}, {1, 2, 1, 1}, 3, 4);
  const Ordering order({4, 2, 1, 3});
  const FamilyGraph g(inst, order);
  std::set<std::tuple<int, int, int, int>> expected, actual;
  const int d0 = inst.capacity();
  for (int u = 1; u <= 4; ++u) {
    expected.insert({g.source(), g.vertex_of(u, d0 - inst.demand(u)), inst.dist(0, u), u});
    for (int d = 0; d <= d0 - inst.demand(u); ++d) {
      expected.insert({g.vertex_of(u, d), g.sink(), inst.dist(u, 0), kVehicleRow});
      for (int v = 1; v <= 4; ++v) {
        if (order.beta(u) < order.beta(v) && d - inst.demand(v) >= 0) {
          expected.insert({g.vertex_of(u, d), g.vertex_of(v, d - inst.demand(v)),
                           inst.dist(u, v), v});
        }
      }
    }
  }
  int sink_edges = 0, interior = 0;
  for (const FamilyEdge& e : g.edges()) {
    actual.insert({e.tail, e.head, e.cost, e.row});
    EXPECT_LT(e.tail, e.head);
    EXPECT_EQ(e.h_value(), e.head == g.sink() ? -1.0 : 1.0);
    if (e.head == g.sink()) ++sink_edges;
  }
  for (int v = 0; v < g.n_vertices(); ++v) interior += g.is_interior(v) ? 1 : 0;
  EXPECT_EQ(actual, expected);
  EXPECT_EQ(static_cast<int>(actual.size()), g.n_edges());
  EXPECT_EQ(sink_edges, interior);
  for (int v = 0; v < g.n_vertices(); ++v) {
    for (int e = g.out_begin(v); e < g.out_end(v); ++e) EXPECT_EQ(g.edge(e).tail, v);
  }
}

TEST(FamilyGraph, PathsAreExactlyTheOrderConsistentRoutes) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Instance inst = testing::random_instance(seed, 6, 1 + seed % 3, 6);
    Rng rng(seed);
    std::vector<int> seq{1, 2, 3, 4, 5, 6};
    shuffle(seq, rng);
    const Ordering order(seq);
    const FamilyGraph g(inst, order);
    std::map<std::vector<int>, std::int64_t> from_paths, from_routes;
    for (const auto& path : testing::all_paths(g)) {
      const Route r = column_of_path(g, path);
      EXPECT_TRUE(from_paths.emplace(r.visits, r.cost).second) << "two paths, one route";
    }
    for (const Route& r : enumerate_all_routes(inst)) {
      if (contains_column(order, r)) from_routes.emplace(r.visits, r.cost);
    }
    EXPECT_EQ(from_paths, from_routes);
  }
}

TEST(FamilyGraph, ReachabilityOfFirstCustomer) {
  const Instance inst = testing::random_instance(2, 4, 3, 4);
  const FamilyGraph g(inst, Ordering({2, 4, 1, 3}));
  EXPECT_TRUE(g.reachable(g.vertex_of(2, 2)));
  EXPECT_FALSE(g.reachable(g.vertex_of(2, 1)));
  EXPECT_FALSE(g.reachable(g.vertex_of(2, 0)));
  EXPECT_TRUE(g.reachable(g.vertex_of(4, 1)));
  EXPECT_TRUE(g.reachable(g.sink()));
  int usable = 0;
  for (int e = 0; e < g.n_edges(); ++e) usable += g.edge_usable(e) ? 1 : 0;
  EXPECT_EQ(usable, g.n_usable_edges());
  EXPECT_LT(usable, g.n_edges());
}

TEST(BuildOrderingFromRoute, HandTraces) {
  // a = 1 at (10,0), b = 2 at (20,0); c = 3 at (24,0) sits behind b.
  const Instance behind = line_instance({{10, 0}, {20, 0}, {24, 0}}, 3, 3);
  Rng rng(1);
  EXPECT_EQ(build_ordering_from_route(behind, make_route(behind, {1, 2}), rng).sequence(),
            (std::vector<int>{1, 2, 3}));
  // d = 3 at (0,2) is closer to the depot than to a or b: goes to the front.
  const Instance front = line_instance({{10, 0}, {20, 0}, {0, 2}}, 3, 3);
  EXPECT_EQ(build_ordering_from_route(front, make_route(front, {1, 2}), rng).sequence(),
            (std::vector<int>{3, 1, 2}));
  const Instance all = testing::random_instance(3, 5, 5, 1);
  EXPECT_EQ(build_ordering_from_route(all, make_route(all, {4, 2, 5, 1, 3}), rng).sequence(),
            (std::vector<int>{4, 2, 5, 1, 3}));
}

TEST(BuildOrderingFromRoute, TieGoesToEarlierRouteCustomer) {
  // Customer 3 at (15,5) is equidistant from 1 at (10,0) and 2 at (20,0).
  const Instance inst = line_instance({{10, 0}, {20, 0}, {15, 5}}, 3, 3, {15, 40});
  Rng rng(2);
  EXPECT_EQ(build_ordering_from_route(inst, make_route(inst, {2, 1}), rng).sequence(),
            (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(build_ordering_from_route(inst, make_route(inst, {1, 2}), rng).sequence(),
            (std::vector<int>{1, 3, 2}));
}

TEST(BuildOrderingFromRoute, LaterInsertionsSitCloserToTheAnchor) {
  // 3 and 4 both attach behind 1; 5 and 6 both go to the front.
  const Instance inst =
      line_instance({{30, 0}, {60, 0}, {31, 0}, {32, 0}, {1, 0}, {0, 1}}, 6, 6);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Rng replay(seed);
    std::vector<int> rest{3, 4, 5, 6};
    shuffle(rest, replay);
    const auto seq = build_ordering_from_route(inst, make_route(inst, {1, 2}), rng).sequence();
    std::vector<int> behind, front;
    for (int u : rest) (u <= 4 ? behind : front).push_back(u);
    const std::vector<int> expected{front[1], front[0], 1, behind[1], behind[0], 2};
    EXPECT_EQ(seq, expected) << "seed " << seed;
  }
}

TEST(BuildOrderingFromRoute, FamilyContainsItsRoute) {
  const Instance inst = testing::random_instance(17, 30, 6, 10);
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> pool(30);
    for (int k = 0; k < 30; ++k) pool[k] = k + 1;
    shuffle(pool, rng);
    const Route r = make_route(inst, {pool.begin(), pool.begin() + 1 + trial % 6});
    const Ordering o = build_ordering_from_route(inst, r, rng);
    EXPECT_TRUE(contains_column(o, r));
  }
  EXPECT_THROW(build_ordering_from_route(inst, Route{}, rng), std::invalid_argument);
}

TEST(ContainsColumn, Examples) {
  const Ordering o({1, 2, 3});
  EXPECT_TRUE(contains_column(o, Route{{1, 3}, 0}));
  EXPECT_FALSE(contains_column(o, Route{{3, 1}, 0}));
}

TEST(ColumnOfPath, RandomPathsAreFeasibleWithAdditiveCost) {
  Rng rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance inst = testing::random_instance(100 + trial % 10, 12, 2 + trial % 5, 12);
    const FamilyGraph g(inst, random_topological_order(12, rng));
    const auto path = testing::random_path(g, rng);
    const Route r = column_of_path(g, path);
    EXPECT_TRUE(check_route_feasible(inst, r.visits).ok());
    EXPECT_EQ(r.cost, route_cost(inst, r.visits));
    EXPECT_TRUE(contains_column(g.ordering(), r));
    const Duals d = testing::random_duals(inst, rng, 20.0);
    EXPECT_NEAR(testing::path_weight(g, path, d), reduced_cost(r, d), 1e-9);
  }
}

TEST(ColumnOfPath, RejectsBrokenPaths) {
  const Instance inst = testing::random_instance(4, 3, 2, 3);
  const FamilyGraph g(inst, Ordering({1, 2, 3}));
  EXPECT_THROW(column_of_path(g, std::vector<int>{}), std::invalid_argument);
  const int first = g.out_begin(g.source());
  EXPECT_THROW(column_of_path(g, std::vector<int>{first}), std::invalid_argument);
  EXPECT_THROW(column_of_path(g, std::vector<int>{g.n_edges()}), std::invalid_argument);
  const int sink_edge = g.out_end(g.vertex_of(2, 1)) - 1;
  EXPECT_THROW(column_of_path(g, std::vector<int>{first, sink_edge}), std::invalid_argument);
}

TEST(EdgeWeight, Examples) {
  const Instance inst = line_instance({{1, 0}}, 6, 1);
  Duals d = Duals::zero(inst);
  d.pi = {2.0, 5.0};
  EXPECT_DOUBLE_EQ(edge_weight(FamilyEdge{1, 2, 4, kVehicleRow}, d), 6.0);
  EXPECT_DOUBLE_EQ(edge_weight(FamilyEdge{1, 2, 3, 1}, d), -2.0);
  d.pi = {0.0, 7.0};
  EXPECT_DOUBLE_EQ(edge_weight(FamilyEdge{0, 1, 7, 1}, d), 0.0);
  EXPECT_DOUBLE_EQ(edge_weight(FamilyEdge{0, 1, 7, -1}, d), 7.0);
}

TEST(ShortestPath, MatchesPathEnumeration) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = testing::random_instance(trial, 6, 1 + trial % 4, 6);
    const FamilyGraph g(inst, random_topological_order(6, rng));
    const Duals d = testing::random_duals(inst, rng, 60.0);
    double best = 1e300;
    for (const auto& p : testing::all_paths(g)) best = std::min(best, testing::path_weight(g, p, d));
    const GraphPath sp = shortest_path(g, d);
    EXPECT_NEAR(sp.weight, best, 1e-9);
    EXPECT_NEAR(testing::path_weight(g, sp.edges, d), best, 1e-9);
  }
}

TEST(FamilyGraph, PathCombinationsConserveFlow) {
  Rng rng(41);
  const Instance inst = testing::random_instance(5, 10, 4, 10);
  const FamilyGraph g(inst, random_topological_order(10, rng));
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> flow(g.n_edges(), 0.0);
    for (int k = 0; k < 5; ++k) {
      const double w = uniform01(rng);
      for (int e : testing::random_path(g, rng)) flow[e] += w;
    }
    std::vector<double> balance(g.n_vertices(), 0.0);
    for (int e = 0; e < g.n_edges(); ++e) {
      balance[g.edge(e).tail] += flow[e];
      balance[g.edge(e).head] -= flow[e];
    }
    for (int v = 0; v < g.n_vertices(); ++v) {
      if (g.is_interior(v)) {
        EXPECT_NEAR(balance[v], 0.0, 1e-12);
      }
    }
  }
}

TEST(WriteGraphText, ListsEveryVertexAndEdge) {
  const Instance inst = testing::random_instance(4, 3, 2, 3);
  const FamilyGraph g(inst, Ordering({3, 1, 2}));
  std::ostringstream out;
  write_graph_text(g, out);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3 + g.n_vertices() + g.n_edges());
  EXPECT_NE(text.find("# ordering: 3 1 2"), std::string::npos);
}

}  // namespace
}  // namespace ggpgm
