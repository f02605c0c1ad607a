#include <gtest/gtest.h>

#include <limits>

#include "test_util.hpp"

namespace gfact {
namespace {

using testing::bellman_ford_all_pairs;
using testing::c4;
using testing::k2;
using testing::p3;
using testing::star3;
using testing::triangle;

TEST(WeightedGraph, RejectsSelfLoopsAndBadWeights) {
  EXPECT_THROW(WeightedGraph({"a"}, {{0, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph({"a", "b"}, {{0, 1, 0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph({"a", "b"}, {{0, 1, -3}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph({"a", "b"}, {{0, 2, 1}}), std::invalid_argument);
}

TEST(WeightedGraph, DeduplicatesIdenticalEdgesRejectsConflicts) {
  const WeightedGraph g({"a", "b"}, {{0, 1, 3}, {1, 0, 3}});
  EXPECT_EQ(g.edge_count(), 1);
  EXPECT_THROW(WeightedGraph({"a", "b"}, {{0, 1, 3}, {1, 0, 4}}), std::invalid_argument);
}

TEST(Apsp, SingleEdge) {
  const auto d = apsp(k2(7));
  EXPECT_EQ(d(0, 1), 7);
  EXPECT_EQ(d(1, 0), 7);
  EXPECT_EQ(d(0, 0), 0);
  EXPECT_TRUE(d.connected());
}

TEST(Apsp, PathSumsWeights) {
  const auto d = apsp(p3(2, 3));
  EXPECT_EQ(d(0, 2), 5);
}

TEST(Apsp, CycleTakesShorterArc) {
  // Opposite corners of the 1,2,1,2 cycle: min(1+2, 2+1) = 3.
  const auto d = apsp(c4(1, 2, 1, 2));
  EXPECT_EQ(d(0, 2), 3);
  EXPECT_EQ(d(1, 3), 3);
}

TEST(Apsp, ReportsDisconnected) {
  const WeightedGraph g({"a", "b", "c"}, {{0, 1, 1}});
  const auto d = apsp(g);
  EXPECT_FALSE(d.connected());
  EXPECT_EQ(d(0, 2), DistanceMatrix::kUnreachable);
}

TEST(Apsp, OverflowIsAnExplicitError) {
  const Weight huge = std::numeric_limits<Weight>::max() / 2 + 1;
  const WeightedGraph g({"a", "b", "c"}, {{0, 1, huge}, {1, 2, huge}});
  EXPECT_THROW(apsp(g), std::overflow_error);
}

TEST(Apsp, MatchesBellmanFordOracle) {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform(2, 8);
    const int m = rng.uniform(n - 1, n * (n - 1) / 2);
    const WeightedGraph g = random_connected(n, m, 4, rng);
    const auto d = apsp(g);
    const auto oracle = bellman_ford_all_pairs(g);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) EXPECT_EQ(d(u, v), oracle[u][v]);
  }
}

TEST(Minimality, TiedEdgeIsStillMinimal) {
  // The 2-edge ties with the 1+1 path; every edge realizes its distance.
  EXPECT_TRUE(is_minimal(triangle(1, 1, 2)));
  EXPECT_FALSE(is_minimal(triangle(1, 1, 3)));
}

TEST(Minimality, TreesAreMinimal) {
  EXPECT_TRUE(is_minimal(star3()));
  EXPECT_TRUE(is_minimal(p3(5, 9)));
}

TEST(Minimalize, DropsOnlyMetricSuperfluousEdges) {
  const WeightedGraph out = minimalize(triangle(1, 1, 3));
  EXPECT_EQ(out.edge_count(), 2);
  EXPECT_TRUE(is_minimal(out));
  // The metric is unchanged pairwise.
  const auto before = apsp(triangle(1, 1, 3));
  const auto after = apsp(out);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) EXPECT_EQ(before(u, v), after(u, v));
}

TEST(Minimalize, KeepsTiedEdgesAndLabels) {
  const WeightedGraph g = triangle(1, 1, 2);
  const WeightedGraph out = minimalize(g);
  EXPECT_EQ(out.edge_count(), 3);
  EXPECT_EQ(out.label(2), "c");
  const WeightedGraph tree = minimalize(star3());
  EXPECT_EQ(tree.edge_count(), 3);
}

TEST(Minimalize, IdempotentAndMetricPreservingOnRandomInputs) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.uniform(2, 9);
    const int m = rng.uniform(n - 1, n * (n - 1) / 2);
    const WeightedGraph g = random_connected(n, m, 5, rng);
    const WeightedGraph once = minimalize(g);
    const WeightedGraph twice = minimalize(once);
    EXPECT_EQ(once.edge_count(), twice.edge_count());
    EXPECT_TRUE(is_minimal(once));
    const auto before = apsp(g);
    const auto after = apsp(once);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) EXPECT_EQ(before(u, v), after(u, v));
  }
}

TEST(Minimalize, RejectsDisconnectedInput) {
  const WeightedGraph g({"a", "b", "c"}, {{0, 1, 1}});
  EXPECT_THROW(minimalize(g), std::invalid_argument);
}

}  // namespace
}  // namespace gfact
