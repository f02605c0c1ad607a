#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

namespace gfact {
namespace {

using testing::all_simple_paths;
using testing::c4;
using testing::p3;

TEST(ThetaDifference, EdgeWithItself) {
  const WeightedGraph g = testing::k2(7);
  const auto d = apsp(g);
  EXPECT_EQ(theta_difference(g, d, 0, 0), -2 * 7);
  EXPECT_TRUE(theta_related(g, d, 0, 0));
}

TEST(ThetaDifference, AdjacentPathEdgesUnrelated) {
  const WeightedGraph g = p3();
  const auto d = apsp(g);
  EXPECT_EQ(theta_difference(g, d, 0, 1), 0);
  EXPECT_FALSE(theta_related(g, d, 0, 1));
}

TEST(ThetaDifference, OppositeCycleEdgesRelated) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  // ab vs cd: |difference| = 2.
  EXPECT_EQ(std::abs(theta_difference(g, d, 0, 2)), 2);
  EXPECT_TRUE(theta_related(g, d, 0, 2));
}

TEST(Theta, SymmetricAndReflexiveExhaustively) {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.uniform(2, 10);
    const WeightedGraph g = random_connected(n, rng.uniform(n - 1, n * (n - 1) / 2), 3, rng);
    const auto d = apsp(g);
    for (int e = 0; e < g.edge_count(); ++e) {
      EXPECT_TRUE(theta_related(g, d, e, e));
      for (int f = 0; f < g.edge_count(); ++f)
        EXPECT_EQ(theta_related(g, d, e, f), theta_related(g, d, f, e));
    }
  }
}

TEST(SquareProperty, UnitCycleClosesSquare) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  EXPECT_TRUE(satisfies_square_property(g, d, 0, 3));  // ab and ad, x = c
}

TEST(SquareProperty, PathHasNoSquare) {
  const WeightedGraph g = p3();
  const auto d = apsp(g);
  EXPECT_FALSE(satisfies_square_property(g, d, 0, 1));
}

TEST(SquareProperty, UnequalOppositeWeightsFail) {
  // Weights 1,2,2,1 in order ab,bc,cd,da: opposite of ab is cd with weight 2.
  const WeightedGraph g = c4(1, 2, 2, 1);
  const auto d = apsp(g);
  EXPECT_FALSE(satisfies_square_property(g, d, 0, 3));
}

TEST(SquareProperty, NonAdjacentEdgesAreAnError) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  EXPECT_THROW(satisfies_square_property(g, d, 0, 2), std::invalid_argument);
}

TEST(Tau, AdjacentWithoutSquare) {
  const WeightedGraph g = p3();
  const auto d = apsp(g);
  EXPECT_TRUE(tau_related(g, d, 0, 1));
}

TEST(Tau, SquashedBySquare) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  EXPECT_FALSE(tau_related(g, d, 0, 3));
}

TEST(Tau, NonAdjacentNeverRelated) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  EXPECT_FALSE(tau_related(g, d, 0, 2));
}

TEST(ThetaT, RequiresTreeMembership) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  const std::vector<int> tree{0, 1, 2};  // ab, bc, cd spans the cycle
  EXPECT_TRUE(theta_t_related(g, d, tree, 0, 2));   // theta-related, cd in tree
  EXPECT_TRUE(theta_t_related(g, d, tree, 1, 3));   // bc in tree
  EXPECT_FALSE(theta_t_related(g, d, tree, 0, 1));  // not theta-related
}

TEST(ThetaT, ThetaPairOutsideTreeIsUnrelated) {
  // Ladder: rails a1-a2-a3 and b1-b2-b3 with rungs between; a tree of all
  // rails plus the first rung leaves two theta-related rungs outside it.
  const WeightedGraph g({"a1", "a2", "a3", "b1", "b2", "b3"},
                        {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1},
                         {0, 3, 1}, {1, 4, 1}, {2, 5, 1}});
  const auto d = apsp(g);
  const std::vector<int> tree{0, 1, 2, 3, 4};
  ASSERT_TRUE(theta_related(g, d, 5, 6));
  EXPECT_FALSE(theta_t_related(g, d, tree, 5, 6));
  EXPECT_TRUE(theta_t_related(g, d, tree, 4, 5));  // first rung is in the tree
}

TEST(ThetaT, NonSpanningTreeRejected) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  EXPECT_THROW(theta_t_related(g, d, {0, 1}, 0, 2), std::invalid_argument);
  EXPECT_THROW(theta_t_related(g, d, {0, 1, 2, 3}, 0, 2), std::invalid_argument);
}

TEST(RelationGraph, PathThetaHasNoAdjacency) {
  const WeightedGraph g = p3();
  const auto d = apsp(g);
  const auto rg = build_relation_graph(g, d, RelationKind::theta);
  EXPECT_TRUE(rg.adj[0].empty());
  EXPECT_TRUE(rg.adj[1].empty());
  const auto classes = equivalence_classes(rg);
  EXPECT_EQ(classes.count(), 2);
}

TEST(RelationGraph, PathThetaUnionTauJoins) {
  const WeightedGraph g = p3();
  const auto d = apsp(g);
  const auto rg = build_relation_graph(g, d, RelationKind::theta_union_tau);
  ASSERT_EQ(rg.adj[0].size(), 1u);
  EXPECT_EQ(rg.adj[0][0].to, 1);
  EXPECT_EQ(rg.adj[0][0].tag, RelationTag::tau);
  EXPECT_EQ(equivalence_classes(rg).count(), 1);
}

TEST(RelationGraph, UnitCycleThetaPairsOppositeEdges) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  const auto classes = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
  ASSERT_EQ(classes.count(), 2);
  EXPECT_EQ(classes.classes[0], (std::vector<int>{0, 2}));
  EXPECT_EQ(classes.classes[1], (std::vector<int>{1, 3}));
}

TEST(RelationGraph, TauAgreesWithPairwiseDefinition) {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.uniform(3, 9);
    const WeightedGraph g = random_connected(n, rng.uniform(n - 1, n * (n - 1) / 2), 3, rng);
    const auto d = apsp(g);
    const auto rg = build_relation_graph(g, d, RelationKind::theta_union_tau);
    std::set<std::pair<int, int>> tau_edges;
    for (int e = 0; e < g.edge_count(); ++e)
      for (const auto& adj : rg.adj[e])
        if (adj.tag == RelationTag::tau)
          tau_edges.insert({std::min(e, adj.to), std::max(e, adj.to)});
    for (int e = 0; e < g.edge_count(); ++e) {
      for (int f = e + 1; f < g.edge_count(); ++f) {
        // The graph stores a tau adjacency for tau-related pairs that are
        // not already theta-related.
        const bool expect_tau = tau_related(g, d, e, f) && !theta_related(g, d, e, f);
        EXPECT_EQ(tau_edges.count({e, f}) > 0, expect_tau)
            << "edges " << e << "," << f;
      }
    }
  }
}

TEST(RelationGraph, ThetaAdjacencyMatchesDefinition) {
  Rng rng(29);
  const WeightedGraph g = random_minimal(7, 12, 3, rng);
  const auto d = apsp(g);
  const auto rg = build_relation_graph(g, d, RelationKind::theta);
  for (int e = 0; e < g.edge_count(); ++e) {
    std::set<int> neighbors;
    for (const auto& adj : rg.adj[e]) {
      EXPECT_EQ(adj.tag, RelationTag::theta);
      neighbors.insert(adj.to);
    }
    for (int f = 0; f < g.edge_count(); ++f) {
      if (f == e) continue;
      EXPECT_EQ(neighbors.count(f) > 0, theta_related(g, d, e, f));
    }
  }
}

TEST(RelationGraph, ClassesInvariantUnderEdgeOrder) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform(3, 8);
    const WeightedGraph g = random_minimal(n, rng.uniform(n - 1, n * (n - 1) / 2), 3, rng);
    // Reverse the edge list; classes must describe the same edge sets.
    std::vector<Edge> reversed(g.edges().rbegin(), g.edges().rend());
    const WeightedGraph h(g.labels(), reversed);
    const auto cg = equivalence_classes(build_relation_graph(g, apsp(g), RelationKind::theta));
    const auto ch = equivalence_classes(build_relation_graph(h, apsp(h), RelationKind::theta));
    ASSERT_EQ(cg.count(), ch.count());
    const int m = g.edge_count();
    std::set<std::set<std::pair<int, int>>> sets_g, sets_h;
    auto key = [](const WeightedGraph& gr, const std::vector<int>& cls) {
      std::set<std::pair<int, int>> out;
      for (int e : cls) {
        const Edge& ed = gr.edge(e);
        out.insert({std::min(ed.u, ed.v), std::max(ed.u, ed.v)});
      }
      return out;
    };
    for (int k = 0; k < cg.count(); ++k) {
      sets_g.insert(key(g, cg.classes[k]));
      sets_h.insert(key(h, ch.classes[k]));
    }
    EXPECT_EQ(sets_g, sets_h);
    (void)m;
  }
}

TEST(ClassPathSum, EmptyContributionOutsideClass) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  const auto classes = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
  // Path a-b uses only class of ab; the other class contributes zero.
  const int other = 1 - classes.class_of[0];
  EXPECT_EQ(class_path_sum(g, d, classes, {0, 1}, other), 0);
}

TEST(ClassPathSum, SingleEdgeTelescopesToTwiceDistance) {
  const WeightedGraph g = testing::k2(5);
  const auto d = apsp(g);
  const auto classes = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
  EXPECT_EQ(class_path_sum(g, d, classes, {0, 1}, 0), 10);
}

TEST(ClassPathSum, BothCycleArcsAgreePerClass) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  const auto classes = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
  for (int k = 0; k < classes.count(); ++k) {
    const Weight left = class_path_sum(g, d, classes, {0, 1, 2}, k);
    const Weight right = class_path_sum(g, d, classes, {0, 3, 2}, k);
    EXPECT_EQ(left, right);
  }
}

TEST(ClassPathSum, NonAdjacentStepIsAnError) {
  const WeightedGraph g = c4();
  const auto d = apsp(g);
  const auto classes = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
  EXPECT_THROW(class_path_sum(g, d, classes, {0, 2}, 0), std::invalid_argument);
}

TEST(ClassPathSum, WalkInvarianceOnRandomGraphs) {
  Rng rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.uniform(3, 9);
    const WeightedGraph g = random_minimal(n, rng.uniform(n - 1, n * (n - 1) / 2), 3, rng);
    const auto d = apsp(g);
    const auto classes = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
    const int u = rng.uniform(0, n - 1);
    int v = rng.uniform(0, n - 1);
    if (u == v) v = (v + 1) % n;
    const auto walk1 = random_walk_between(g, u, v, rng);
    const auto walk2 = random_walk_between(g, u, v, rng);
    for (int k = 0; k < classes.count(); ++k)
      EXPECT_EQ(class_path_sum(g, d, classes, walk1, k),
                class_path_sum(g, d, classes, walk2, k));
  }
}

TEST(PathCrossing, EveryPathMeetsTheClassOfItsEndpointsEdge) {
  Rng rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = rng.uniform(3, 7);
    const WeightedGraph g = random_minimal(n, rng.uniform(n - 1, n * (n - 1) / 2), 3, rng);
    const auto d = apsp(g);
    const auto classes = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
    for (int e = 0; e < g.edge_count(); ++e) {
      const int k = classes.class_of[e];
      const Edge& ed = g.edge(e);
      for (const auto& path : all_simple_paths(g, ed.u, ed.v)) {
        bool crossed = false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          crossed |= classes.class_of[*g.find_edge(path[i], path[i + 1])] == k;
        EXPECT_TRUE(crossed);
      }
    }
  }
}

TEST(ThetaTCoarsening, TreeClassesRefineThetaClasses) {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform(3, 9);
    const WeightedGraph g = random_minimal(n, rng.uniform(n - 1, n * (n - 1) / 2), 3, rng);
    const auto d = apsp(g);
    // A random spanning tree via randomized BFS order.
    const auto perm = random_permutation(n, rng);
    std::vector<int> tree;
    {
      std::vector<char> seen(n, 0);
      std::vector<int> stack{perm[0]};
      seen[perm[0]] = 1;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& inc : g.neighbors(v)) {
          if (seen[inc.to]) continue;
          seen[inc.to] = 1;
          tree.push_back(inc.edge);
          stack.push_back(inc.to);
        }
      }
    }
    const auto theta = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
    const auto theta_t =
        equivalence_classes(build_relation_graph(g, d, RelationKind::theta_t, tree));
    // Every theta_T class sits inside one theta class and holds a tree edge.
    std::vector<char> in_tree(g.edge_count(), 0);
    for (int e : tree) in_tree[e] = 1;
    EXPECT_LE(theta_t.count(), n - 1);
    for (const auto& cls : theta_t.classes) {
      bool has_tree_edge = false;
      for (int e : cls) {
        EXPECT_EQ(theta.class_of[e], theta.class_of[cls.front()]);
        has_tree_edge |= in_tree[e];
      }
      EXPECT_TRUE(has_tree_edge);
    }
  }
}

}  // namespace
}  // namespace gfact
