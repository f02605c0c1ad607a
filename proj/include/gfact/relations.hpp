#pragma once
// Edge relations driving decomposition: the theta difference, the theta and
// tau relations, the tree-restricted theta_T, and the relation graph on edge
// ids whose connected components are the equivalence classes of the
// transitive closure.
//
// All relation tests are exact integer comparisons; "related by theta" means
// the theta difference is nonzero exactly, with no epsilon anywhere.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include <gfact/graph.hpp>
#include <gfact/metric.hpp>

namespace gfact {

// [d(u,a) - d(u,b)] - [d(v,a) - d(v,b)] for edges uv and ab. The sign
// depends on endpoint orientation; zero-ness does not.
inline Weight theta_difference(const DistanceMatrix& d, int u, int v, int a, int b) {
  return (d(u, a) - d(u, b)) - (d(v, a) - d(v, b));
}

inline Weight theta_difference(const WeightedGraph& g, const DistanceMatrix& d,
                               int e, int f) {
  const Edge& ee = g.edge(e);
  const Edge& ff = g.edge(f);
  return theta_difference(d, ee.u, ee.v, ff.u, ff.v);
}

inline bool theta_related(const WeightedGraph& g, const DistanceMatrix& d,
                          int e, int f) {
  return theta_difference(g, d, e, f) != 0;
}

// The shared endpoint of two distinct edges, if there is exactly one.
inline std::optional<int> shared_endpoint(const WeightedGraph& g, int e, int f) {
  if (e == f) return std::nullopt;
  const Edge& ee = g.edge(e);
  const Edge& ff = g.edge(f);
  if (ee.u == ff.u || ee.u == ff.v) return ee.u;
  if (ee.v == ff.u || ee.v == ff.v) return ee.v;
  return std::nullopt;
}

// True iff edges uv, uv' close a four-cycle uvxv' whose opposite sides have
// equal weights and are related by theta. Any one qualifying x suffices.
inline bool satisfies_square_property(const WeightedGraph& g, const DistanceMatrix& d,
                                      int e, int f) {
  const auto shared = shared_endpoint(g, e, f);
  if (!shared) throw std::invalid_argument("edges must share exactly one endpoint");
  const int u = *shared;
  const int v = g.other_endpoint(e, u);
  const int vp = g.other_endpoint(f, u);
  for (const auto& inc : g.neighbors(v)) {
    const int x = inc.to;
    if (x == u || x == vp) continue;
    const auto xvp = g.find_edge(x, vp);
    if (!xvp) continue;
    const int vx = inc.edge;
    if (g.weight(e) != g.weight(*xvp) || g.weight(f) != g.weight(vx)) continue;
    if (theta_related(g, d, e, *xvp) && theta_related(g, d, f, vx)) return true;
  }
  return false;
}

// tau relates adjacent edges that do NOT satisfy the square property; edges
// without a common endpoint are never related by tau.
inline bool tau_related(const WeightedGraph& g, const DistanceMatrix& d, int e, int f) {
  if (!shared_endpoint(g, e, f)) return false;
  return !satisfies_square_property(g, d, e, f);
}

namespace detail {

inline void check_spanning_tree(const WeightedGraph& g, const std::vector<int>& tree) {
  const int n = g.vertex_count();
  if (static_cast<int>(tree.size()) != n - 1)
    throw std::invalid_argument("spanning tree must have n-1 edges");
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (int e : tree) {
    const Edge& ed = g.edge(e);
    const int a = find(ed.u), b = find(ed.v);
    if (a == b) throw std::invalid_argument("edge set is not a spanning tree");
    parent[a] = b;
    --components;
  }
  if (components != 1) throw std::invalid_argument("edge set does not span the graph");
}

inline std::uint64_t pair_key(int e, int f) {
  const std::uint64_t a = static_cast<std::uint32_t>(e < f ? e : f);
  const std::uint64_t b = static_cast<std::uint32_t>(e < f ? f : e);
  return (a << 32) | b;
}

}  // namespace detail

// theta restricted so at least one edge lies in the spanning tree.
inline bool theta_t_related(const WeightedGraph& g, const DistanceMatrix& d,
                            const std::vector<int>& tree, int e, int f) {
  detail::check_spanning_tree(g, tree);
  std::unordered_set<int> in_tree(tree.begin(), tree.end());
  return theta_related(g, d, e, f) && (in_tree.count(e) || in_tree.count(f));
}

enum class RelationTag { theta, tau, theta_t };

enum class RelationKind { theta, theta_union_tau, theta_t };

// Unweighted graph on edge ids of the base graph; connected components are
// the equivalence classes of the transitive closure of the relation.
// Provenance tags are retained for explain output and do not affect
// components.
struct EdgeRelationGraph {
  struct Adjacency {
    int to;
    RelationTag tag;
  };
  int nodes = 0;
  std::vector<std::vector<Adjacency>> adj;

  void add(int e, int f, RelationTag tag) {
    adj[e].push_back({f, tag});
    adj[f].push_back({e, tag});
  }
};

inline EdgeRelationGraph build_relation_graph(const WeightedGraph& g,
                                              const DistanceMatrix& d,
                                              RelationKind kind,
                                              const std::vector<int>& tree = {}) {
  const int m = g.edge_count();
  EdgeRelationGraph rg;
  rg.nodes = m;
  rg.adj.resize(m);

  if (kind == RelationKind::theta_t) {
    detail::check_spanning_tree(g, tree);
    std::vector<char> in_tree(m, 0);
    for (int e : tree) in_tree[e] = 1;
    for (int t = 0; t < m; ++t) {
      if (!in_tree[t]) continue;
      for (int f = 0; f < m; ++f) {
        if (f == t) continue;
        if (in_tree[f] && f < t) continue;  // tree pair handled once
        if (theta_related(g, d, t, f)) rg.add(t, f, RelationTag::theta_t);
      }
    }
    return rg;
  }

  std::vector<char> theta_pair;  // upper-triangular flags, reused for tau pass
  if (kind == RelationKind::theta_union_tau)
    theta_pair.assign(static_cast<std::size_t>(m) * m, 0);
  for (int e = 0; e < m; ++e) {
    for (int f = e + 1; f < m; ++f) {
      if (theta_related(g, d, e, f)) {
        rg.add(e, f, RelationTag::theta);
        if (!theta_pair.empty())
          theta_pair[static_cast<std::size_t>(e) * m + f] = 1;
      }
    }
  }
  if (kind == RelationKind::theta) return rg;

  // Square scan: every theta-related equal-weight pair is a candidate pair
  // of opposite sides; when the cross pairs complete the square with equal
  // weights and a theta relation, all four corner pairs are not tau.
  auto is_theta = [&](int e, int f) {
    if (e == f) return true;
    const std::size_t lo = static_cast<std::size_t>(e < f ? e : f);
    const std::size_t hi = static_cast<std::size_t>(e < f ? f : e);
    return theta_pair[lo * m + hi] != 0;
  };
  std::unordered_set<std::uint64_t> not_tau;
  auto mark_corner = [&](int e, int f) { not_tau.insert(detail::pair_key(e, f)); };
  for (int e = 0; e < m; ++e) {
    for (int f = e + 1; f < m; ++f) {
      if (!is_theta(e, f) || g.weight(e) != g.weight(f)) continue;
      if (shared_endpoint(g, e, f)) continue;  // opposite sides are disjoint
      const int a = g.edge(e).u, b = g.edge(e).v;
      const int c = g.edge(f).u, dd = g.edge(f).v;
      const auto ac = g.find_edge(a, c), bd = g.find_edge(b, dd);
      if (ac && bd && g.weight(*ac) == g.weight(*bd) && is_theta(*ac, *bd)) {
        mark_corner(e, *ac);
        mark_corner(e, *bd);
        mark_corner(f, *ac);
        mark_corner(f, *bd);
      }
      const auto ad = g.find_edge(a, dd), bc = g.find_edge(b, c);
      if (ad && bc && g.weight(*ad) == g.weight(*bc) && is_theta(*ad, *bc)) {
        mark_corner(e, *ad);
        mark_corner(e, *bc);
        mark_corner(f, *ad);
        mark_corner(f, *bc);
      }
    }
  }
  // Complement over adjacent pairs: shared-endpoint pairs without a
  // qualifying square are tau.
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.neighbors(v);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        const int e = inc[i].edge, f = inc[j].edge;
        if (not_tau.count(detail::pair_key(e, f))) continue;
        if (!is_theta(e, f)) rg.add(e, f, RelationTag::tau);
      }
    }
  }
  return rg;
}

// A partition of edge ids 0..m-1: classes sorted by smallest member,
// members sorted ascending.
struct EquivalenceClasses {
  std::vector<int> class_of;
  std::vector<std::vector<int>> classes;

  int count() const { return static_cast<int>(classes.size()); }
};

inline EquivalenceClasses equivalence_classes(const EdgeRelationGraph& rg) {
  EquivalenceClasses out;
  out.class_of.assign(rg.nodes, -1);
  for (int start = 0; start < rg.nodes; ++start) {
    if (out.class_of[start] != -1) continue;
    const int id = out.count();
    std::vector<int> members;
    std::queue<int> queue;
    out.class_of[start] = id;
    queue.push(start);
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop();
      members.push_back(e);
      for (const auto& adj : rg.adj[e]) {
        if (out.class_of[adj.to] == -1) {
          out.class_of[adj.to] = id;
          queue.push(adj.to);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.classes.push_back(std::move(members));
  }
  return out;
}

// Witness chains: for each class, a BFS tree of pairwise relations that
// links every member back to the class representative.
struct WitnessLink {
  int from;
  int to;
  RelationTag tag;
};

inline std::vector<std::vector<WitnessLink>> relation_witness(const EdgeRelationGraph& rg) {
  std::vector<std::vector<WitnessLink>> out;
  std::vector<char> seen(rg.nodes, 0);
  for (int start = 0; start < rg.nodes; ++start) {
    if (seen[start]) continue;
    std::vector<WitnessLink> chain;
    std::queue<int> queue;
    seen[start] = 1;
    queue.push(start);
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop();
      for (const auto& adj : rg.adj[e]) {
        if (!seen[adj.to]) {
          seen[adj.to] = 1;
          chain.push_back({e, adj.to, adj.tag});
          queue.push(adj.to);
        }
      }
    }
    out.push_back(std::move(chain));
  }
  return out;
}

// Contribution of class k's edges to the theta-sum along a walk: with
// endpoints u = path.front() and v = path.back(),
//   sum over walk edges p_i p_{i+1} in class k of
//   [d(v,p_i) - d(v,p_{i+1})] - [d(u,p_i) - d(u,p_{i+1})].
// This value does not depend on the walk chosen between u and v; a
// single-edge walk uv in class k yields 2 d(u,v).
inline Weight class_path_sum(const WeightedGraph& g, const DistanceMatrix& d,
                             const EquivalenceClasses& classes,
                             const std::vector<int>& path, int k) {
  if (path.empty()) throw std::invalid_argument("empty walk");
  const int u = path.front();
  const int v = path.back();
  Weight sum = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto e = g.find_edge(path[i], path[i + 1]);
    if (!e) throw std::invalid_argument("consecutive walk vertices are not adjacent");
    if (classes.class_of[*e] != k) continue;
    sum += (d(v, path[i]) - d(v, path[i + 1])) - (d(u, path[i]) - d(u, path[i + 1]));
  }
  return sum;
}

}  // namespace gfact
