#pragma once
// Spanning-tree pseudofactorization speedup: finds a spanning tree T* whose
// tree-restricted relation theta_T* yields exactly the theta-hat equivalence
// classes, by growing one class at a time and swapping discovered edges into
// the tree whenever their tree path crosses an unmarked edge. After APSP
// this computes the classes in O(|V||E|) instead of O(|E|^2).

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include <gfact/graph.hpp>
#include <gfact/metric.hpp>
#include <gfact/relations.hpp>

namespace gfact {

// Mutable state of the tree-swap run: the current spanning tree, the
// relation graph restricted to tree-incident adjacencies, and per-edge class
// marks. Holds references to the input graph and distances; callers keep
// both alive for the lifetime of the state.
//
// Adjacency lists are append-only with a companion bit matrix as the source
// of truth; removals just clear bits and stale list entries are skipped
// during iteration. Insertions total O(|V||E|) over a run, which bounds the
// stale entries too.
class TreeState {
 public:
  TreeState(const WeightedGraph& g, const DistanceMatrix& d) : g_(&g), d_(&d) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    in_tree_.assign(m, 0);
    mark_.assign(m, -1);
    tree_adj_.assign(n, {});
    rel_adj_.assign(m, {});
    adj_bits_.assign((static_cast<std::size_t>(m) * m + 63) / 64, 0);

    // Initial spanning tree by BFS from vertex 0, adjacency in input order.
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    seen[0] = 1;
    queue.push(0);
    int reached = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (const auto& inc : g.neighbors(v)) {
        if (seen[inc.to]) continue;
        seen[inc.to] = 1;
        ++reached;
        add_tree_edge(inc.edge);
        queue.push(inc.to);
      }
    }
    if (reached != n)
      throw std::invalid_argument("spanning tree construction requires a connected graph");

    for (int t = 0; t < m; ++t) {
      if (!in_tree_[t]) continue;
      attach_relation_edges(t);
    }
  }

  bool in_tree(int e) const { return in_tree_[e] != 0; }
  int mark(int e) const { return mark_[e]; }
  void set_mark(int e, int cls) { mark_[e] = cls; }
  int swap_count() const { return swap_count_; }

  std::vector<int> tree_edges() const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(in_tree_.size()); ++e)
      if (in_tree_[e]) out.push_back(e);
    return out;
  }

  bool related(int e, int f) const {
    const std::size_t bit = static_cast<std::size_t>(e) * g_->edge_count() + f;
    return (adj_bits_[bit >> 6] >> (bit & 63)) & 1;
  }

  // Live neighbors of e in the restricted relation graph, in first-insertion
  // order.
  std::vector<int> relation_neighbors(int e) const {
    std::vector<int> out;
    out.reserve(rel_adj_[e].size());
    for (int f : rel_adj_[e])
      if (related(e, f)) out.push_back(f);
    return out;
  }

  // The unique path between two vertices through the current tree, as edge
  // ids. O(n) via DFS over tree adjacency.
  std::vector<int> tree_path(int a, int b) const {
    if (a == b) return {};
    const int n = g_->vertex_count();
    std::vector<int> parent_edge(n, -1);
    std::vector<int> parent(n, -1);
    std::vector<int> stack{a};
    parent[a] = a;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (v == b) break;
      for (const auto& [to, e] : tree_adj_[v]) {
        if (parent[to] != -1) continue;
        parent[to] = v;
        parent_edge[to] = e;
        stack.push_back(to);
      }
    }
    if (parent[b] == -1)
      throw std::logic_error("tree does not connect queried vertices");
    std::vector<int> path;
    for (int v = b; v != a; v = parent[v]) path.push_back(parent_edge[v]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  // Fundamental-cycle exchange: `remove` must lie on the tree path between
  // the endpoints of `add` and must be unmarked. Marked edges never leave
  // the tree, so discovered relation-graph components only grow.
  void swap_edge(int add, int remove) {
    if (in_tree_[add]) throw std::logic_error("swap: edge to add already in tree");
    if (!in_tree_[remove]) throw std::logic_error("swap: edge to remove not in tree");
    if (mark_[remove] != -1) throw std::logic_error("swap: removing a marked edge");
    const Edge& ae = g_->edge(add);
    bool on_path = false;
    for (int e : tree_path(ae.u, ae.v)) on_path |= (e == remove);
    if (!on_path)
      throw std::logic_error("swap: removed edge not on the fundamental cycle");
    if (++swap_count_ > g_->vertex_count() - 1)
      throw std::logic_error("swap budget exceeded: more than n-1 tree additions");

    remove_tree_edge(remove);
    add_tree_edge(add);

    // Adjacencies of the removed edge survive only toward tree edges; the
    // added edge gains its full theta adjacency.
    for (int f : rel_adj_[remove])
      if (related(remove, f) && !in_tree_[f]) clear_bit(remove, f);
    attach_relation_edges(add);
  }

 private:
  void add_tree_edge(int e) {
    in_tree_[e] = 1;
    const Edge& ed = g_->edge(e);
    tree_adj_[ed.u].push_back({ed.v, e});
    tree_adj_[ed.v].push_back({ed.u, e});
  }

  void remove_tree_edge(int e) {
    in_tree_[e] = 0;
    const Edge& ed = g_->edge(e);
    auto drop = [e](std::vector<std::pair<int, int>>& list) {
      for (auto it = list.begin(); it != list.end(); ++it) {
        if (it->second == e) {
          list.erase(it);
          return;
        }
      }
    };
    drop(tree_adj_[ed.u]);
    drop(tree_adj_[ed.v]);
  }

  void set_bit(int e, int f) {
    const std::size_t a = static_cast<std::size_t>(e) * g_->edge_count() + f;
    const std::size_t b = static_cast<std::size_t>(f) * g_->edge_count() + e;
    adj_bits_[a >> 6] |= std::uint64_t{1} << (a & 63);
    adj_bits_[b >> 6] |= std::uint64_t{1} << (b & 63);
  }

  void clear_bit(int e, int f) {
    const std::size_t a = static_cast<std::size_t>(e) * g_->edge_count() + f;
    const std::size_t b = static_cast<std::size_t>(f) * g_->edge_count() + e;
    adj_bits_[a >> 6] &= ~(std::uint64_t{1} << (a & 63));
    adj_bits_[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
  }

  // Theta adjacencies of a tree edge against every other edge: O(m) exact
  // integer tests.
  void attach_relation_edges(int t) {
    for (int f = 0; f < g_->edge_count(); ++f) {
      if (f == t || related(t, f)) continue;
      if (theta_related(*g_, *d_, t, f)) {
        set_bit(t, f);
        rel_adj_[t].push_back(f);
        rel_adj_[f].push_back(t);
      }
    }
  }

  const WeightedGraph* g_;
  const DistanceMatrix* d_;
  std::vector<char> in_tree_;
  std::vector<int> mark_;
  std::vector<std::vector<std::pair<int, int>>> tree_adj_;  // vertex -> (to, edge)
  std::vector<std::vector<int>> rel_adj_;  // append-only; adj_bits_ is truth
  std::vector<std::uint64_t> adj_bits_;
  int swap_count_ = 0;
};

struct ThetaTreeResult {
  std::vector<int> tree;  // edge ids of T*, ascending
  EquivalenceClasses classes;
};

namespace detail {

// Debug assertion: every marked edge's component in the current restricted
// relation graph must equal its full theta-hat class.
inline void check_tree_invariant(const WeightedGraph& g, const TreeState& state,
                                 const EquivalenceClasses& reference) {
  const int m = g.edge_count();
  std::vector<char> seen(m, 0);
  for (int start = 0; start < m; ++start) {
    if (state.mark(start) == -1 || seen[start]) continue;
    std::vector<int> members;
    std::queue<int> queue;
    seen[start] = 1;
    queue.push(start);
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop();
      members.push_back(e);
      for (int f : state.relation_neighbors(e)) {
        if (!seen[f]) {
          seen[f] = 1;
          queue.push(f);
        }
      }
    }
    std::sort(members.begin(), members.end());
    if (members != reference.classes[reference.class_of[start]])
      throw std::logic_error("tree-relation invariant violated: class mismatch");
  }
}

}  // namespace detail

inline ThetaTreeResult find_theta_tree(const WeightedGraph& g, const DistanceMatrix& d,
                                       bool check_invariant = false) {
  if (!is_connected(g))
    throw std::invalid_argument("find_theta_tree requires a connected graph");
  if (!is_minimal(g, d))
    throw std::invalid_argument("find_theta_tree requires a minimal graph");

  const int m = g.edge_count();
  TreeState state(g, d);

  EquivalenceClasses reference;
  if (check_invariant)
    reference = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));

  EquivalenceClasses out;
  out.class_of.assign(m, -1);
  for (int start = 0; start < m; ++start) {
    if (state.mark(start) != -1) continue;
    if (check_invariant) detail::check_tree_invariant(g, state, reference);
    const int cls = out.count();
    std::queue<int> frontier;  // BFS over the restricted relation graph
    std::queue<int> pending;   // discovered edges awaiting a tree-path check
    state.set_mark(start, cls);
    frontier.push(start);
    pending.push(start);
    while (!frontier.empty() || !pending.empty()) {
      while (!frontier.empty()) {
        const int e = frontier.front();
        frontier.pop();
        for (int f : state.relation_neighbors(e)) {
          if (state.mark(f) != -1) continue;
          state.set_mark(f, cls);
          frontier.push(f);
          pending.push(f);
        }
      }
      if (pending.empty()) break;
      const int ab = pending.front();
      pending.pop();
      const Edge& abe = g.edge(ab);
      int unmarked = -1;
      for (int e : state.tree_path(abe.u, abe.v)) {
        if (state.mark(e) == -1) {
          unmarked = e;
          break;
        }
      }
      if (unmarked != -1) {
        state.swap_edge(ab, unmarked);
        // Resume discovery from the added edge only: its adjacency is the
        // only one that grew.
        for (int f : state.relation_neighbors(ab)) {
          if (state.mark(f) != -1) continue;
          state.set_mark(f, cls);
          frontier.push(f);
          pending.push(f);
        }
      }
    }
    out.classes.emplace_back();
  }
  for (int e = 0; e < m; ++e) {
    out.class_of[e] = state.mark(e);
    out.classes[state.mark(e)].push_back(e);
  }
  if (check_invariant) detail::check_tree_invariant(g, state, reference);
  return {state.tree_edges(), std::move(out)};
}

}  // namespace gfact
