#pragma once
// Core weighted-graph type: undirected, simple, positive integer weights.
// Immutable after construction; all algorithms in this library take graphs
// by const reference and never mutate shared state.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gfact {

using Weight = std::int64_t;

struct Edge {
  int u = 0;
  int v = 0;
  Weight w = 1;
};

class WeightedGraph {
 public:
  struct Incident {
    int to;
    int edge;
  };

  WeightedGraph() = default;

  // Vertex ids are dense 0..n-1, edge ids dense 0..m-1 in input order.
  // Identical duplicate edges are merged; conflicting duplicates rejected.
  WeightedGraph(std::vector<std::string> labels, const std::vector<Edge>& edges)
      : labels_(std::move(labels)) {
    const int n = static_cast<int>(labels_.size());
    adj_.resize(n);
    for (const Edge& e : edges) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw std::invalid_argument("edge endpoint out of range");
      if (e.u == e.v)
        throw std::invalid_argument("self-loop on vertex " + labels_[e.u]);
      if (e.w <= 0)
        throw std::invalid_argument("edge weight must be a positive integer");
      if (auto prev = find_edge(e.u, e.v)) {
        if (edges_[*prev].w != e.w)
          throw std::invalid_argument("conflicting duplicate edge " +
                                      labels_[e.u] + "-" + labels_[e.v]);
        continue;
      }
      const int id = static_cast<int>(edges_.size());
      edges_.push_back(e);
      pair_to_edge_.emplace(pair_key(e.u, e.v), id);
      adj_[e.u].push_back({e.v, id});
      adj_[e.v].push_back({e.u, id});
    }
  }

  static WeightedGraph with_default_labels(int n, const std::vector<Edge>& edges) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return WeightedGraph(std::move(labels), edges);
  }

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& label(int v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }

  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  Weight weight(int e) const { return edges_.at(e).w; }

  const std::vector<Incident>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

  std::optional<int> find_edge(int u, int v) const {
    auto it = pair_to_edge_.find(pair_key(u, v));
    if (it == pair_to_edge_.end()) return std::nullopt;
    return it->second;
  }
  bool has_edge(int u, int v) const { return find_edge(u, v).has_value(); }

  // The endpoint of edge e that is not v.
  int other_endpoint(int e, int v) const {
    const Edge& ed = edges_.at(e);
    if (ed.u == v) return ed.v;
    if (ed.v == v) return ed.u;
    throw std::invalid_argument("vertex is not an endpoint of edge");
  }

  Weight total_weight() const {
    Weight s = 0;
    for (const Edge& e : edges_) s += e.w;
    return s;
  }

 private:
  static std::uint64_t pair_key(int u, int v) {
    const std::uint64_t a = static_cast<std::uint32_t>(u < v ? u : v);
    const std::uint64_t b = static_cast<std::uint32_t>(u < v ? v : u);
    return (a << 32) | b;
  }

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incident>> adj_;
  std::unordered_map<std::uint64_t, int> pair_to_edge_;
};

inline bool is_connected(const WeightedGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& inc : g.neighbors(v)) {
      if (!seen[inc.to]) {
        seen[inc.to] = 1;
        ++reached;
        stack.push_back(inc.to);
      }
    }
  }
  return reached == n;
}

}  // namespace gfact
