#pragma once
// Exact all-pairs shortest paths (Dijkstra from every source over a binary
// heap) with checked 64-bit arithmetic, plus the minimal-graph predicate and
// the metric-preserving edge filter.

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include <gfact/graph.hpp>

namespace gfact {

class DistanceMatrix {
 public:
  static constexpr Weight kUnreachable = -1;

  DistanceMatrix() = default;
  explicit DistanceMatrix(int n)
      : n_(n), d_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  Weight operator()(int u, int v) const {
    return d_[static_cast<std::size_t>(u) * n_ + v];
  }
  Weight& at(int u, int v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }

  int size() const { return n_; }
  bool connected() const { return connected_; }
  void set_connected(bool c) { connected_ = c; }

 private:
  int n_ = 0;
  bool connected_ = true;
  std::vector<Weight> d_;
};

inline DistanceMatrix apsp(const WeightedGraph& g) {
  const int n = g.vertex_count();
  DistanceMatrix dm(n);
  constexpr Weight kMax = std::numeric_limits<Weight>::max();
  std::vector<Weight> dist(n);
  using Item = std::pair<Weight, int>;
  // Sources are independent; results are merged in ascending source index.
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), DistanceMatrix::kUnreachable);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[src] = 0;
    heap.push({0, src});
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du != dist[u]) continue;
      for (const auto& inc : g.neighbors(u)) {
        const Weight w = g.weight(inc.edge);
        if (du > kMax - w)
          throw std::overflow_error("distance overflow during shortest paths");
        const Weight cand = du + w;
        if (dist[inc.to] == DistanceMatrix::kUnreachable || cand < dist[inc.to]) {
          dist[inc.to] = cand;
          heap.push({cand, inc.to});
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      dm.at(src, v) = dist[v];
      if (dist[v] == DistanceMatrix::kUnreachable) dm.set_connected(false);
    }
  }
  return dm;
}

// True iff every edge is a shortest path between its endpoints.
inline bool is_minimal(const WeightedGraph& g, const DistanceMatrix& d) {
  for (const Edge& e : g.edges())
    if (d(e.u, e.v) != e.w) return false;
  return true;
}

inline bool is_minimal(const WeightedGraph& g) { return is_minimal(g, apsp(g)); }

// Drops every edge whose weight strictly exceeds the distance between its
// endpoints. The path metric is unchanged: a dropped edge lies on no
// shortest path. Vertex labels are preserved.
inline WeightedGraph minimalize(const WeightedGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("minimalize requires a connected graph");
  const DistanceMatrix d = apsp(g);
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    if (e.w == d(e.u, e.v)) kept.push_back(e);
  return WeightedGraph(g.labels(), kept);
}

}  // namespace gfact
