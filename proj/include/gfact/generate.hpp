#pragma once
// Deterministic graph families for tests and the benchmark harness. All
// randomness flows through Rng, which draws bounded values by modulo so a
// fixed seed reproduces the same graphs on every run.

#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include <gfact/graph.hpp>
#include <gfact/metric.hpp>
#include <gfact/product.hpp>

namespace gfact {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi], inclusive.
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rng fork() { return Rng(next()); }

 private:
  std::mt19937_64 engine_;
};

inline WeightedGraph path_graph(const std::vector<Weight>& weights) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < weights.size(); ++i)
    edges.push_back({static_cast<int>(i), static_cast<int>(i + 1), weights[i]});
  return WeightedGraph::with_default_labels(static_cast<int>(weights.size()) + 1, edges);
}

inline WeightedGraph complete_graph(int n, Weight w = 1) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  return WeightedGraph::with_default_labels(n, edges);
}

inline WeightedGraph cycle_graph(const std::vector<Weight>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, weights[i]});
  return WeightedGraph::with_default_labels(n, edges);
}

inline std::vector<Weight> random_weights(int count, int wmax, Rng& rng) {
  std::vector<Weight> w(count);
  for (auto& x : w) x = rng.uniform(1, wmax);
  return w;
}

// Product of two weighted paths; minimal by construction.
inline WeightedGraph grid_graph(int rows, int cols, int wmax, Rng& rng) {
  const WeightedGraph a = path_graph(random_weights(rows - 1, wmax, rng));
  const WeightedGraph b = path_graph(random_weights(cols - 1, wmax, rng));
  return cartesian_product({a, b});
}

// Random spanning tree plus extra edges; connected, possibly non-minimal.
inline WeightedGraph random_connected(int n, int m, int wmax, Rng& rng) {
  if (m < n - 1) throw std::invalid_argument("too few edges for connectivity");
  const int max_edges = n * (n - 1) / 2;
  if (m > max_edges) throw std::invalid_argument("too many edges for a simple graph");
  std::vector<Edge> edges;
  std::vector<std::vector<char>> present(n, std::vector<char>(n, 0));
  for (int v = 1; v < n; ++v) {
    const int u = rng.uniform(0, v - 1);
    edges.push_back({u, v, rng.uniform(1, wmax)});
    present[u][v] = present[v][u] = 1;
  }
  while (static_cast<int>(edges.size()) < m) {
    const int u = rng.uniform(0, n - 1);
    const int v = rng.uniform(0, n - 1);
    if (u == v || present[u][v]) continue;
    present[u][v] = present[v][u] = 1;
    edges.push_back({u, v, rng.uniform(1, wmax)});
  }
  return WeightedGraph::with_default_labels(n, edges);
}

inline WeightedGraph random_minimal(int n, int m, int wmax, Rng& rng) {
  return minimalize(random_connected(n, m, wmax, rng));
}

// Product of two random trees; minimal by construction.
inline WeightedGraph tree_product(int n1, int n2, int wmax, Rng& rng) {
  auto random_tree = [&](int n) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v)
      edges.push_back({rng.uniform(0, v - 1), v, static_cast<Weight>(rng.uniform(1, wmax))});
    return WeightedGraph::with_default_labels(n, edges);
  };
  const WeightedGraph a = random_tree(n1);
  const WeightedGraph b = random_tree(n2);
  return cartesian_product({a, b});
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform(0, i)]);
  return perm;
}

// Relabeled copy: vertex v of g becomes perm[v]; edge order is reshuffled
// deterministically by the permuted endpoints.
inline WeightedGraph permute_graph(const WeightedGraph& g, const std::vector<int>& perm) {
  const int n = g.vertex_count();
  std::vector<std::string> labels(n);
  for (int v = 0; v < n; ++v) labels[perm[v]] = g.label(v);
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.w});
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    const int au = std::min(a.u, a.v), av = std::max(a.u, a.v);
    const int bu = std::min(b.u, b.v), bv = std::max(b.u, b.v);
    return au != bu ? au < bu : av < bv;
  });
  return WeightedGraph(std::move(labels), edges);
}

// A random walk from u that ends at v, as a vertex list. Retries with fresh
// randomness if a cap is hit; connected inputs terminate quickly at desk
// scale.
inline std::vector<int> random_walk_between(const WeightedGraph& g, int u, int v,
                                            Rng& rng) {
  const long long cap = 64LL * g.vertex_count() * g.vertex_count() + 256;
  for (int attempt = 0; attempt < 1024; ++attempt) {
    std::vector<int> walk{u};
    int cur = u;
    for (long long step = 0; step < cap && cur != v; ++step) {
      const auto& inc = g.neighbors(cur);
      cur = inc[rng.uniform(0, static_cast<int>(inc.size()) - 1)].to;
      walk.push_back(cur);
    }
    if (cur == v) return walk;
  }
  throw std::runtime_error("random walk failed to reach target");
}

}  // namespace gfact
