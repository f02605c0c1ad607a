#pragma once
// Isometric-subgraph oracle: decides whether a vertex map realizes g as an
// isometric subgraph of a host graph (injective, edge- and weight-preserving,
// distance-preserving on all pairs).

#include <stdexcept>
#include <vector>

#include <gfact/graph.hpp>
#include <gfact/metric.hpp>
#include <gfact/product.hpp>

namespace gfact {

inline bool is_isometric_subgraph(const WeightedGraph& g,
                                  const WeightedGraph& host,
                                  const std::vector<int>& map) {
  const int n = g.vertex_count();
  if (static_cast<int>(map.size()) != n)
    throw std::invalid_argument("vertex map does not cover all vertices");
  for (int v : map)
    if (v < 0 || v >= host.vertex_count())
      throw std::invalid_argument("vertex map image out of range");

  std::vector<char> used(host.vertex_count(), 0);
  for (int v : map) {
    if (used[v]) return false;  // not injective
    used[v] = 1;
  }
  for (const Edge& e : g.edges()) {
    const auto he = host.find_edge(map[e.u], map[e.v]);
    if (!he || host.weight(*he) != e.w) return false;
  }
  const DistanceMatrix dg = apsp(g);
  const DistanceMatrix dh = apsp(host);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (dg(u, v) != dh(map[u], map[v])) return false;
  return true;
}

// Flattens a per-vertex coordinate-tuple map into product vertex ids.
inline std::vector<int> flatten_tuple_map(const std::vector<std::vector<int>>& tuples,
                                          const TupleCodec& codec) {
  std::vector<int> flat;
  flat.reserve(tuples.size());
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != codec.arity())
      throw std::invalid_argument("map arity does not match factor count");
    flat.push_back(static_cast<int>(codec.encode(t)));
  }
  return flat;
}

}  // namespace gfact
