#pragma once
// Weight-preserving graph isomorphism by backtracking with
// (degree, incident-weight-multiset) refinement. Intended for desk-scale
// verification inputs, not for the main decomposition pipelines.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include <gfact/graph.hpp>

namespace gfact {

namespace detail {

inline std::vector<std::vector<Weight>> vertex_signatures(const WeightedGraph& g) {
  std::vector<std::vector<Weight>> sig(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (const auto& inc : g.neighbors(v)) sig[v].push_back(g.weight(inc.edge));
    std::sort(sig[v].begin(), sig[v].end());
  }
  return sig;
}

struct IsoSearch {
  const WeightedGraph& g;
  const WeightedGraph& h;
  const std::vector<std::vector<Weight>>& gsig;
  const std::vector<std::vector<Weight>>& hsig;
  std::vector<int> g_to_h;
  std::vector<int> h_used;
  std::vector<int> order;  // g vertices in mapping order

  bool consistent(int gv, int hv) const {
    if (gsig[gv] != hsig[hv]) return false;
    // Mapped vertices must agree on adjacency and weights in both directions.
    for (int u = 0; u < g.vertex_count(); ++u) {
      if (g_to_h[u] < 0) continue;
      const auto ge = g.find_edge(u, gv);
      const auto he = h.find_edge(g_to_h[u], hv);
      if (ge.has_value() != he.has_value()) return false;
      if (ge && g.weight(*ge) != h.weight(*he)) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const int gv = order[depth];
    for (int hv = 0; hv < h.vertex_count(); ++hv) {
      if (h_used[hv] || !consistent(gv, hv)) continue;
      g_to_h[gv] = hv;
      h_used[hv] = 1;
      if (extend(depth + 1)) return true;
      g_to_h[gv] = -1;
      h_used[hv] = 0;
    }
    return false;
  }
};

}  // namespace detail

// Returns a weight- and adjacency-preserving bijection V(g) -> V(h) if one
// exists. Absence is a value, not an error.
inline std::optional<std::vector<int>> graphs_isomorphic(const WeightedGraph& g,
                                                         const WeightedGraph& h) {
  const int n = g.vertex_count();
  if (n != h.vertex_count() || g.edge_count() != h.edge_count())
    return std::nullopt;
  if (n == 0) return std::vector<int>{};

  const auto gsig = detail::vertex_signatures(g);
  const auto hsig = detail::vertex_signatures(h);
  {
    auto gs = gsig;
    auto hs = hsig;
    std::sort(gs.begin(), gs.end());
    std::sort(hs.begin(), hs.end());
    if (gs != hs) return std::nullopt;
  }

  // Rarest signature first, then grow through the already-mapped region so
  // the consistency check prunes as early as possible.
  std::map<std::vector<Weight>, int> freq;
  for (const auto& s : gsig) ++freq[s];
  std::vector<char> placed(n, 0);
  std::vector<int> order;
  order.reserve(n);
  while (static_cast<int>(order.size()) < n) {
    int best = -1;
    int best_mapped_neighbors = -1;
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      int mapped_neighbors = 0;
      for (const auto& inc : g.neighbors(v)) mapped_neighbors += placed[inc.to];
      const bool better =
          best < 0 || mapped_neighbors > best_mapped_neighbors ||
          (mapped_neighbors == best_mapped_neighbors &&
           (freq[gsig[v]] < freq[gsig[best]] ||
            (freq[gsig[v]] == freq[gsig[best]] && g.degree(v) > g.degree(best))));
      if (better) {
        best = v;
        best_mapped_neighbors = mapped_neighbors;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }

  detail::IsoSearch search{g, h, gsig, hsig,
                           std::vector<int>(n, -1), std::vector<int>(n, 0),
                           std::move(order)};
  if (!search.extend(0)) return std::nullopt;
  return search.g_to_h;
}

}  // namespace gfact
