#pragma once
// Hypercube and Hamming embeddings at desk scale. The brute-force search
// fixes vertex 0 at the all-zero string, extends vertex by vertex in BFS
// order, and tracks columns only up to coordinate permutation by grouping
// identical columns into classes. Each search leaf is therefore one
// equivalence class of embeddings, which makes enumeration and counting
// exact with no dedup pass.
//
// The default dimension cap is the sum of edge weights: every coordinate of
// a valid embedding changes across at least one edge, and edge uv accounts
// for exactly w(uv) changed coordinates, so no embedding can use more than
// sum(w) coordinates. The cap is a library constant, not a literature bound.

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include <gfact/decompose.hpp>
#include <gfact/graph.hpp>
#include <gfact/metric.hpp>

namespace gfact {

class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct HammingEmbedding {
  int alphabet = 2;  // sigma >= 2
  int dimension = 0;
  std::vector<std::string> codes;  // per vertex, length = dimension, digits '0'..

  char digit(int v, int coord) const { return codes[v][coord]; }
};

inline int hamming_distance(const std::string& a, const std::string& b) {
  int out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += (a[i] != b[i]);
  return out;
}

// Isometry plus no constant coordinate.
inline bool is_valid_embedding(const WeightedGraph& g, const DistanceMatrix& d,
                               const HammingEmbedding& emb) {
  const int n = g.vertex_count();
  if (static_cast<int>(emb.codes.size()) != n) return false;
  for (const auto& code : emb.codes)
    if (static_cast<int>(code.size()) != emb.dimension) return false;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (hamming_distance(emb.codes[u], emb.codes[v]) != d(u, v)) return false;
  for (int j = 0; j < emb.dimension; ++j) {
    bool varies = false;
    for (int v = 1; v < n && !varies; ++v) varies = emb.codes[v][j] != emb.codes[0][j];
    if (!varies) return false;
  }
  return true;
}

namespace detail {

constexpr long long kDefaultNodeBudget = 64'000'000;

struct ColumnClass {
  std::vector<char> pattern;  // bit per placed vertex, placement order
  int mult = 0;
};

struct EmbedSearch {
  const WeightedGraph& g;
  const DistanceMatrix& d;
  std::vector<int> order;       // vertices in BFS placement order
  std::vector<ColumnClass> classes;
  int zero_budget = 0;
  long long nodes = 0;
  long long node_budget = kDefaultNodeBudget;

  // Returns false to stop the search early (existence mode).
  std::function<bool(const std::vector<ColumnClass>&)> on_solution;

  explicit EmbedSearch(const WeightedGraph& g_, const DistanceMatrix& d_)
      : g(g_), d(d_) {
    const int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::queue<int> queue;
    seen[0] = 1;
    queue.push(0);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      order.push_back(v);
      for (const auto& inc : g.neighbors(v)) {
        if (!seen[inc.to]) {
          seen[inc.to] = 1;
          queue.push(inc.to);
        }
      }
    }
  }

  bool run(int budget) {
    zero_budget = budget;
    classes.clear();
    return place(1);
  }

  // Place vertex order[i]: decide how many columns of each class flip to 1,
  // then split classes accordingly. The zero class's share is forced by the
  // common residual.
  bool place(std::size_t i) {
    if (i == order.size()) return on_solution(classes);
    std::vector<Weight> residual(i);
    for (std::size_t u = 0; u < i; ++u) residual[u] = d(order[i], order[u]);
    std::vector<int> chosen(classes.size(), 0);
    // Suffix capacity for the forward check: classes c.. plus fresh columns
    // can contribute at most this much to any one residual.
    std::vector<long long> capacity(classes.size() + 1, zero_budget);
    for (int c = static_cast<int>(classes.size()) - 1; c >= 0; --c)
      capacity[c] = capacity[c + 1] + classes[c].mult;
    return choose(i, 0, residual, chosen, capacity);
  }

  bool choose(std::size_t i, std::size_t c, std::vector<Weight>& residual,
              std::vector<int>& chosen, const std::vector<long long>& capacity) {
    if (++nodes > node_budget)
      throw BudgetError("embedding search exceeded its node budget");
    for (Weight r : residual)
      if (r > capacity[c]) return true;  // unmeetable residual
    if (c == classes.size()) {
      // All residuals must agree on the zero-class share.
      const Weight j_zero = residual.empty() ? 0 : residual[0];
      for (Weight r : residual)
        if (r != j_zero) return true;
      if (j_zero < 0 || j_zero > zero_budget) return true;
      return commit(i, static_cast<int>(j_zero), chosen);
    }
    // Deeper commit() calls swap out `classes` while recursing, so read the
    // class through the index each time rather than holding a reference.
    const int mult = classes[c].mult;
    long long lo = 0, hi = mult;
    for (std::size_t u = 0; u < residual.size(); ++u) {
      if (classes[c].pattern[u]) {
        lo = std::max<long long>(lo, mult - residual[u]);
      } else {
        hi = std::min<long long>(hi, residual[u]);
      }
    }
    for (long long j = lo; j <= hi; ++j) {
      chosen[c] = static_cast<int>(j);
      for (std::size_t u = 0; u < residual.size(); ++u)
        residual[u] -= classes[c].pattern[u] ? (mult - j) : j;
      if (!choose(i, c + 1, residual, chosen, capacity)) return false;
      for (std::size_t u = 0; u < residual.size(); ++u)
        residual[u] += classes[c].pattern[u] ? (mult - j) : j;
    }
    return true;
  }

  bool commit(std::size_t i, int j_zero, const std::vector<int>& chosen) {
    std::vector<ColumnClass> saved = classes;
    const int saved_zero = zero_budget;
    std::vector<ColumnClass> next;
    for (std::size_t c = 0; c < saved.size(); ++c) {
      const int j = chosen[c];
      if (j > 0) {
        ColumnClass one = saved[c];
        one.mult = j;
        one.pattern.push_back(1);
        next.push_back(std::move(one));
      }
      if (saved[c].mult - j > 0) {
        ColumnClass zero = saved[c];
        zero.mult -= j;
        zero.pattern.push_back(0);
        next.push_back(std::move(zero));
      }
    }
    if (j_zero > 0) {
      ColumnClass fresh;
      fresh.pattern.assign(i, 0);
      fresh.pattern.push_back(1);
      fresh.mult = j_zero;
      next.push_back(std::move(fresh));
      zero_budget -= j_zero;
    }
    classes = std::move(next);
    const bool keep_going = place(i + 1);
    classes = std::move(saved);
    zero_budget = saved_zero;
    return keep_going;
  }

  HammingEmbedding materialize(const std::vector<ColumnClass>& solution) const {
    HammingEmbedding emb;
    emb.alphabet = 2;
    for (const auto& cls : solution) emb.dimension += cls.mult;
    emb.codes.assign(order.size(), std::string(emb.dimension, '0'));
    int col = 0;
    for (const auto& cls : solution) {
      for (int rep = 0; rep < cls.mult; ++rep, ++col)
        for (std::size_t p = 0; p < order.size(); ++p)
          if (p < cls.pattern.size() && cls.pattern[p]) emb.codes[order[p]][col] = '1';
    }
    return emb;
  }
};

inline Weight default_max_dim(const WeightedGraph& g) { return g.total_weight(); }

}  // namespace detail

// Minimum-dimension binary embedding up to max_dim, or absence. Absence is
// a value, not an error.
inline std::optional<HammingEmbedding> hypercube_embed_bruteforce(
    const WeightedGraph& g, const DistanceMatrix& d, Weight max_dim = -1,
    long long node_budget = detail::kDefaultNodeBudget) {
  if (!d.connected())
    throw std::invalid_argument("hypercube embedding requires a connected graph");
  if (g.vertex_count() == 1)
    return HammingEmbedding{2, 0, {std::string()}};
  if (max_dim < 0) max_dim = detail::default_max_dim(g);

  Weight lower = 0;
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v) lower = std::max(lower, d(u, v));

  detail::EmbedSearch search(g, d);
  search.node_budget = node_budget;
  std::optional<HammingEmbedding> found;
  search.on_solution = [&](const std::vector<detail::ColumnClass>& solution) {
    found = search.materialize(solution);
    return false;  // stop at the first solution of this budget
  };
  for (Weight budget = lower; budget <= max_dim; ++budget) {
    if (!search.run(static_cast<int>(budget))) break;
  }
  return found;
}

// All non-equivalent binary embeddings with dimension <= max_dim.
inline std::vector<HammingEmbedding> enumerate_hypercube_embeddings(
    const WeightedGraph& g, const DistanceMatrix& d, Weight max_dim = -1,
    long long node_budget = detail::kDefaultNodeBudget) {
  if (!d.connected())
    throw std::invalid_argument("hypercube embedding requires a connected graph");
  if (g.vertex_count() == 1) return {HammingEmbedding{2, 0, {std::string()}}};
  if (max_dim < 0) max_dim = detail::default_max_dim(g);

  detail::EmbedSearch search(g, d);
  search.node_budget = node_budget;
  std::vector<HammingEmbedding> out;
  search.on_solution = [&](const std::vector<detail::ColumnClass>& solution) {
    out.push_back(search.materialize(solution));
    return true;
  };
  search.run(static_cast<int>(max_dim));
  return out;
}

// Canonical per-column form: relabel digits by first appearance, then sort
// columns. Two embeddings are equivalent exactly when these forms agree.
namespace detail {

inline std::vector<std::string> canonical_columns(const HammingEmbedding& emb) {
  const int n = static_cast<int>(emb.codes.size());
  std::vector<std::string> cols;
  cols.reserve(emb.dimension);
  for (int j = 0; j < emb.dimension; ++j) {
    std::string col(n, '?');
    char next = '0';
    char seen_map[256];
    std::fill(std::begin(seen_map), std::end(seen_map), '?');
    for (int v = 0; v < n; ++v) {
      const unsigned char raw = static_cast<unsigned char>(emb.codes[v][j]);
      if (seen_map[raw] == '?') seen_map[raw] = next++;
      col[v] = seen_map[raw];
    }
    cols.push_back(std::move(col));
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

}  // namespace detail

inline bool embeddings_equivalent(const HammingEmbedding& e1, const HammingEmbedding& e2) {
  if (e1.codes.size() != e2.codes.size()) return false;
  if (e1.dimension != e2.dimension) return false;
  return detail::canonical_columns(e1) == detail::canonical_columns(e2);
}

// Coordinate groups under the co-change relation: two coordinates share a
// group iff linked by a chain of edges across which both change.
struct CanonicalPartition {
  std::vector<int> group_of;
  std::vector<std::vector<int>> groups;
};

inline CanonicalPartition canonical_partition(const WeightedGraph& g,
                                              const HammingEmbedding& emb) {
  const int t = emb.dimension;
  std::vector<int> parent(t);
  for (int j = 0; j < t; ++j) parent[j] = j;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges()) {
    int first = -1;
    for (int j = 0; j < t; ++j) {
      if (emb.codes[e.u][j] == emb.codes[e.v][j]) continue;
      if (first == -1) {
        first = j;
      } else {
        parent[find(j)] = find(first);
      }
    }
  }
  CanonicalPartition out;
  out.group_of.assign(t, -1);
  for (int j = 0; j < t; ++j) {
    const int root = find(j);
    if (out.group_of[root] == -1) {
      out.group_of[root] = static_cast<int>(out.groups.size());
      out.groups.emplace_back();
    }
    out.group_of[j] = out.group_of[root];
    out.groups[out.group_of[j]].push_back(j);
  }
  return out;
}

// Concatenates factor embeddings through the decomposition map:
// eta(u) = eta_1(pi_1(u)) ... eta_k(pi_k(u)).
inline HammingEmbedding compose_from_pseudofactors(
    const WeightedGraph& g, const Decomposition& dec,
    const std::vector<HammingEmbedding>& factor_embeddings) {
  if (factor_embeddings.size() != dec.factors.size())
    throw std::invalid_argument("one embedding per pseudofactor required");
  for (std::size_t i = 0; i < dec.factors.size(); ++i) {
    const DistanceMatrix fd = apsp(dec.factors[i]);
    if (!is_valid_embedding(dec.factors[i], fd, factor_embeddings[i]))
      throw std::invalid_argument("factor embedding " + std::to_string(i) +
                                  " is not a valid Hamming embedding");
  }
  HammingEmbedding emb;
  emb.alphabet = 2;
  for (const auto& fe : factor_embeddings) {
    emb.alphabet = std::max(emb.alphabet, fe.alphabet);
    emb.dimension += fe.dimension;
  }
  emb.codes.assign(g.vertex_count(), {});
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::string code;
    code.reserve(emb.dimension);
    for (std::size_t i = 0; i < factor_embeddings.size(); ++i)
      code += factor_embeddings[i].codes[dec.map[v][i]];
    emb.codes[v] = std::move(code);
  }
  return emb;
}

struct EmbeddingCount {
  long long total = 1;
  std::vector<long long> per_factor;
};

// Number of non-equivalent hypercube embeddings: exhaustive count per
// canonical pseudofactor, multiplied across factors.
inline EmbeddingCount count_hypercube_embeddings(const WeightedGraph& g,
                                                 Weight max_dim = -1,
                                                 bool allow_large = false,
                                                 long long node_budget =
                                                     detail::kDefaultNodeBudget) {
  if (g.vertex_count() > 8 && !allow_large)
    throw std::invalid_argument(
        "count_hypercube_embeddings is exhaustive; pass allow_large for n > 8");
  const Decomposition dec = pseudofactorize(g);
  EmbeddingCount out;
  for (const auto& factor : dec.factors) {
    const DistanceMatrix fd = apsp(factor);
    Weight cap = detail::default_max_dim(factor);
    if (max_dim >= 0) cap = std::min(cap, max_dim);
    const auto embs = enumerate_hypercube_embeddings(factor, fd, cap, node_budget);
    out.per_factor.push_back(static_cast<long long>(embs.size()));
    out.total *= out.per_factor.back();
  }
  return out;
}

}  // namespace gfact
