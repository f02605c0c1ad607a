#pragma once
// Generic decomposition over an edge partition: remove one class at a time,
// quotient the remaining connected components, and read factor edges off the
// class edges between components. Specialized to pseudofactorization (theta
// classes on minimal graphs) and factorization (theta-union-tau classes on
// general connected graphs), with self-verification oracles.

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include <gfact/graph.hpp>
#include <gfact/isometry.hpp>
#include <gfact/metric.hpp>
#include <gfact/product.hpp>
#include <gfact/relations.hpp>
#include <gfact/treefast.hpp>

namespace gfact {

// Two cross-edges between one component pair disagreed in weight. This is
// unreachable for valid inputs (minimal graph + theta classes, or any
// connected graph + theta-union-tau classes); hitting it signals an input
// contract violation upstream.
class WeightMismatchError : public std::runtime_error {
 public:
  WeightMismatchError(int class_id, int comp_a, int comp_b, Weight w1, Weight w2)
      : std::runtime_error("weight mismatch in class " + std::to_string(class_id) +
                           " between components " + std::to_string(comp_a) + " and " +
                           std::to_string(comp_b) + ": " + std::to_string(w1) +
                           " vs " + std::to_string(w2)),
        class_id(class_id), comp_a(comp_a), comp_b(comp_b), w1(w1), w2(w2) {}

  int class_id;
  int comp_a;
  int comp_b;
  Weight w1;
  Weight w2;
};

struct QuotientPiece {
  int class_id = 0;
  std::vector<int> component_of;  // per vertex of g
  WeightedGraph quotient;
};

struct Decomposition {
  enum class Mode { pseudofactorization, factorization };

  Mode mode = Mode::pseudofactorization;
  std::vector<WeightedGraph> factors;
  std::vector<std::vector<int>> map;  // per g-vertex tuple of component ids
  long long scale = 1;
};

namespace detail {

// Components of g with class-k edges removed, labeled in order of smallest
// contained vertex id.
inline std::vector<int> components_without_class(const WeightedGraph& g,
                                                 const EquivalenceClasses& classes,
                                                 int k, int* count_out) {
  const int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  int count = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] != -1) continue;
    comp[start] = count;
    std::queue<int> queue;
    queue.push(start);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (const auto& inc : g.neighbors(v)) {
        if (classes.class_of[inc.edge] == k || comp[inc.to] != -1) continue;
        comp[inc.to] = count;
        queue.push(inc.to);
      }
    }
    ++count;
  }
  *count_out = count;
  return comp;
}

}  // namespace detail

inline std::vector<QuotientPiece> decompose_over(const WeightedGraph& g,
                                                 const EquivalenceClasses& classes) {
  std::vector<QuotientPiece> pieces;
  pieces.reserve(classes.count());
  for (int k = 0; k < classes.count(); ++k) {
    int comp_count = 0;
    std::vector<int> comp = detail::components_without_class(g, classes, k, &comp_count);

    // Quotient vertex labels come from the smallest original vertex in each
    // component; that vertex also fixes the component numbering.
    std::vector<std::string> labels(comp_count);
    std::vector<char> named(comp_count, 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!named[comp[v]]) {
        named[comp[v]] = 1;
        labels[comp[v]] = g.label(v);
      }
    }

    std::vector<Edge> qedges;
    std::vector<std::vector<std::optional<Weight>>> weight_between(
        comp_count, std::vector<std::optional<Weight>>(comp_count));
    for (int e : classes.classes[k]) {
      const Edge& ed = g.edge(e);
      const int a = comp[ed.u], b = comp[ed.v];
      auto& slot = weight_between[std::min(a, b)][std::max(a, b)];
      if (!slot) {
        slot = ed.w;
        qedges.push_back({std::min(a, b), std::max(a, b), ed.w});
      } else if (*slot != ed.w) {
        throw WeightMismatchError(k, std::min(a, b), std::max(a, b), *slot, ed.w);
      }
    }
    pieces.push_back({k, std::move(comp), WeightedGraph(std::move(labels), qedges)});
  }
  return pieces;
}

enum class DecomposeAlgorithm { gw, feder_tree };
enum class VerifyPolicy { automatic, on, off };

struct DecomposeOptions {
  DecomposeAlgorithm algorithm = DecomposeAlgorithm::gw;
  VerifyPolicy verify = VerifyPolicy::automatic;
  bool check_invariant = false;  // feder-tree loop-invariant assertions
};

namespace detail {

inline Decomposition assemble(const WeightedGraph& g, Decomposition::Mode mode,
                              const std::vector<QuotientPiece>& pieces) {
  Decomposition dec;
  dec.mode = mode;
  for (const auto& p : pieces) dec.factors.push_back(p.quotient);
  dec.map.assign(g.vertex_count(), {});
  for (int v = 0; v < g.vertex_count(); ++v) {
    dec.map[v].reserve(pieces.size());
    for (const auto& p : pieces) dec.map[v].push_back(p.component_of[v]);
  }
  return dec;
}

inline bool should_verify(VerifyPolicy policy, const WeightedGraph& g) {
  if (policy == VerifyPolicy::on) return true;
  if (policy == VerifyPolicy::off) return false;
  return g.vertex_count() <= 64;
}

}  // namespace detail

inline bool verify_decomposition(const WeightedGraph& g, const Decomposition& dec);

// Canonical pseudofactorization over theta classes. Refuses non-minimal
// input: minimalization changes the graph (not the metric) and the caller
// must opt in explicitly.
inline Decomposition pseudofactorize(const WeightedGraph& g,
                                     const DecomposeOptions& options = {}) {
  if (!is_connected(g))
    throw std::invalid_argument("pseudofactorize requires a connected graph");
  if (g.vertex_count() == 1) {
    Decomposition dec;
    dec.mode = Decomposition::Mode::pseudofactorization;
    dec.factors.push_back(g);
    dec.map.assign(1, {0});
    return dec;
  }
  const DistanceMatrix d = apsp(g);
  if (!is_minimal(g, d))
    throw std::invalid_argument(
        "pseudofactorize requires a minimal graph; run minimalize first");

  EquivalenceClasses classes;
  if (options.algorithm == DecomposeAlgorithm::feder_tree) {
    classes = find_theta_tree(g, d, options.check_invariant).classes;
  } else {
    classes = equivalence_classes(build_relation_graph(g, d, RelationKind::theta));
  }
  Decomposition dec = detail::assemble(
      g, Decomposition::Mode::pseudofactorization, decompose_over(g, classes));
  if (detail::should_verify(options.verify, g) && !verify_decomposition(g, dec))
    throw std::logic_error("pseudofactorization failed self-verification");
  return dec;
}

// Prime factorization over theta-union-tau classes; works on any connected
// weighted graph, minimal or not.
inline Decomposition factorize(const WeightedGraph& g,
                               const DecomposeOptions& options = {}) {
  if (!is_connected(g))
    throw std::invalid_argument("factorize requires a connected graph");
  if (g.vertex_count() == 1) {
    Decomposition dec;
    dec.mode = Decomposition::Mode::factorization;
    dec.factors.push_back(g);
    dec.map.assign(1, {0});
    return dec;
  }
  const DistanceMatrix d = apsp(g);
  const EquivalenceClasses classes =
      equivalence_classes(build_relation_graph(g, d, RelationKind::theta_union_tau));
  Decomposition dec = detail::assemble(
      g, Decomposition::Mode::factorization, decompose_over(g, classes));
  if (detail::should_verify(options.verify, g) && !verify_decomposition(g, dec))
    throw std::logic_error("factorization failed self-verification");
  return dec;
}

// A minimal connected graph is irreducible iff theta's transitive closure
// has exactly one equivalence class on its edges.
inline bool is_irreducible(const WeightedGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("is_irreducible requires a connected graph");
  if (g.vertex_count() == 1) return true;
  const DistanceMatrix d = apsp(g);
  if (!is_minimal(g, d))
    throw std::invalid_argument("is_irreducible requires a minimal graph");
  return equivalence_classes(build_relation_graph(g, d, RelationKind::theta)).count() == 1;
}

// A connected graph is prime iff theta-union-tau's transitive closure has
// exactly one equivalence class on its edges.
inline bool is_prime(const WeightedGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("is_prime requires a connected graph");
  if (g.vertex_count() == 1) return true;
  const DistanceMatrix d = apsp(g);
  return equivalence_classes(build_relation_graph(g, d, RelationKind::theta_union_tau))
             .count() == 1;
}

inline bool verify_decomposition(const WeightedGraph& g, const Decomposition& dec) {
  if (dec.factors.empty()) return false;
  const TupleCodec codec = product_codec(dec.factors);
  for (const auto& tuple : dec.map)
    if (static_cast<int>(tuple.size()) != codec.arity()) return false;
  const WeightedGraph product = cartesian_product(dec.factors);
  std::vector<int> flat;
  try {
    flat = flatten_tuple_map(dec.map, codec);
  } catch (const std::invalid_argument&) {
    return false;
  }

  if (!is_isometric_subgraph(g, product, flat)) return false;
  if (dec.mode == Decomposition::Mode::pseudofactorization) return true;

  // Factorization additionally demands a full isomorphism: the map is onto
  // and product edges pull back to g edges of equal weight.
  if (product.vertex_count() != g.vertex_count()) return false;
  std::vector<int> inverse(product.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) inverse[flat[v]] = v;
  for (const Edge& pe : product.edges()) {
    const int u = inverse[pe.u], v = inverse[pe.v];
    const auto ge = g.find_edge(u, v);
    if (!ge || g.weight(*ge) != pe.w) return false;
  }
  return true;
}

}  // namespace gfact
