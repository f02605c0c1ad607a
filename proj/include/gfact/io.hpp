#pragma once
// Canonical JSON input/output and DOT export. Serialization is
// deterministic: object keys are sorted, vertices stay in input order,
// factors follow canonical class order, so identical inputs produce
// byte-identical payloads.
//
// Weights are positive integers. Exact rationals may be supplied as "p/q"
// strings; they are normalized at ingestion by the LCM of all denominators,
// which is reported as the scale factor. Fractional JSON numbers are
// rejected rather than rounded.

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include <gfact/decompose.hpp>
#include <gfact/embed.hpp>
#include <gfact/graph.hpp>
#include <gfact/relations.hpp>

namespace gfact {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ParsedGraph {
  WeightedGraph graph;
  long long scale = 1;  // stored weights = original weights * scale
};

namespace detail {

struct Rational {
  long long num = 1;
  long long den = 1;
};

inline Rational parse_weight_field(const nlohmann::json& w, const std::string& where) {
  if (w.is_number_integer()) {
    const long long v = w.get<long long>();
    if (v <= 0) throw ParseError(where + ": weight must be positive");
    return {v, 1};
  }
  if (w.is_string()) {
    const std::string s = w.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        const long long v = std::stoll(s);
        if (v <= 0) throw ParseError(where + ": weight must be positive");
        return {v, 1};
      }
      const long long num = std::stoll(s.substr(0, slash));
      const long long den = std::stoll(s.substr(slash + 1));
      if (num <= 0 || den <= 0)
        throw ParseError(where + ": rational weight must be positive");
      const long long g = std::gcd(num, den);
      return {num / g, den / g};
    } catch (const std::invalid_argument&) {
      throw ParseError(where + ": malformed weight string '" + s + "'");
    } catch (const std::out_of_range&) {
      throw ParseError(where + ": weight out of range");
    }
  }
  if (w.is_number_float())
    throw ParseError(where +
                     ": fractional weights must be exact rationals like \"3/2\"");
  throw ParseError(where + ": weight must be a positive integer or \"p/q\" string");
}

}  // namespace detail

inline ParsedGraph parse_graph_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("graph document must be a JSON object");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("missing or malformed 'vertices' array");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ParseError("missing or malformed 'edges' array");

  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string())
      throw ParseError("vertices[" + std::to_string(labels.size()) +
                       "]: labels must be strings");
    const std::string label = v.get<std::string>();
    if (!index.emplace(label, static_cast<int>(labels.size())).second)
      throw ParseError("duplicate vertex label '" + label + "'");
    labels.push_back(label);
  }

  struct RawEdge {
    int u, v;
    detail::Rational w;
  };
  std::vector<RawEdge> raw;
  long long lcm = 1;
  int at = 0;
  for (const auto& e : j["edges"]) {
    const std::string where = "edges[" + std::to_string(at++) + "]";
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("w"))
      throw ParseError(where + ": expected {\"u\",\"v\",\"w\"}");
    auto vertex_of = [&](const nlohmann::json& field, const char* name) {
      if (!field.is_string())
        throw ParseError(where + "." + name + ": must be a vertex label string");
      const auto it = index.find(field.get<std::string>());
      if (it == index.end())
        throw ParseError(where + "." + name + ": unknown vertex label '" +
                         field.get<std::string>() + "'");
      return it->second;
    };
    const int u = vertex_of(e["u"], "u");
    const int v = vertex_of(e["v"], "v");
    const detail::Rational w = detail::parse_weight_field(e["w"], where + ".w");
    lcm = std::lcm(lcm, w.den);
    raw.push_back({u, v, w});
  }

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw)
    edges.push_back({e.u, e.v, e.w.num * (lcm / e.w.den)});
  try {
    return {WeightedGraph(std::move(labels), edges), lcm};
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what());
  }
}

inline ParsedGraph parse_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  return parse_graph_json(j);
}

inline ParsedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

inline nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json j;
  j["vertices"] = g.labels();
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges())
    j["edges"].push_back({{"u", g.label(e.u)}, {"v", g.label(e.v)}, {"w", e.w}});
  return j;
}

inline std::string serialize_graph(const WeightedGraph& g) {
  return graph_to_json(g).dump(2) + "\n";
}

inline nlohmann::json decomposition_to_json(const WeightedGraph& g,
                                            const Decomposition& dec) {
  nlohmann::json j;
  j["mode"] = dec.mode == Decomposition::Mode::pseudofactorization
                  ? "pseudofactorization"
                  : "factorization";
  j["factors"] = nlohmann::json::array();
  for (const auto& f : dec.factors) j["factors"].push_back(graph_to_json(f));
  nlohmann::json map = nlohmann::json::object();
  for (int v = 0; v < g.vertex_count(); ++v) map[g.label(v)] = dec.map[v];
  j["map"] = std::move(map);
  j["scale"] = dec.scale;
  return j;
}

inline std::string serialize_decomposition(const WeightedGraph& g,
                                           const Decomposition& dec) {
  return decomposition_to_json(g, dec).dump(2) + "\n";
}

inline Decomposition parse_decomposition(const nlohmann::json& j,
                                         const WeightedGraph& g) {
  if (!j.is_object() || !j.contains("mode") || !j.contains("factors") ||
      !j.contains("map"))
    throw ParseError("decomposition document must carry mode, factors, map");
  Decomposition dec;
  const std::string mode = j["mode"].get<std::string>();
  if (mode == "pseudofactorization") {
    dec.mode = Decomposition::Mode::pseudofactorization;
  } else if (mode == "factorization") {
    dec.mode = Decomposition::Mode::factorization;
  } else {
    throw ParseError("unknown decomposition mode '" + mode + "'");
  }
  for (const auto& f : j["factors"]) dec.factors.push_back(parse_graph_json(f).graph);
  dec.map.assign(g.vertex_count(), {});
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto it = j["map"].find(g.label(v));
    if (it == j["map"].end())
      throw ParseError("decomposition map is missing vertex '" + g.label(v) + "'");
    if (it->size() != dec.factors.size())
      throw std::invalid_argument("map arity does not match factor count");
    for (const auto& coord : *it) dec.map[v].push_back(coord.get<int>());
  }
  if (j.contains("scale")) dec.scale = j["scale"].get<long long>();
  return dec;
}

inline nlohmann::json embedding_to_json(const WeightedGraph& g,
                                        const HammingEmbedding& emb) {
  nlohmann::json strings = nlohmann::json::object();
  for (int v = 0; v < g.vertex_count(); ++v) strings[g.label(v)] = emb.codes[v];
  return {{"embeddable", true}, {"dimension", emb.dimension},
          {"strings", std::move(strings)}};
}

// Per-class member listing plus a witness chain of pairwise relations.
inline nlohmann::json explain_to_json(const EdgeRelationGraph& rg,
                                      const EquivalenceClasses& classes,
                                      const WeightedGraph& g) {
  const auto witnesses = relation_witness(rg);
  auto tag_name = [](RelationTag tag) {
    switch (tag) {
      case RelationTag::theta: return "theta";
      case RelationTag::tau: return "tau";
      default: return "theta_T";
    }
  };
  nlohmann::json out = nlohmann::json::array();
  for (int k = 0; k < classes.count(); ++k) {
    nlohmann::json cls;
    cls["id"] = k;
    cls["edges"] = nlohmann::json::array();
    for (int e : classes.classes[k])
      cls["edges"].push_back({{"id", e},
                              {"u", g.label(g.edge(e).u)},
                              {"v", g.label(g.edge(e).v)},
                              {"w", g.weight(e)}});
    cls["witness"] = nlohmann::json::array();
    for (const auto& link : witnesses[k])
      cls["witness"].push_back(
          {{"from", link.from}, {"to", link.to}, {"via", tag_name(link.tag)}});
    out.push_back(std::move(cls));
  }
  return out;
}

// DOT export; when classes are supplied, edges are colored by equivalence
// class.
inline std::string dot_export(const WeightedGraph& g,
                              const EquivalenceClasses* classes = nullptr) {
  static const char* kPalette[] = {"red",    "blue",   "green3", "orange",
                                   "purple", "brown",  "cyan3",  "magenta",
                                   "gold3",  "gray40", "black"};
  constexpr int kPaletteSize = 11;
  std::ostringstream out;
  out << "graph G {\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    out << "  \"" << g.label(v) << "\";\n";
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out << "  \"" << g.label(ed.u) << "\" -- \"" << g.label(ed.v) << "\" [label="
        << ed.w;
    if (classes)
      out << ", color=" << kPalette[classes->class_of[e] % kPaletteSize];
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace gfact
