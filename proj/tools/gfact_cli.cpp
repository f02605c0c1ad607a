// Command-line surface: pseudofactor, factor, minimalize, verify, embed,
// count-embeddings, bench. Payload JSON goes to stdout; the run report
// (with timings) goes to stderr under --report.
//
// Exit codes: 0 success, 1 I/O or parse error, 2 input-contract violation,
// 3 verification failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <gfact/gfact.hpp>

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitContract = 2;
constexpr int kExitVerify = 3;

struct RunReport {
  std::string command;
  std::string input_digest;
  std::string algorithm;
  nlohmann::json timings_ms = nlohmann::json::object();
  nlohmann::json verification;  // null unless --verify
};

class PhaseTimer {
 public:
  explicit PhaseTimer(RunReport& report) : report_(report), last_(Clock::now()) {}

  void lap(const std::string& phase) {
    const auto now = Clock::now();
    report_.timings_ms[phase] =
        std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }

 private:
  RunReport& report_;
  Clock::time_point last_;
};

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gfact::ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit_report(const RunReport& report, bool wanted) {
  if (!wanted) return;
  nlohmann::json j;
  j["command"] = report.command;
  j["input_digest"] = report.input_digest;
  if (!report.algorithm.empty()) j["algorithm"] = report.algorithm;
  j["timings_ms"] = report.timings_ms;
  j["verification"] = report.verification;
  std::cerr << j.dump(2) << "\n";
}

struct CommonFlags {
  std::string format = "json";
  bool verify = false;
  bool explain = false;
  bool minimalize = false;
  std::string algorithm = "gw";
  bool check_invariant = false;
  bool report = false;
};

int run_decompose(const std::string& path, gfact::Decomposition::Mode mode,
                  const CommonFlags& flags) {
  RunReport report;
  report.command = mode == gfact::Decomposition::Mode::pseudofactorization
                       ? "pseudofactor"
                       : "factor";
  report.algorithm = flags.algorithm;
  const std::string text = read_file(path);
  report.input_digest = fnv1a_digest(text);

  gfact::ParsedGraph parsed = gfact::parse_graph(text);
  gfact::WeightedGraph g = std::move(parsed.graph);
  if (!gfact::is_connected(g))
    throw std::invalid_argument("input graph is not connected");
  if (flags.minimalize) g = gfact::minimalize(g);

  PhaseTimer timer(report);
  const gfact::DistanceMatrix d = gfact::apsp(g);
  timer.lap("apsp");

  if (mode == gfact::Decomposition::Mode::pseudofactorization &&
      !gfact::is_minimal(g, d))
    throw std::invalid_argument(
        "input graph is not minimal; pass --minimalize to drop superfluous edges");

  gfact::EquivalenceClasses classes;
  gfact::EdgeRelationGraph rg;
  const bool feder = flags.algorithm == "feder-tree";
  if (mode == gfact::Decomposition::Mode::pseudofactorization && feder) {
    auto result = gfact::find_theta_tree(g, d, flags.check_invariant);
    timer.lap("relation");
    classes = std::move(result.classes);
    timer.lap("components");
  } else {
    const auto kind = mode == gfact::Decomposition::Mode::pseudofactorization
                          ? gfact::RelationKind::theta
                          : gfact::RelationKind::theta_union_tau;
    rg = gfact::build_relation_graph(g, d, kind);
    timer.lap("relation");
    classes = gfact::equivalence_classes(rg);
    timer.lap("components");
  }

  gfact::Decomposition dec;
  dec.mode = mode;
  {
    auto pieces = gfact::decompose_over(g, classes);
    dec.factors.clear();
    for (auto& p : pieces) dec.factors.push_back(std::move(p.quotient));
    dec.map.assign(g.vertex_count(), {});
    for (int v = 0; v < g.vertex_count(); ++v)
      for (const auto& p : pieces) dec.map[v].push_back(p.component_of[v]);
  }
  dec.scale = parsed.scale;
  timer.lap("quotients");

  if (flags.verify) {
    const bool ok = gfact::verify_decomposition(g, dec);
    timer.lap("verify");
    report.verification = ok;
    if (!ok) {
      emit_report(report, flags.report);
      std::cerr << "verification failed\n";
      return kExitVerify;
    }
  }

  if (flags.format == "dot") {
    std::cout << gfact::dot_export(g, &classes);
  } else {
    nlohmann::json payload = gfact::decomposition_to_json(g, dec);
    if (flags.explain) {
      if (feder && mode == gfact::Decomposition::Mode::pseudofactorization)
        rg = gfact::build_relation_graph(g, d, gfact::RelationKind::theta);
      payload["explain"] = gfact::explain_to_json(rg, classes, g);
    }
    std::cout << payload.dump(2) << "\n";
  }
  emit_report(report, flags.report);
  return kExitOk;
}

int run_minimalize(const std::string& path, const CommonFlags& flags) {
  RunReport report;
  report.command = "minimalize";
  const std::string text = read_file(path);
  report.input_digest = fnv1a_digest(text);
  PhaseTimer timer(report);
  const gfact::WeightedGraph out = gfact::minimalize(gfact::parse_graph(text).graph);
  timer.lap("minimalize");
  if (flags.format == "dot") {
    std::cout << gfact::dot_export(out);
  } else {
    std::cout << gfact::serialize_graph(out);
  }
  emit_report(report, flags.report);
  return kExitOk;
}

int run_verify(const std::string& graph_path, const std::string& dec_path,
               const CommonFlags& flags) {
  RunReport report;
  report.command = "verify";
  const std::string gtext = read_file(graph_path);
  const std::string dtext = read_file(dec_path);
  report.input_digest = fnv1a_digest(gtext + dtext);

  const gfact::WeightedGraph g = gfact::parse_graph(gtext).graph;
  nlohmann::json dj;
  try {
    dj = nlohmann::json::parse(dtext);
  } catch (const nlohmann::json::parse_error& err) {
    throw gfact::ParseError(std::string("invalid JSON: ") + err.what());
  }
  const gfact::Decomposition dec = gfact::parse_decomposition(dj, g);
  PhaseTimer timer(report);
  const bool ok = gfact::verify_decomposition(g, dec);
  timer.lap("verify");
  report.verification = ok;
  std::cout << nlohmann::json{{"valid", ok}}.dump(2) << "\n";
  emit_report(report, flags.report);
  return ok ? kExitOk : kExitVerify;
}

int run_embed(const std::string& path, const std::string& target, long long max_dim,
              const CommonFlags& flags) {
  RunReport report;
  report.command = "embed";
  if (target != "hypercube")
    throw std::invalid_argument("unsupported embedding target '" + target + "'");
  const std::string text = read_file(path);
  report.input_digest = fnv1a_digest(text);
  gfact::WeightedGraph g = gfact::parse_graph(text).graph;
  if (flags.minimalize) g = gfact::minimalize(g);
  PhaseTimer timer(report);
  const gfact::DistanceMatrix d = gfact::apsp(g);
  timer.lap("apsp");
  const auto emb = gfact::hypercube_embed_bruteforce(g, d, max_dim);
  timer.lap("search");
  if (emb) {
    std::cout << gfact::embedding_to_json(g, *emb).dump(2) << "\n";
  } else {
    const long long searched = max_dim >= 0 ? max_dim : g.total_weight();
    std::cout << nlohmann::json{{"embeddable", false}, {"max_dim_searched", searched}}
                     .dump(2)
              << "\n";
  }
  emit_report(report, flags.report);
  return kExitOk;
}

int run_count(const std::string& path, long long max_dim, bool allow_large,
              const CommonFlags& flags) {
  RunReport report;
  report.command = "count-embeddings";
  const std::string text = read_file(path);
  report.input_digest = fnv1a_digest(text);
  gfact::WeightedGraph g = gfact::parse_graph(text).graph;
  if (flags.minimalize) g = gfact::minimalize(g);
  PhaseTimer timer(report);
  const auto count = gfact::count_hypercube_embeddings(g, max_dim, allow_large);
  timer.lap("count");
  std::cout << nlohmann::json{{"count", count.total}, {"per_factor", count.per_factor}}
                   .dump(2)
            << "\n";
  emit_report(report, flags.report);
  return kExitOk;
}

struct BenchRow {
  int n, m;
  std::string algo, phase;
  double millis;
};

// Times the class-computation phase of both pipelines on one graph,
// excluding APSP (both pipelines share it).
void bench_one(const gfact::WeightedGraph& g, const std::vector<std::string>& algos,
               std::vector<BenchRow>& rows) {
  const auto t0 = Clock::now();
  const gfact::DistanceMatrix d = gfact::apsp(g);
  const double apsp_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  for (const auto& algo : algos) {
    rows.push_back({g.vertex_count(), g.edge_count(), algo, "apsp", apsp_ms});
    const auto t1 = Clock::now();
    if (algo == "feder-tree") {
      const auto result = gfact::find_theta_tree(g, d);
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t1).count();
      rows.push_back({g.vertex_count(), g.edge_count(), algo, "relation", ms});
      const auto t2 = Clock::now();
      auto pieces = gfact::decompose_over(g, result.classes);
      const double qms = std::chrono::duration<double, std::milli>(Clock::now() - t2).count();
      rows.push_back({g.vertex_count(), g.edge_count(), algo, "quotients", qms});
    } else {
      const auto rg = gfact::build_relation_graph(g, d, gfact::RelationKind::theta);
      const auto classes = gfact::equivalence_classes(rg);
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t1).count();
      rows.push_back({g.vertex_count(), g.edge_count(), algo, "relation", ms});
      const auto t2 = Clock::now();
      auto pieces = gfact::decompose_over(g, classes);
      const double qms = std::chrono::duration<double, std::milli>(Clock::now() - t2).count();
      rows.push_back({g.vertex_count(), g.edge_count(), algo, "quotients", qms});
    }
  }
}

int run_bench(const std::string& family, const std::vector<int>& sizes,
              const std::vector<std::string>& algos, std::uint64_t seed, int wmax) {
  gfact::Rng rng(seed);
  std::vector<BenchRow> rows;
  for (int size : sizes) {
    gfact::WeightedGraph g;
    if (family == "grid") {
      g = gfact::grid_graph(size, size, wmax, rng);
    } else if (family == "random-minimal") {
      g = gfact::random_minimal(size, std::min(size * (size - 1) / 2, 3 * size), wmax, rng);
    } else if (family == "tree-product") {
      g = gfact::tree_product(size, size, wmax, rng);
    } else {
      throw std::invalid_argument("unknown bench family '" + family + "'");
    }
    bench_one(g, algos, rows);
  }
  std::cout << "n,m,algo,phase,millis\n";
  for (const auto& r : rows)
    std::cout << r.n << "," << r.m << "," << r.algo << "," << r.phase << ","
              << r.millis << "\n";
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_algorithm = true) {
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "dot"}));
  cmd->add_flag("--verify", flags.verify, "Run the self-verification oracle");
  cmd->add_flag("--explain", flags.explain, "Attach per-class witness chains");
  cmd->add_flag("--minimalize", flags.minimalize, "Drop metric-superfluous edges first");
  if (with_algorithm) {
    cmd->add_option("--algorithm", flags.algorithm, "Class computation route")
        ->check(CLI::IsMember({"gw", "feder-tree"}));
    cmd->add_flag("--check-invariant", flags.check_invariant,
                  "Assert the tree-relation loop invariant each iteration");
  }
  cmd->add_flag("--report", flags.report, "Emit a timing report to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted-graph factorization, pseudofactorization, and embeddings"};
  app.require_subcommand(1);

  std::string path, dec_path, target = "hypercube", family = "grid";
  long long max_dim = -1;
  bool allow_large = false;
  std::uint64_t seed = 1;
  int wmax = 3;
  std::vector<int> sizes;
  std::vector<std::string> algos{"gw", "feder-tree"};
  CommonFlags flags;

  auto* pseudo = app.add_subcommand("pseudofactor", "Canonical pseudofactorization");
  pseudo->add_option("input", path, "Graph JSON file")->required();
  add_common(pseudo, flags);

  auto* factor = app.add_subcommand("factor", "Prime factorization");
  factor->add_option("input", path, "Graph JSON file")->required();
  add_common(factor, flags, false);

  auto* minimalize = app.add_subcommand("minimalize", "Remove metric-superfluous edges");
  minimalize->add_option("input", path, "Graph JSON file")->required();
  add_common(minimalize, flags, false);

  auto* verify = app.add_subcommand("verify", "Check a decomposition against its graph");
  verify->add_option("graph", path, "Graph JSON file")->required();
  verify->add_option("decomposition", dec_path, "Decomposition JSON file")->required();
  add_common(verify, flags, false);

  auto* embed = app.add_subcommand("embed", "Brute-force hypercube embedding");
  embed->add_option("input", path, "Graph JSON file")->required();
  embed->add_option("--target", target, "Embedding target");
  embed->add_option("--max-dim", max_dim, "Dimension cap (default: sum of weights)");
  add_common(embed, flags, false);

  auto* count = app.add_subcommand("count-embeddings",
                                   "Count non-equivalent hypercube embeddings");
  count->add_option("input", path, "Graph JSON file")->required();
  count->add_option("--max-dim", max_dim, "Dimension cap per factor");
  count->add_flag("--allow-large", allow_large, "Lift the n <= 8 guard");
  add_common(count, flags, false);

  auto* bench = app.add_subcommand("bench", "Timing harness over graph families");
  bench->add_option("--family", family, "Graph family")
      ->check(CLI::IsMember({"grid", "random-minimal", "tree-product"}));
  bench->add_option("--sizes", sizes, "Instance sizes")->required();
  bench->add_option("--algorithms", algos, "Pipelines to time");
  bench->add_option("--seed", seed, "RNG seed for random families");
  bench->add_option("--wmax", wmax, "Maximum edge weight");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pseudo->parsed())
      return run_decompose(path, gfact::Decomposition::Mode::pseudofactorization, flags);
    if (factor->parsed())
      return run_decompose(path, gfact::Decomposition::Mode::factorization, flags);
    if (minimalize->parsed()) return run_minimalize(path, flags);
    if (verify->parsed()) return run_verify(path, dec_path, flags);
    if (embed->parsed()) return run_embed(path, target, max_dim, flags);
    if (count->parsed()) return run_count(path, max_dim, allow_large, flags);
    if (bench->parsed()) return run_bench(family, sizes, algos, seed, wmax);
  } catch (const gfact::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitIo;
  } catch (const gfact::WeightMismatchError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitContract;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitContract;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitContract;
  }
  return kExitOk;
}
