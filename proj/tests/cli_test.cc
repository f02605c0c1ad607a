// End-to-end checks of the command-line surface, including the exit-code
// contract: 0 success, 1 I/O or parse error, 2 input-contract violation,
// 3 verification failure.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef GFACT_CLI_PATH
#error "GFACT_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(GFACT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  std::string out;
  char buffer[4096];
  while (std::size_t got = fread(buffer, 1, sizeof(buffer), pipe)) out.append(buffer, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream out(path);
  out << content;
  return path;
}

const char* kP3 =
    R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","w":1},{"u":"b","v":"c","w":1}]})";
const char* kC4 =
    R"({"vertices":["a","b","c","d"],"edges":[{"u":"a","v":"b","w":1},{"u":"b","v":"c","w":1},
        {"u":"c","v":"d","w":1},{"u":"d","v":"a","w":1}]})";
const char* kNonMinimalTriangle =
    R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","w":1},{"u":"b","v":"c","w":1},
        {"u":"a","v":"c","w":3}]})";

TEST(Cli, PseudofactorHappyPath) {
  const std::string path = write_temp("p3.json", kP3);
  const RunResult res = run_cli("pseudofactor " + path + " --verify");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_NE(res.out.find("\"pseudofactorization\""), std::string::npos);
  EXPECT_NE(res.out.find("\"factors\""), std::string::npos);
}

TEST(Cli, FederTreeRouteMatchesGw) {
  const std::string path = write_temp("c4.json", kC4);
  const RunResult gw = run_cli("pseudofactor " + path + " --algorithm gw");
  const RunResult feder =
      run_cli("pseudofactor " + path + " --algorithm feder-tree --check-invariant");
  EXPECT_EQ(gw.exit_code, 0);
  EXPECT_EQ(feder.exit_code, 0);
  EXPECT_EQ(gw.out, feder.out);
}

TEST(Cli, DeterministicPayloads) {
  const std::string path = write_temp("c4_det.json", kC4);
  const RunResult a = run_cli("factor " + path);
  const RunResult b = run_cli("factor " + path);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ParseErrorExitsOne) {
  const std::string path = write_temp("bad.json", "{nope");
  EXPECT_EQ(run_cli("pseudofactor " + path).exit_code, 1);
  EXPECT_EQ(run_cli("pseudofactor /no/such/file.json").exit_code, 1);
}

TEST(Cli, NonMinimalWithoutFlagExitsTwo) {
  const std::string path = write_temp("tri.json", kNonMinimalTriangle);
  const RunResult res = run_cli("pseudofactor " + path);
  EXPECT_EQ(res.exit_code, 2);
  // With the flag the same input succeeds.
  EXPECT_EQ(run_cli("pseudofactor " + path + " --minimalize").exit_code, 0);
}

TEST(Cli, DisconnectedInputExitsTwo) {
  const std::string path = write_temp(
      "disc.json", R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","w":1}]})");
  EXPECT_EQ(run_cli("factor " + path).exit_code, 2);
}

TEST(Cli, VerifyDetectsCorruption) {
  const std::string graph = write_temp("vg.json", kP3);
  const RunResult dec = run_cli("pseudofactor " + graph);
  ASSERT_EQ(dec.exit_code, 0);
  const std::string good = write_temp("dec_good.json", dec.out);
  EXPECT_EQ(run_cli("verify " + graph + " " + good).exit_code, 0);

  // Swap the map tuples of two adjacent vertices: verification fails, exit 3.
  std::string corrupted = dec.out;
  const auto pos_a = corrupted.find("\"a\": [");
  const auto pos_b = corrupted.find("\"b\": [");
  ASSERT_NE(pos_a, std::string::npos);
  ASSERT_NE(pos_b, std::string::npos);
  corrupted.replace(pos_b, 4, "\"X\":");
  corrupted.replace(pos_a, 4, "\"b\":");
  const auto pos_x = corrupted.find("\"X\":");
  corrupted.replace(pos_x, 4, "\"a\":");
  const std::string bad = write_temp("dec_bad.json", corrupted);
  EXPECT_EQ(run_cli("verify " + graph + " " + bad).exit_code, 3);
}

TEST(Cli, MinimalizeDropsSuperfluousEdge) {
  const std::string path = write_temp("tri2.json", kNonMinimalTriangle);
  const RunResult res = run_cli("minimalize " + path);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(res.out.find("\"w\": 3"), std::string::npos);
}

TEST(Cli, EmbedReportsDimensionAndStrings) {
  const std::string path = write_temp("p3e.json", kP3);
  const RunResult res = run_cli("embed " + path + " --target hypercube");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_NE(res.out.find("\"dimension\": 2"), std::string::npos);
}

TEST(Cli, EmbedAbsenceIsSuccessWithFalse) {
  const std::string path = write_temp(
      "k3.json", R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","w":1},
                     {"u":"b","v":"c","w":1},{"u":"a","v":"c","w":1}]})");
  const RunResult res = run_cli("embed " + path);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_NE(res.out.find("\"embeddable\": false"), std::string::npos);
}

TEST(Cli, CountEmbeddingsDoubledK4) {
  const std::string path = write_temp(
      "k4w2.json",
      R"({"vertices":["a","b","c","d"],"edges":[
          {"u":"a","v":"b","w":2},{"u":"a","v":"c","w":2},{"u":"a","v":"d","w":2},
          {"u":"b","v":"c","w":2},{"u":"b","v":"d","w":2},{"u":"c","v":"d","w":2}]})");
  const RunResult res = run_cli("count-embeddings " + path);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_NE(res.out.find("\"count\": 2"), std::string::npos);
}

TEST(Cli, DotFormatColorsClasses) {
  const std::string path = write_temp("c4d.json", kC4);
  const RunResult res = run_cli("factor " + path + " --format dot");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_NE(res.out.find("graph G {"), std::string::npos);
  EXPECT_NE(res.out.find("color="), std::string::npos);
}

TEST(Cli, ExplainAttachesWitnessChains) {
  const std::string path = write_temp("c4x.json", kC4);
  const RunResult res = run_cli("factor " + path + " --explain");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_NE(res.out.find("\"explain\""), std::string::npos);
  EXPECT_NE(res.out.find("\"witness\""), std::string::npos);
}

TEST(Cli, BenchEmitsCsvHeader) {
  const RunResult res = run_cli("bench --family grid --sizes 3 --seed 7");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(res.out.rfind("n,m,algo,phase,millis\n", 0), 0u);
  EXPECT_NE(res.out.find("feder-tree,relation"), std::string::npos);
  EXPECT_NE(res.out.find("gw,relation"), std::string::npos);
}

TEST(Cli, BenchSurvivesTrivialSize) {
  const RunResult res = run_cli("bench --family grid --sizes 1 --seed 7");
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_EQ(res.out.rfind("n,m,algo,phase,millis\n", 0), 0u);
}

}  // namespace
