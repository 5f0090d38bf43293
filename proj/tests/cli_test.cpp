#include "ptakkit/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace fs = std::filesystem;
using ptakkit::io::Json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(PTAKKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ptakkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, DeltaReportsCertifiedValue) {
  auto fam = write("c5.json", R"({"spec": {"kind": "graph_cliques", "n": 5, "edges": [[0,1],[1,2],[2,3],[3,4],[4,0]]}})");
  auto r = run_cli("delta -f " + fam + " --certificate-out " + path("cert.json"));
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["delta"], "2/5");
  EXPECT_EQ(j["certificate_verified"], true);
  EXPECT_TRUE(j.contains("timestamp"));

  auto v = run_cli("certificate-verify -f " + fam + " -c " + path("cert.json"));
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(Json::parse(v.out)["ok"], true);
}

TEST_F(CliTest, TamperedCertificateExitsOne) {
  auto fam = write("k.json", R"({"spec": {"kind": "cardinality_bound", "n": 5, "k": 2}})");
  ASSERT_EQ(run_cli("delta -f " + fam + " --certificate-out " + path("cert.json")).code, 0);
  Json cert = Json::parse(std::ifstream(path("cert.json")));
  cert["delta"] = "400001/1000000";
  write("bad.json", cert.dump());
  auto r = run_cli("certificate-verify -f " + fam + " -c " + path("bad.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["ok"], false);
}

TEST_F(CliTest, UsageAndFormatErrorsExitTwo) {
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("delta").code, 2);
  EXPECT_EQ(run_cli("delta -f " + path("missing.json")).code, 2);
  auto bad = write("bad.json", R"({"n": 3, "maximal": [[0, 7]]})");
  EXPECT_EQ(run_cli("delta -f " + bad).code, 2);
  auto fam = write("ok.json", R"({"n": 3, "maximal": [[0, 1]]})");
  EXPECT_EQ(run_cli("trace -f " + fam + " --subset 9").code, 2);
  EXPECT_EQ(run_cli("oracle -f " + fam + " --epsilon abc").code, 2);
  EXPECT_EQ(run_cli("gen --kind nope").code, 2);
  EXPECT_EQ(run_cli("suite --n 13").code, 2);
}

TEST_F(CliTest, NormSearchTraceOracle) {
  auto fam = write("k.json", R"({"spec": {"kind": "cardinality_bound", "n": 4, "k": 2}})");
  auto vec = write("x.json", R"({"coords": ["1", "-1/2", "0", "2"]})");
  auto norm = run_cli("norm -f " + fam + " -v " + vec + " --grid 2");
  ASSERT_EQ(norm.code, 0);
  Json nj = Json::parse(norm.out);
  EXPECT_EQ(nj["min_ratio_nonneg"], "1/2");
  EXPECT_EQ(nj["equivalence"]["fnorm"], "3/1");
  EXPECT_EQ(nj["equivalence"]["l1"], "7/2");

  auto search = run_cli("search -f " + fam);
  ASSERT_EQ(search.code, 0);
  EXPECT_EQ(Json::parse(search.out)["max_member"]["size"], 2);

  auto tr = run_cli("trace -f " + fam + " --subset 1,3");
  ASSERT_EQ(tr.code, 0);
  EXPECT_EQ(Json::parse(tr.out)["delta"], "1/1");

  auto oracle = run_cli("oracle -f " + fam + " --epsilon 1e-6");
  ASSERT_EQ(oracle.code, 0);
  Json oj = Json::parse(oracle.out);
  EXPECT_EQ(oj["bracket_contains_delta"], true);
  EXPECT_EQ(oj["fictitious_play"]["converged"], true);
}

TEST_F(CliTest, GenIsDeterministicAndFeedsOtherCommands) {
  auto a = run_cli("gen --kind intervals --n 6 --pieces 2 --min-measure 1/3 --seed 4");
  auto b = run_cli("gen --kind intervals --n 6 --pieces 2 --min-measure 1/3 --seed 4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["provenance"]["seed"], 4);
  auto sys = write("sys.json", a.out);
  auto bound = run_cli("interval-bound -s " + sys);
  ASSERT_EQ(bound.code, 0);
  EXPECT_EQ(Json::parse(bound.out)["measure_bound_ok"], true);

  ASSERT_EQ(run_cli("gen --kind random --n 7 --sets 9 --seed 3 -o " + path("r.json")).code, 0);
  EXPECT_EQ(run_cli("delta -f " + path("r.json")).code, 0);
  ASSERT_EQ(run_cli("gen --kind cycle-independent --n 6 -o " + path("ci.json")).code, 0);
  EXPECT_EQ(Json::parse(run_cli("delta -f " + path("ci.json")).out)["delta"], "1/2");
}

TEST_F(CliTest, IntervalGenRegeneratesByteExact) {
  ASSERT_EQ(run_cli("gen --kind intervals --seed 1 --n 3 --min-measure 1/4 -o " + path("a.json")).code, 0);
  ASSERT_EQ(run_cli("gen --kind intervals --seed 1 --n 3 --min-measure 1/4 -o " + path("b.json")).code, 0);
  std::ifstream a(path("a.json")), b(path("b.json"));
  std::string ta((std::istreambuf_iterator<char>(a)), {}), tb((std::istreambuf_iterator<char>(b)), {});
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, tb);
  Json j = Json::parse(ta);
  EXPECT_EQ(j["provenance"]["rng"], "mt19937_64+rejection");
  EXPECT_EQ(j["sets"].size(), 3u);
}

TEST_F(CliTest, SuiteIgnoringTimestampIsReproducible) {
  auto a = run_cli("suite --seed 3 --count 5 --n 6 --no-timestamp");
  auto b = run_cli("suite --seed 3 --count 5 --n 6 --no-timestamp");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["ok"], true);
}
