// Copyright 2026 The wirelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wirelab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

namespace wirelab {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wirelab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static Outcome run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

TEST_F(CliTest, BuildThenStats) {
  ASSERT_EQ(run({"build", "--input", "5,2,1,3,4", "--algorithm", "standard", "--out", path("net.json")}).code, 0);
  const auto stats = run({"--json", "stats", "--net", path("net.json")});
  ASSERT_EQ(stats.code, 0) << stats.err;
  const auto j = nlohmann::json::parse(stats.out);
  EXPECT_EQ(j["wire_count"], 31);
  EXPECT_EQ(j["max_row"], 15);
  EXPECT_EQ(j["depth"], 5);
}

TEST_F(CliTest, DecisionQuery) {
  ASSERT_EQ(run({"build", "--input", "2,3", "--out", path("net.json")}).code, 0);
  const auto r = run({"query", "--net", path("net.json"), "--target", "5", "--model", "decision"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "target: 5\ndecision: true\n");
  const auto j = run({"query", "--net", path("net.json"), "--target", "5", "--model", "decision", "--json"});
  EXPECT_EQ(j.out, "{\"target\":5,\"decision\":true}\n");
}

TEST_F(CliTest, PhysicalQueryMatchesLibrary) {
  ASSERT_EQ(run({"build", "--input", "5,2,3", "--out", path("net.json")}).code, 0);
  const auto r = run({"--json", "query", "--net", path("net.json"), "--target", "5", "--model", "physical"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["currents"][0].get<double>(), 0.4, 1e-9);
  EXPECT_NEAR(j["estimated_count"].get<double>(), 2.0, 1e-9);

  const auto lib = query(build_standard({5, 2, 3}), 5);
  const auto all = nlohmann::json::parse(
      run({"--json", "query", "--net", path("net.json"), "--target", "5"}).out);
  EXPECT_EQ(all["decision"], lib.decision);
  EXPECT_EQ(all["exact_count"], *lib.exact_count);
  EXPECT_EQ(all["row_path_count"], lib.row_path_count);
  EXPECT_EQ(all["currents"][0].get<double>(), lib.currents[0]);
}

TEST_F(CliTest, ElectricalFlagsAndEnvironment) {
  ASSERT_EQ(run({"build", "--input", "5,2,3", "--out", path("net.json")}).code, 0);
  auto current = [&](std::vector<std::string> extra) {
    std::vector<std::string> args{"--json", "query", "--net", path("net.json"), "--target", "5",
                                  "--model", "physical"};
    args.insert(args.end(), extra.begin(), extra.end());
    return nlohmann::json::parse(run(args).out)["currents"][0].get<double>();
  };
  EXPECT_NEAR(current({"--voltage", "2", "--unit-resistance", "4"}), 0.2, 1e-12);
  ::setenv("WIRELAB_VOLTAGE", "3", 1);
  ::setenv("WIRELAB_RU", "2", 1);
  EXPECT_NEAR(current({}), 0.6, 1e-12);
  EXPECT_NEAR(current({"--voltage", "1"}), 0.2, 1e-12);  // flag beats env
  ::unsetenv("WIRELAB_VOLTAGE");
  ::unsetenv("WIRELAB_RU");
}

TEST_F(CliTest, CountingOnDecisionOnlyNetworkIsADomainError) {
  ASSERT_EQ(run({"build", "--input", "5,1,1,3,1", "--algorithm", "multiset-opt", "--out", path("net.json")}).code, 0);
  const auto r = run({"query", "--net", path("net.json"), "--target", "4", "--model", "count"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("counting unsupported"), std::string::npos);
  const auto all = run({"--json", "query", "--net", path("net.json"), "--target", "4"});
  ASSERT_EQ(all.code, 0);
  const auto j = nlohmann::json::parse(all.out);
  EXPECT_EQ(j["decision"], true);
  EXPECT_FALSE(j.contains("exact_count"));
}

TEST_F(CliTest, GrowMatchesRebuild) {
  ASSERT_EQ(run({"build", "--input", "4,1,5,2", "--algorithm", "reduced", "--out", path("a.json")}).code, 0);
  ASSERT_EQ(run({"grow", "--net", path("a.json"), "--element", "3", "--out", path("b.json")}).code, 0);
  for (int q = 1; q <= 15; ++q) {
    const auto grown = run({"--json", "query", "--net", path("b.json"), "--target", std::to_string(q), "--model", "count"});
    const auto oracle = run({"--json", "oracle", "--input", "4,1,5,2,3", "--target", std::to_string(q)});
    EXPECT_EQ(nlohmann::json::parse(grown.out)["exact_count"], nlohmann::json::parse(oracle.out)["count"]);
  }
}

TEST_F(CliTest, OracleWitnesses) {
  const auto r = run({"--json", "oracle", "--input", "5,2,3", "--target", "5", "--witnesses"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"target\":5,\"decision\":true,\"count\":2,\"witnesses\":[[0],[1,2]]}\n");
}

TEST_F(CliTest, ExportAndProgramRoundTrip) {
  ASSERT_EQ(run({"build", "--input", "1,2", "--out", path("net.json")}).code, 0);
  ASSERT_EQ(run({"export", "--net", path("net.json"), "--format", "svg", "--out", path("net.svg")}).code, 0);
  EXPECT_NE(slurp(path("net.svg")).find("<svg"), std::string::npos);
  const auto dot = run({"export", "--net", path("net.json"), "--format", "dot"});
  EXPECT_EQ(dot.out.rfind("graph wire_network {", 0), 0u);

  ASSERT_EQ(run({"compile", "--net", path("net.json"), "--out", path("net.rwm")}).code, 0);
  EXPECT_EQ(slurp(path("net.rwm")),
            "INPUT 1,2\nKIND standard\nPLAN 0\n"
            "ADD_WIRE id=0 len=1 attach=ROOT:0 elem=0\n"
            "ADD_WIRE id=1 len=2 attach=ROOT:0 elem=1\n"
            "ADD_WIRE id=2 len=2 attach=0 elem=1\n");
  ASSERT_EQ(run({"run", "--program", path("net.rwm"), "--out", path("again.json")}).code, 0);
  EXPECT_EQ(slurp(path("again.json")), slurp(path("net.json")));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"build"}).code, 1);
  EXPECT_EQ(run({"build", "--input", "1,x"}).code, 1);
  EXPECT_EQ(run({"build", "--input", "1,2", "--algorithm", "magic"}).code, 1);
  ASSERT_EQ(run({"build", "--input", "1,2", "--out", path("net.json")}).code, 0);
  EXPECT_EQ(run({"export", "--net", path("net.json"), "--format", ""}).code, 1);
  EXPECT_EQ(run({"query", "--net", path("net.json"), "--target", "0"}).code, 1);
  EXPECT_EQ(run({"query", "--net", path("missing.json"), "--target", "1"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, DomainErrors) {
  EXPECT_EQ(run({"build", "--input", "1,1,1,1", "--max-elements", "3"}).code, 2);
  std::ofstream(path("bad.json")) << "{\"schema_version\": 7}";
  EXPECT_EQ(run({"stats", "--net", path("bad.json")}).code, 2);
  std::ofstream(path("bad.rwm")) << "INPUT 1\nKIND standard\nPLAN 0\nADD_WIRE id=0 len=1 attach=4 elem=0\n";
  const auto r = run({"run", "--program", path("bad.rwm")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("undefined attachment"), std::string::npos);
}

}  // namespace
}  // namespace wirelab
