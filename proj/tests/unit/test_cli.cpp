#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "adgraph/cli.hpp"
#include "adgraph/report.hpp"
#include "fixtures.hpp"

using adgraph::cli::run;
using adgraph::testing::data_path;

namespace {

std::string scenario(const char* name) { return data_path(name).string(); }

}  // namespace

TEST(Cli, ValidateToy5g) {
  auto r = run({"validate", "--scenario", scenario("toy5g.scenario")});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.substr(0, 6), "valid\n");
}

TEST(Cli, InvalidScenarioExitsTwo) {
  auto path = std::filesystem::temp_directory_path() / "adgraph_bad.scenario";
  {
    std::ofstream out(path);
    out << R"({"objects": [{"id": "A", "layer": "nowhere", "category": "channel"}]})";
  }
  auto r = run({"validate", "--scenario", path.string()});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("invalid"), std::string::npos);
  r = run({"chains", "--scenario", path.string()});
  EXPECT_EQ(r.exit_code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, MissingFileExitsTwo) {
  EXPECT_EQ(run({"risk", "--scenario", "/no/such/file"}).exit_code, 2);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).exit_code, 1);
  EXPECT_EQ(run({"frobnicate"}).exit_code, 1);
  EXPECT_EQ(run({"chains"}).exit_code, 1);
  EXPECT_EQ(run({"chains", "--scenario", scenario("toy5g.scenario"), "--format", "xml"}).exit_code,
            1);
  EXPECT_EQ(run({"chains", "--scenario", scenario("toy5g.scenario"), "--objective", "x"})
                .exit_code,
            1);
  EXPECT_EQ(run({"chains", "--scenario", scenario("toy5g.scenario"), "--target", "NOPE"})
                .exit_code,
            1);
  EXPECT_EQ(run({"defend", "--scenario", scenario("toy5g.scenario"), "--mode", "budget"})
                .exit_code,
            1);
  EXPECT_EQ(run({"chains", "--scenario", scenario("toy5g.scenario"), "--config", "/no/cfg"})
                .exit_code,
            1);
}

TEST(Cli, InfeasibleCutExitsThree) {
  auto r = run({"defend", "--mode", "cut", "--scenario", scenario("infeasible.scenario")});
  EXPECT_EQ(r.exit_code, 3);
}

TEST(Cli, ChainsJsonDeterministic) {
  std::vector<std::string> args = {"chains", "--scenario", scenario("toy5g.scenario"), "--format",
                                   "json"};
  auto a = run(args);
  auto b = run(args);
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  auto doc = adgraph::Json::parse(a.out);
  EXPECT_EQ(doc["chains"].size(), 2u);
}

TEST(Cli, ObjectiveAndSemantics) {
  auto r = run({"chains", "--scenario", scenario("toy5g.scenario"), "--format", "json",
                "--objective", "max_threat", "--semantics", "strict"});
  ASSERT_EQ(r.exit_code, 0);
  auto doc = adgraph::Json::parse(r.out);
  EXPECT_EQ(doc["chain"]["total_threat"], 18.0);
}

TEST(Cli, CoverageWithExplicitChain) {
  auto r = run({"defend", "--scenario", scenario("toy5g.scenario"), "--mode", "coverage",
                "--chain", "jam#0,fakebs#0", "--format", "json"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto doc = adgraph::Json::parse(r.out);
  EXPECT_EQ(doc["chosen"], adgraph::Json::array({"auth"}));
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  auto path = std::filesystem::temp_directory_path() / "adgraph_cfg.json";
  {
    std::ofstream out(path);
    out << R"({"max_len": 3})";
  }
  auto capped = run({"chains", "--scenario", scenario("toy5g.scenario"), "--config",
                     path.string(), "--format", "json"});
  EXPECT_EQ(adgraph::Json::parse(capped.out)["chains"].size(), 0u);
  auto flagged = run({"chains", "--scenario", scenario("toy5g.scenario"), "--config",
                      path.string(), "--max-len", "4", "--format", "json"});
  EXPECT_EQ(adgraph::Json::parse(flagged.out)["chains"].size(), 2u);
  std::filesystem::remove(path);
}

TEST(Cli, Version) {
  auto r = run({"--version"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "adgraph 1.0.0 (scenario schema 1)\n");
}

TEST(Cli, SimulateRuns) {
  auto r = run({"simulate", "--scenario", scenario("toy5g.scenario"), "--runs", "3", "--seed",
                "4", "--format", "json"});
  ASSERT_EQ(r.exit_code, 0);
  auto doc = adgraph::Json::parse(r.out);
  EXPECT_EQ(doc["runs"].size(), 3u);
  EXPECT_EQ(doc["runs"][2]["seed"], 6);
  EXPECT_EQ(doc["summary"]["runs"], 3);
}

TEST(Cli, DeriveAddsAttacks) {
  auto r = run({"graph", "--scenario", scenario("toy5g.scenario"), "--derive", "--format",
                "json"});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(adgraph::Json::parse(r.out)["attack_graph"]["edges"].size(), 9u);
}

TEST(Cli, PotentialText) {
  auto r = run({"potential", "--scenario", scenario("potential.scenario"), "--from", "BS1",
                "--to", "VM1"});
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("fwimplant"), std::string::npos);
}
