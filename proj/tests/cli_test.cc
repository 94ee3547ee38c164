// Copyright 2026 The Equity Auction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "equity_auction/config.h"

namespace equity_auction {
namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code;
  std::string output;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("eqauction_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CommandResult Exec(const std::string& args, const std::string& env = "") {
    const fs::path log = dir_ / "stdout.txt";
    const std::string command = env + " " + EQAUCTION_BIN + " --out-dir " +
                                (dir_ / "out").string() + " " + args + " > " +
                                log.string() + " 2>&1";
    const int status = std::system(command.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ReadFile(log)};
  }

  fs::path dir_;
};

TEST_F(CliTest, BoundsRejectsInvalidGrid) {
  EXPECT_EQ(Exec("bounds --points 1").exit_code, 2);
  EXPECT_EQ(Exec("bounds --gamma-min 2 --gamma-max 1").exit_code, 2);
  EXPECT_EQ(Exec("no-such-command").exit_code, 2);
  EXPECT_EQ(Exec("audit --mech nonsense").exit_code, 2);
  EXPECT_EQ(Exec("audit --gamma -1").exit_code, 2);
}

TEST_F(CliTest, BoundsCsvHasProvenanceAndUnitFactorAtZero) {
  const CommandResult run = Exec("bounds --points 101");
  ASSERT_EQ(run.exit_code, 0) << run.output;
  std::istringstream csv(ReadFile(dir_ / "out" / "bounds.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("# config_hash=", 0), 0u);
  std::getline(csv, line);
  EXPECT_EQ(line, "# seed=0");
  std::getline(csv, line);
  EXPECT_EQ(line, "gamma,u_star,beta_star,theta,factor");
  std::getline(csv, line);
  EXPECT_EQ(line.substr(line.rfind(',') + 1), "1");
}

TEST_F(CliTest, AuditExitCodes) {
  EXPECT_EQ(Exec("audit --mech robust --gamma 0.25").exit_code, 0);
  EXPECT_EQ(
      Exec("audit --mech stochastic --gamma 1 --marginals uniform").exit_code,
      0);
  const CommandResult lp = Exec("audit --mech lp-expectation --step 0.1");
  EXPECT_EQ(lp.exit_code, 1);
  EXPECT_NE(lp.output.find("Eq="), std::string::npos) << lp.output;
  EXPECT_NE(ReadFile(dir_ / "out" / "audit.csv").find("Eq"),
            std::string::npos);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  const std::string args =
      "evaluate --mech stochastic --mode mc --step 0.05 --seed 3";
  ASSERT_EQ(Exec(args).exit_code, 0);
  const std::string first = ReadFile(dir_ / "out" / "evaluate.csv");
  ASSERT_EQ(Exec(args).exit_code, 0);
  EXPECT_EQ(first, ReadFile(dir_ / "out" / "evaluate.csv"));
  ASSERT_EQ(Exec("evaluate --mech stochastic --mode mc --step 0.05 --seed 4")
                .exit_code,
            0);
  EXPECT_NE(first, ReadFile(dir_ / "out" / "evaluate.csv"));
}

TEST_F(CliTest, EnvironmentOverridesOutputDirectory) {
  const fs::path other = dir_ / "elsewhere";
  const CommandResult run = Exec("bounds --points 11",
                       "EQAUCTION_OUT_DIR=" + other.string());
  ASSERT_EQ(run.exit_code, 0) << run.output;
  EXPECT_TRUE(fs::exists(other / "bounds.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / "bounds.csv"));
}

TEST_F(CliTest, StressWritesOneTablePairPerRho) {
  const fs::path config = dir_ / "stress.json";
  std::ofstream(config) << R"({"step": 0.1, "contamination":
      {"eps": [0, 1], "rho": [-0.5, 0.5]}, "output_dir": ")"
                        << (dir_ / "stress").string() << "\"}";
  const CommandResult run = Exec("stress --config " + config.string());
  ASSERT_EQ(run.exit_code, 0) << run.output;
  for (const char* name :
       {"stress_rho_m0.5_revenue.csv", "stress_rho_m0.5_regret.csv",
        "stress_rho_0.5_revenue.csv", "stress_rho_0.5_regret.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / "stress" / name)) << name;
  }
  const CommandResult bad =
      Exec("stress --config " + (dir_ / "missing.json").string());
  EXPECT_EQ(bad.exit_code, 2);
}

TEST(ConfigTest, DefaultsAndReplication) {
  const ExperimentConfig config =
      ParseConfig(nlohmann::json::parse(R"({"gamma": 1})"));
  EXPECT_EQ(config.gamma, 1.0);
  ASSERT_EQ(config.marginals.size(), 2u);
  EXPECT_EQ(config.marginals[1].Name(), "beta22");
  EXPECT_EQ(config.eps.size(), 11u);
  EXPECT_EQ(config.rho, (std::vector<double>{-0.5, 0.0, 0.5}));
  EXPECT_EQ(config.ic, IcMode::kAdjacent);
  // The canonical form round-trips and keeps the hash.
  const ExperimentConfig again = ParseConfig(config.ToJson());
  EXPECT_EQ(again.Hash(), config.Hash());
  EXPECT_NE(ParseConfig(nlohmann::json::parse(R"({"gamma": 2})")).Hash(),
            config.Hash());
}

TEST(ConfigTest, RejectsInvalidInput) {
  for (const char* text :
       {R"({"gama": 1})", R"({"gamma": -1})", R"({"step": 0.03})",
        R"({"contamination": {"eps": [1.5]}})",
        R"({"contamination": {"rho": [2]}})", R"({"ic": "local"})",
        R"({"marginals": [{"family": "uniform"}, {"family": "uniform"},
                          {"family": "uniform"}]})",
        R"({"gamma": "high"})", R"([1, 2])"}) {
    EXPECT_THROW(ParseConfig(nlohmann::json::parse(text)),
                 std::invalid_argument)
        << text;
  }
  EXPECT_THROW(LoadConfig("/nonexistent/config.json"), std::invalid_argument);
}

TEST(ConfigTest, Fnv1aKnownValues) {
  EXPECT_EQ(Fnv1aHex(""), "cbf29ce484222325");
  EXPECT_EQ(Fnv1aHex("a"), "af63dc4c8601ec8c");
}

TEST(ConfigTest, MarginalListsAndFactory) {
  EXPECT_EQ(ParseMarginalList("uniform", 3).size(), 3u);
  EXPECT_EQ(ParseMarginalList("uniform,beta22", 2)[1].Name(), "beta22");
  EXPECT_THROW(ParseMarginalList("uniform,beta22", 3), std::invalid_argument);
  EXPECT_THROW(ParseMarginalList("normal", 1), std::invalid_argument);
  MechanismSpec spec;
  spec.name = "robust";
  EXPECT_EQ(MakeMechanism(spec)->name(), "robust");
  spec.name = "bogus";
  EXPECT_THROW(MakeMechanism(spec), std::invalid_argument);
  spec.name = "lp-ex-post";
  spec.step = 0.25;
  spec.marginals = ParseMarginalList("uniform", 2);
  EXPECT_NO_THROW(MakeMechanism(spec));
}

}  // namespace
}  // namespace equity_auction
