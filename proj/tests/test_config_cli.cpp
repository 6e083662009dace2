// Copyright (c) 2026 The ecoauv Authors.
// All rights reserved.
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ecoauv/config/config.hpp"
#include "ecoauv/error.hpp"

namespace ecoauv {
namespace {

namespace fs = std::filesystem;

const fs::path kConfigDir = ECOAUV_SOURCE_CONFIG_DIR;

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

class ConfigFiles : public ::testing::TestWithParam<const char*> {};

TEST_P(ConfigFiles, EveryRequiredKeyIsEnforcedByName) {
  const config::Values full = config::read_file(kConfigDir / GetParam());
  ASSERT_NO_THROW(config::scenarios(full));
  const std::vector<std::string> keys = config::required_keys(full);
  ASSERT_GT(keys.size(), 20u);
  for (const std::string& key : keys) {
    config::Values values = full;
    ASSERT_EQ(values.erase(key), 1u) << key;
    try {
      config::scenarios(values);
      ADD_FAILURE() << "missing " << key << " accepted";
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.key(), key);
      EXPECT_NE(std::string(e.what()).find(key), std::string::npos);
    }
  }
}

TEST_P(ConfigFiles, UnknownKeyIsRejected) {
  config::Values values = config::read_file(kConfigDir / GetParam());
  values["empc.td_maximum"] = "8";
  try {
    config::scenarios(values);
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "empc.td_maximum");
  }
}

INSTANTIATE_TEST_SUITE_P(Shipped, ConfigFiles, ::testing::Values("default.ini", "paper_suite.ini"));

TEST(Config, DefaultDescribesNominalEmpcRun) {
  const auto scenarios = config::scenarios(config::read_file(kConfigDir / "default.ini"));
  ASSERT_EQ(scenarios.size(), 1u);
  EXPECT_EQ(scenarios[0].controller, sim::ControllerKind::EoEmpc);
  EXPECT_EQ(scenarios[0].goal.x, 2.0);
  EXPECT_EQ(scenarios[0].goal.y, 2.0);
  EXPECT_EQ(scenarios[0].empc.horizon, 5);
  EXPECT_FALSE(scenarios[0].u0.has_value());
}

TEST(Config, SuiteDefinesFourPlusThreePlusThreeRuns) {
  const config::Values values = config::read_file(kConfigDir / "paper_suite.ini");
  ASSERT_TRUE(config::is_suite(values));
  const auto scenarios = config::scenarios(values);
  ASSERT_EQ(scenarios.size(), 10u);
  int nominal = 0, minus = 0, plus = 0;
  for (const auto& s : scenarios) {
    const double expected_y0 = s.group == "nominal" ? 0.0 : s.group == "y0 = -0.5" ? -0.5 : 0.5;
    EXPECT_EQ(s.y0, expected_y0) << s.id;
    nominal += s.group == "nominal";
    minus += s.group == "y0 = -0.5";
    plus += s.group == "y0 = 0.5";
    ASSERT_TRUE(s.plan_y0.has_value());
    EXPECT_EQ(*s.plan_y0, 0.0);
  }
  EXPECT_EQ(nominal, 4);
  EXPECT_EQ(minus, 3);
  EXPECT_EQ(plus, 3);
}

TEST(Config, OverridesReplaceValues) {
  config::Values values = config::read_file(kConfigDir / "default.ini");
  config::apply_overrides(values, {config::parse_override("empc.td_max=8"),
                                   config::parse_override("mass.mass=20.0")});
  const auto scenarios = config::scenarios(values);
  EXPECT_EQ(scenarios[0].empc.terminal.td_max, 8.0);
  EXPECT_EQ(scenarios[0].params.mass, 20.0);
}

TEST(Config, MalformedOverridesAreConfigErrors) {
  EXPECT_THROW(config::parse_override("empc.td_max"), ConfigError);
  EXPECT_THROW(config::parse_override("=3"), ConfigError);
  EXPECT_THROW(config::parse_override("td_max=3"), ConfigError);
  config::Values values = config::read_file(kConfigDir / "default.ini");
  config::apply_overrides(values, {config::parse_override("empc.horizon=five")});
  EXPECT_THROW(config::scenarios(values), ConfigError);
}

TEST(Config, InvalidVehicleValuesNameTheKey) {
  config::Values values = config::read_file(kConfigDir / "default.ini");
  values["mass.displacement"] = "19.0";
  try {
    config::scenarios(values);
    FAIL() << "negative net buoyancy accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "mass.displacement");
  }
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ecoauv-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::setenv(config::kConfigDirVariable, kConfigDir.c_str(), 1);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "ecoauv");
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, ValidateShippedConfigs) {
  EXPECT_EQ(run({"validate-config"}), cli::kExitOk) << err_.str();
  EXPECT_EQ(run({"--config", "paper_suite.ini", "validate-config"}), cli::kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("10 scenario"), std::string::npos);
}

TEST_F(Cli, MissingKeyExitsWithConfigErrorNamingIt) {
  std::string text = slurp(kConfigDir / "default.ini");
  const std::size_t at = text.find("goal_x");
  ASSERT_NE(at, std::string::npos);
  text.erase(at, text.find('\n', at) - at + 1);
  fs::copy_file(kConfigDir / "vehicle.ini", dir_ / "vehicle.ini");
  std::ofstream(dir_ / "broken.ini") << text;
  EXPECT_EQ(run({"--config", (dir_ / "broken.ini").string(), "validate-config"}), cli::kExitConfigError);
  EXPECT_NE(err_.str().find("scenario.goal_x"), std::string::npos) << err_.str();
}

TEST_F(Cli, BadArgumentsAndOverridesExitWithTwo) {
  EXPECT_EQ(run({"no-such-command"}), cli::kExitConfigError);
  EXPECT_EQ(run({"--set", "empc.horizon", "validate-config"}), cli::kExitConfigError);
  EXPECT_EQ(run({"--set", "empc.bogus=1", "validate-config"}), cli::kExitConfigError);
  EXPECT_EQ(run({"--config", "missing.ini", "validate-config"}), cli::kExitConfigError);
  EXPECT_EQ(run({"--config", "paper_suite.ini", "simulate"}), cli::kExitConfigError);
}

TEST_F(Cli, CruiseSpeedPrintsOptimum) {
  EXPECT_EQ(run({"cruise-speed"}), cli::kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("0.140"), std::string::npos) << out_.str();
}

TEST_F(Cli, DcSolveWritesPlanAndRefusesToClobber) {
  const std::vector<std::string> args{"--out", dir_.string(), "dc-solve", "--intervals", "40"};
  ASSERT_EQ(run(args), cli::kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "nominal-eo-empc.dc.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "nominal-eo-empc.dc.md"));
  EXPECT_EQ(run(args), cli::kExitConfigError);
  EXPECT_NE(err_.str().find("--force"), std::string::npos);
  std::vector<std::string> forced = args;
  forced.insert(forced.begin(), "--force");
  EXPECT_EQ(run(forced), cli::kExitOk) << err_.str();
}

TEST_F(Cli, SuiteTabulatesEveryRunReproducibly) {
  // The nominal group of the shipped suite: four runs.
  std::string text = slurp(kConfigDir / "paper_suite.ini");
  text.erase(text.find("[run.y0-minus-dc-feedback]"));
  fs::copy_file(kConfigDir / "vehicle.ini", dir_ / "vehicle.ini");
  std::ofstream(dir_ / "nominal.ini") << text;

  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run({"--config", (dir_ / "nominal.ini").string(), "--out", a.string(), "--no-timing", "--jobs", "1",
                 "suite"}),
            cli::kExitOk)
      << err_.str();
  ASSERT_EQ(run({"--config", (dir_ / "nominal.ini").string(), "--out", b.string(), "--no-timing", "--jobs", "4",
                 "suite"}),
            cli::kExitOk)
      << err_.str();

  const std::string summary = slurp(a / "summary.csv");
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 5);
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() != ".csv") continue;
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path().filename();
  }
}

}  // namespace
}  // namespace ecoauv
