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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ecoauv/dc/trajectory.hpp"
#include "ecoauv/error.hpp"
#include "ecoauv/sim/plot_data.hpp"
#include "ecoauv/sim/scenario.hpp"
#include "ecoauv/sim/suite.hpp"
#include "ecoauv/vehicle/energy.hpp"
#include "oracles.hpp"

namespace ecoauv::sim {
namespace {

Scenario make(ControllerKind kind, double y0 = 0.0, const std::string& id = "run") {
  Scenario sc;
  sc.id = id;
  sc.controller = kind;
  sc.y0 = y0;
  sc.plan_x0 = 0.0;
  sc.plan_y0 = 0.0;
  return sc;
}

// Shared nominal runs; each is simulated once per test binary.
const ScenarioResult& nominal(ControllerKind kind) {
  static std::map<ControllerKind, ScenarioResult> cache;
  auto it = cache.find(kind);
  if (it == cache.end()) it = cache.emplace(kind, run(make(kind))).first;
  return it->second;
}

std::string trajectory_csv(const ScenarioResult& r) {
  std::ostringstream out;
  write_csv(r.trajectory, out);
  return out.str();
}

int count_lines(const std::string& text) { return static_cast<int>(std::count(text.begin(), text.end(), '\n')); }

TEST(OptimalCruiseSpeed, WithoutHoldingPowerRunsToLowerBound) {
  EXPECT_NEAR(optimal_cruise_speed(testing::neutral_params(), 0.01, 3.0), 0.01, 1e-6);
}

TEST(OptimalCruiseSpeed, MatchesBruteForceGrid) {
  const VehicleParams p;
  double best = 0.0, best_value = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 300000; ++i) {
    const double u = 1e-5 * i;
    const double value = cruise_energy_per_distance(p, u);
    if (value < best_value) best_value = value, best = u;
  }
  const double u = optimal_cruise_speed(p);
  EXPECT_GT(u, 0.0);
  EXPECT_NEAR(u, best, 1e-3);
  EXPECT_NEAR(u, 0.1404, 1e-4);
}

TEST(OptimalCruiseSpeed, GrowsWithHoldingPower) {
  const VehicleParams base;
  VehicleParams doubled = base;
  // P is |T|^1.5, so doubling the holding power scales the excess by 2^(2/3).
  const double excess = base.displacement - base.mass;
  doubled.displacement = base.mass + excess * std::pow(2.0, 2.0 / 3.0);
  ASSERT_NEAR(buoyancy_holding_power(doubled), 2.0 * buoyancy_holding_power(base), 1e-12);
  EXPECT_GT(optimal_cruise_speed(doubled), optimal_cruise_speed(base));
}

TEST(Scenario, ValidationNamesTheKey) {
  Scenario sc;
  sc.arrival_radius = 0.0;
  try {
    sc.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "scenario.arrival_radius");
  }
  sc = Scenario{};
  sc.control_dt = 0.105;
  EXPECT_THROW(sc.validate(), ConfigError);
}

TEST(Scenario, DefaultTimeLimitIsFiveStraightTransits) {
  const Scenario sc;
  EXPECT_NEAR(sc.time_limit(), 5.0 * std::hypot(2.0, 2.0) / optimal_cruise_speed(sc.params), 1e-9);
}

TEST(Run, ZeroDistanceScenarioIsImmediatelyDone) {
  Scenario sc;
  sc.x0 = 2.0;
  sc.y0 = 2.0;
  const ScenarioResult r = run(sc);
  EXPECT_TRUE(r.goal_reached);
  EXPECT_EQ(r.travel_time, 0.0);
  EXPECT_EQ(r.energy, 0.0);
}

TEST(Run, AllControllersReachGoalNominally) {
  for (ControllerKind kind : {ControllerKind::DcFeedforward, ControllerKind::DcFeedback,
                              ControllerKind::EoEmpc, ControllerKind::LosMpc}) {
    const ScenarioResult& r = nominal(kind);
    EXPECT_TRUE(r.goal_reached) << to_string(kind) << ": " << r.message;
    EXPECT_FALSE(r.failed);
  }
}

TEST(Run, EnergyBookkeepingCloses) {
  for (ControllerKind kind : {ControllerKind::DcFeedback, ControllerKind::EoEmpc, ControllerKind::LosMpc}) {
    const ScenarioResult& r = nominal(kind);
    double thrusters = 0.0;
    for (double e : r.thruster_energy) thrusters += e;
    EXPECT_NEAR(r.axis_energy.total(), thrusters, 1e-3 * thrusters) << to_string(kind);
    EXPECT_NEAR(r.energy, thrusters, 1e-3 * thrusters) << to_string(kind);

    const std::array<double, 4> shares = r.axis_energy.shares();
    EXPECT_NEAR(shares[0] + shares[1] + shares[2] + shares[3], 100.0, 0.1);

    const Trajectory& tr = r.trajectory;
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) integral += tr.power[k] * (tr.times[k + 1] - tr.times[k]);
    EXPECT_NEAR(integral, r.energy, 1e-3 * r.energy) << to_string(kind);

    const AxisEnergy replayed = axis_energy(VehicleParams{}, r.trajectory);
    EXPECT_NEAR(replayed.total(), r.axis_energy.total(), 1e-9 * r.energy);
  }
}

TEST(Run, AttributionSplitsEachCommandExactly) {
  const VehicleParams p;
  for (const ThrustCommand& c : {ThrustCommand{1.0, 1.0, 0.7, 0.7}, ThrustCommand{-2.0, 3.0, 0.1, 1.4},
                                 ThrustCommand{0.0, 0.0, 0.0, 0.0}, ThrustCommand{7.86, -7.86, -1.0, 1.0}}) {
    const AxisEnergy a = attribute_power(p, c);
    EXPECT_NEAR(a.total(), stage_power_all(p, c), 1e-12);
    EXPECT_GE(a.surge, 0.0);
    EXPECT_GE(a.yaw, 0.0);
    EXPECT_GE(a.heave, 0.0);
    EXPECT_GE(a.pitch, 0.0);
  }
  const AxisEnergy pure = attribute_power(p, ThrustCommand{1.0, 1.0, 0.7, 0.7});
  EXPECT_EQ(pure.yaw, 0.0);
  EXPECT_EQ(pure.pitch, 0.0);
}

TEST(Run, BaselinesRespectThrustSaturation) {
  for (ControllerKind kind : {ControllerKind::EoEmpc, ControllerKind::LosMpc, ControllerKind::DcFeedback}) {
    const ScenarioResult& r = nominal(kind);
    EXPECT_LE(r.max_abs_thrust, VehicleParams{}.thrust_max) << to_string(kind);
    for (const Eigen::VectorXd& c : r.trajectory.commands) {
      ASSERT_LE(c.cwiseAbs().maxCoeff(), VehicleParams{}.thrust_max);
    }
  }
}

TEST(Run, EoEmpcStaysInsideDepthAndAttitudeBand) {
  const ScenarioResult& r = nominal(ControllerKind::EoEmpc);
  EXPECT_LE(r.max_abs_depth, 0.012);
  EXPECT_LE(r.max_abs_roll, 0.06);
  EXPECT_LE(r.max_abs_pitch, 0.06);
}

TEST(Run, HalvingSimStepBarelyMovesEnergy) {
  Scenario fine = make(ControllerKind::EoEmpc);
  fine.sim_dt = 0.005;
  const ScenarioResult r = run(fine);
  const double coarse = nominal(ControllerKind::EoEmpc).energy;
  EXPECT_NEAR(r.energy, coarse, 0.005 * coarse);
}

TEST(Run, DcHeavePowerHasPlateau) {
  const ScenarioResult& r = nominal(ControllerKind::DcFeedback);
  const VehicleParams p;
  std::vector<double> heave;
  for (const Eigen::VectorXd& c : r.trajectory.commands) {
    heave.push_back(attribute_power(p, ThrustCommand{c[0], c[1], c[2], c[3]}).heave);
  }
  ASSERT_GT(heave.size(), 100u);
  std::vector<double> middle(heave.begin() + heave.size() / 10, heave.end() - heave.size() / 10);
  std::vector<double> sorted = middle;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  EXPECT_NEAR(median, buoyancy_holding_power(p), 0.1 * buoyancy_holding_power(p));
  for (double h : middle) EXPECT_NEAR(h, median, 0.2 * median);
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  const ScenarioResult a = run(make(ControllerKind::EoEmpc));
  const ScenarioResult& b = nominal(ControllerKind::EoEmpc);
  EXPECT_EQ(trajectory_csv(a), trajectory_csv(b));
  std::ostringstream da, db;
  write_diagnostics_csv(a.diagnostics, da, false);
  write_diagnostics_csv(b.diagnostics, db, false);
  EXPECT_EQ(da.str(), db.str());
}

TEST(Suite, ReductionIsRelativeToLos) {
  EXPECT_DOUBLE_EQ(energy_reduction(10.0, 20.0), -50.0);
  EXPECT_DOUBLE_EQ(energy_reduction(30.0, 20.0), 50.0);
}

TEST(Suite, EmptySuiteGivesEmptyTable) {
  const SuiteReport report = run_suite({});
  EXPECT_TRUE(report.results.empty());
  EXPECT_TRUE(report.rows.empty());
  std::ostringstream csv;
  write_summary_csv(report.rows, csv);
  EXPECT_EQ(count_lines(csv.str()), 1);
}

TEST(Suite, OrderAndOutputIndependentOfThreadCount) {
  std::vector<Scenario> scenarios{make(ControllerKind::LosMpc, 0.5, "c-los"),
                                  make(ControllerKind::DcFeedback, 0.5, "a-dc"),
                                  make(ControllerKind::EoEmpc, 0.5, "b-empc")};
  for (Scenario& s : scenarios) s.group = "y0 = 0.5";
  const SuiteReport serial = run_suite(scenarios, 1);
  const SuiteReport parallel = run_suite(scenarios, 3);
  ASSERT_EQ(serial.rows.size(), 3u);
  EXPECT_EQ(serial.rows[0].id, "a-dc");
  EXPECT_EQ(serial.rows[1].id, "b-empc");
  EXPECT_EQ(serial.rows[2].id, "c-los");
  std::ostringstream a, b;
  write_summary_csv(serial.rows, a, false);
  write_summary_csv(parallel.rows, b, false);
  EXPECT_EQ(a.str(), b.str());

  const SuiteRow& empc = serial.rows[1];
  ASSERT_TRUE(empc.has_reduction);
  EXPECT_NEAR(empc.reduction, energy_reduction(empc.energy, serial.rows[2].energy), 1e-12);
  EXPECT_FALSE(serial.rows[2].has_reduction);
}

class PlotData : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("ecoauv-plot-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(PlotData, EoEmpcRunGivesFourDocumentedFiles) {
  const ScenarioResult& r = nominal(ControllerKind::EoEmpc);
  const auto paths = emit_plot_data(r, make(ControllerKind::EoEmpc), dir_);
  ASSERT_EQ(paths.size(), 4u);
  for (const auto& path : paths) {
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    std::ifstream in(path);
    std::string comment, header;
    std::getline(in, comment);
    std::getline(in, header);
    EXPECT_EQ(comment.rfind("# columns:", 0), 0u) << path;
    EXPECT_EQ(header.rfind("t,", 0), 0u) << path;
  }
}

TEST_F(PlotData, EmptyTrajectoryGivesHeadersOnly) {
  ScenarioResult empty;
  empty.id = "empty";
  const Scenario sc;
  for (PlotKind kind : kPlotKinds) {
    std::ostringstream out;
    write_plot_csv(kind, empty, sc, out);
    EXPECT_EQ(count_lines(out.str()), 2) << plot_suffix(kind);
  }
}

}  // namespace
}  // namespace ecoauv::sim
