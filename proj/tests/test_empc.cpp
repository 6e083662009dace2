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
#include <numbers>
#include <vector>

#include "ecoauv/empc/controller.hpp"
#include "ecoauv/error.hpp"
#include "ecoauv/sim/scenario.hpp"
#include "ecoauv/vehicle/dynamics.hpp"
#include "ecoauv/vehicle/energy.hpp"
#include "oracles.hpp"

namespace ecoauv::empc {
namespace {

constexpr double kPi = std::numbers::pi;

HorizontalState nominal_start(const VehicleParams& p) {
  return {optimal_cruise_speed(p), 0.0, 0.0, 0.0, 0.0, 0.0};
}

TEST(EmpcConfig, RejectsInvalidSettings) {
  EmpcConfig c;
  c.horizon = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = EmpcConfig{};
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = EmpcConfig{};
  c.terminal.td_min = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = EmpcConfig{};
  c.terminal.td_max = 0.05;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(SolveEmpc, OnAxisCruiseKeepsThrustsBalanced) {
  const VehicleParams p;
  const EmpcConfig config;
  const HorizontalState z{optimal_cruise_speed(p), 0.0, 0.0, 0.0, 0.0, kPi / 4.0};
  TwoStageTerminalCost terminal(p, config.goal, config.terminal);
  const EmpcSolution s = solve_empc(p, config, terminal, z, straight_line_guess(p, config, z));
  EXPECT_LT(std::abs(s.left.front() - s.right.front()), 0.05);
}

TEST(SolveEmpc, ThrustsStayWithinBoundsAndObjectiveSplits) {
  const VehicleParams p;
  const EmpcConfig config;
  const HorizontalState z{0.1, 0.02, -0.1, 0.5, 1.5, -2.0};
  TwoStageTerminalCost terminal(p, config.goal, config.terminal);
  const EmpcSolution s = solve_empc(p, config, terminal, z, straight_line_guess(p, config, z));
  ASSERT_EQ(s.left.size(), 5u);
  for (int k = 0; k < config.horizon; ++k) {
    EXPECT_LE(std::abs(s.left[k]), config.thrust_max);
    EXPECT_LE(std::abs(s.right[k]), config.thrust_max);
  }
  EXPECT_TRUE(std::isfinite(s.objective));
  EXPECT_NEAR(s.objective, s.stage_energy + s.terminal_cost, 1e-12 * s.objective);
}

TEST(SolveEmpc, NeverWorseThanWarmStart) {
  const VehicleParams p;
  const EmpcConfig config;
  const HorizontalState z{0.12, 0.0, 0.0, 0.2, 0.0, 0.5};
  TwoStageTerminalCost terminal(p, config.goal, config.terminal);
  const Eigen::VectorXd warm = straight_line_guess(p, config, z);
  const double start = horizon_objective(p, config, terminal, z, warm);
  const EmpcSolution s = solve_empc(p, config, terminal, z, warm);
  EXPECT_LE(s.objective, start);
}

TEST(SolveEmpc, GradientMatchesCentralDifferences) {
  const VehicleParams p;
  const EmpcConfig config;
  const std::vector<HorizontalState> states{
      nominal_start(p), {0.14, 0.0, 0.0, 0.0, -0.5, 0.0}, {0.14, 0.0, 0.0, 0.0, 0.5, 0.0},
      {0.12, 0.02, 0.05, 1.0, 0.8, 0.9}, {0.08, -0.01, -0.03, 1.7, 1.8, 0.4}};
  for (const HorizontalState& z : states) {
    EXPECT_LT(testing::empc_gradient_error(p, config, z), 1e-4) << "state " << z.vector().transpose();
  }
}

TEST(SolveEmpc, PredictionUsesTheSimulatorDiscretisation) {
  const VehicleParams p;
  const EmpcConfig config;
  const HorizontalState z{0.12, 0.01, 0.02, 0.3, 0.4, 0.5};
  Eigen::VectorXd thrusts(10);
  thrusts << 1.0, 0.5, 0.8, 0.9, 0.2, 1.5, 0.0, 0.0, -0.4, 0.7;
  HorizontalState ref = z;
  for (int k = 0; k < config.horizon; ++k) {
    for (int i = 0; i < config.substeps; ++i) {
      ref = step(p, ref, thrusts[2 * k], thrusts[2 * k + 1], config.dt / config.substeps);
    }
  }
  const HorizontalState got = predict(p, config, z, thrusts);
  EXPECT_LT((got.vector() - ref.vector()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Controller, ClosedLoopReducesHeadingErrorOverFirstTwoSeconds) {
  const VehicleParams p;
  const EmpcConfig config;
  EmpcController controller(p, config);
  HorizontalState z = nominal_start(p);
  const double initial = std::abs(heading_error(z, config.goal));
  for (int k = 0; k < 20; ++k) {
    const EmpcSolution s = controller.solve(z);
    for (int i = 0; i < 10; ++i) z = step(p, z, s.left.front(), s.right.front(), 0.01);
  }
  EXPECT_LT(std::abs(heading_error(z, config.goal)), initial);
}

TEST(Controller, ArrivalGivesZeroHorizontalThrust) {
  const VehicleParams p;
  EmpcController controller(p, EmpcConfig{});
  VehicleState s;
  s.eta[0] = 2.0;
  s.eta[1] = 1.98;
  const ControlStep step = controller.control_step(s, 0.7, 0.7);
  EXPECT_TRUE(step.arrived);
  EXPECT_FALSE(step.solved);
  EXPECT_EQ(step.command.left, 0.0);
  EXPECT_EQ(step.command.right, 0.0);
  EXPECT_EQ(step.command.fore, 0.7);
}

TEST(Controller, SaturatesMergedCommand) {
  const VehicleParams p;
  EmpcController controller(p, EmpcConfig{});
  VehicleState s;
  s.nu[0] = 0.14;
  const ControlStep step = controller.control_step(s, 20.0, -20.0);
  EXPECT_EQ(step.command.fore, p.thrust_max);
  EXPECT_EQ(step.command.aft, -p.thrust_max);
  EXPECT_TRUE(step.command.within(p.thrust_max));
}

TEST(Controller, NominalStepIsFiniteAndBounded) {
  const VehicleParams p;
  EmpcController controller(p, EmpcConfig{});
  VehicleState s;
  s.nu[0] = optimal_cruise_speed(p);
  const ControlStep step = controller.control_step(s, 0.3, 0.3);
  ASSERT_TRUE(step.solved);
  for (double t : {step.command.left, step.command.right}) {
    EXPECT_TRUE(std::isfinite(t));
    EXPECT_LE(std::abs(t), p.thrust_max);
  }
}

TEST(Controller, WarmStartIsDeterministic) {
  const VehicleParams p;
  EmpcController a(p, EmpcConfig{});
  EmpcController b(p, EmpcConfig{});
  HorizontalState z = nominal_start(p);
  for (int k = 0; k < 15; ++k) {
    const EmpcSolution sa = a.solve(z);
    const EmpcSolution sb = b.solve(z);
    ASSERT_EQ(sa.left, sb.left);
    ASSERT_EQ(sa.right, sb.right);
    for (int i = 0; i < 10; ++i) z = step(p, z, sa.left.front(), sa.right.front(), 0.01);
  }
  a.reset();
  EmpcController fresh(p, EmpcConfig{});
  EXPECT_EQ(a.solve(z).left, fresh.solve(z).left);
}

TEST(ClosedLoop, SpentPlusEnergyToGoStaysWithinTenPercentBand) {
  for (double y0 : {0.0, -0.5, 0.5}) {
    sim::Scenario sc;
    sc.y0 = y0;
    const sim::ScenarioResult r = sim::run(sc);
    ASSERT_TRUE(r.goal_reached) << r.message;
    const Trajectory& tr = r.trajectory;
    double running_min = std::numeric_limits<double>::infinity();
    double worst = 0.0, worst_t = 0.0;
    std::size_t j = 0;
    for (const sim::DiagnosticRow& d : r.diagnostics) {
      while (j + 1 < tr.times.size() && tr.times[j] < d.t - 1e-9) ++j;
      const double value = tr.energy[j] + d.terminal_cost;
      running_min = std::min(running_min, value);
      if (value / running_min - 1.0 > worst) worst = value / running_min - 1.0, worst_t = d.t;
    }
    EXPECT_LE(worst, 0.10) << "y0 = " << y0 << ": largest rise at t = " << worst_t << " s";
  }
}

}  // namespace
}  // namespace ecoauv::empc
