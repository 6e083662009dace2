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

#include <cmath>
#include <numbers>

#include "ecoauv/baselines/los_mpc.hpp"
#include "ecoauv/baselines/pid.hpp"
#include "ecoauv/error.hpp"
#include "ecoauv/vehicle/dynamics.hpp"
#include "ecoauv/vehicle/energy.hpp"

namespace ecoauv::baselines {
namespace {

constexpr double kPi = std::numbers::pi;
const Segment kPath{0.0, 0.0, 2.0, 2.0};

// Point at signed cross-track offset e beside the path, `along` metres from its start.
HorizontalState beside_path(double along, double e) {
  const double ex = 1.0 / std::sqrt(2.0), ey = ex;
  HorizontalState z;
  z.x = along * ex - e * ey;
  z.y = along * ey + e * ex;
  return z;
}

TEST(LosReference, OnPathFollowsAzimuth) {
  const LosConfig c;
  EXPECT_NEAR(los_reference(beside_path(0.7, 0.0), kPath, c), kPi / 4.0, 1e-15);
}

TEST(LosReference, OffsetOfOneLookaheadTurnsByQuarterPi) {
  const LosConfig c;
  const HorizontalState z = beside_path(0.3, c.lookahead);
  ASSERT_NEAR(cross_track_error(z, kPath), c.lookahead, 1e-15);
  EXPECT_NEAR(los_reference(z, kPath, c) - kPath.azimuth(), -kPi / 4.0, 1e-12);
}

TEST(LosReference, LargeOffsetApproachesRightAngle) {
  const LosConfig c;
  const double correction = los_reference(beside_path(0.0, 1e6), kPath, c) - kPath.azimuth();
  EXPECT_NEAR(correction, -kPi / 2.0, 1e-6);
}

TEST(LosReference, IsOddInCrossTrackError) {
  const LosConfig c;
  for (double e : {0.01, 0.2, 0.5, 1.3, 4.0}) {
    const double plus = los_reference(beside_path(0.5, e), kPath, c) - kPath.azimuth();
    const double minus = los_reference(beside_path(0.5, -e), kPath, c) - kPath.azimuth();
    EXPECT_NEAR(plus, -minus, 1e-15) << "e = " << e;
  }
}

TEST(LosReference, RejectsDegenerateSegment) {
  EXPECT_THROW(los_reference(HorizontalState{}, Segment{1.0, 1.0, 1.0, 1.0}, LosConfig{}), DomainError);
}

TEST(LosConfig, RejectsInvalidValues) {
  LosConfig c;
  c.lookahead = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = LosConfig{};
  c.w_u = 0.0;
  c.w_psi = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = LosConfig{};
  c.w_thrust = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(TrackingMpc, OnReferenceHoldsDragBalance) {
  const VehicleParams p;
  LosConfig c;
  c.u_ref = 0.14;
  const HorizontalState z{c.u_ref, 0.0, 0.0, 0.0, 0.0, kPi / 4.0};
  const double balance = p.x_uu * c.u_ref * c.u_ref / 2.0;
  const Eigen::VectorXd warm = Eigen::VectorXd::Constant(2 * c.horizon, 0.0);
  const TrackingSolution s = solve_tracking_mpc(p, c, z, kPi / 4.0, warm);
  EXPECT_NEAR(s.left, balance, 0.05);
  EXPECT_NEAR(s.right, balance, 0.05);
  EXPECT_LT(std::abs(s.left - s.right), 0.05);
}

TEST(TrackingMpc, LargeHeadingErrorSaturatesTheCouple) {
  const VehicleParams p;
  LosConfig c;
  c.u_ref = 0.14;
  const HorizontalState z{c.u_ref, 0.0, 0.0, 0.0, 0.0, 0.0};
  const Eigen::VectorXd warm = Eigen::VectorXd::Zero(2 * c.horizon);
  const TrackingSolution s = solve_tracking_mpc(p, c, z, kPi / 2.0, warm);
  EXPECT_GE(std::abs(s.right - s.left), 0.9 * 2.0 * c.thrust_max);
}

TEST(TrackingMpc, ZeroErrorWithoutInputPenaltyCostsNothing) {
  const VehicleParams p;
  LosConfig c;
  c.u_ref = 0.14;
  c.w_thrust = 0.0;
  const HorizontalState z{c.u_ref, 0.0, 0.0, 0.0, 0.0, 0.3};
  const double balance = p.x_uu * c.u_ref * c.u_ref / 2.0;
  const Eigen::VectorXd thrusts = Eigen::VectorXd::Constant(2 * c.horizon, balance);
  EXPECT_LT(tracking_objective(p, c, z, 0.3, thrusts), 1e-20);
}

TEST(TrackingMpc, UnforcedCostMatchesDirectRollout) {
  const VehicleParams p;
  LosConfig c;
  c.u_ref = 0.14;
  c.w_thrust = 0.3;
  const HorizontalState start{0.2, 0.01, 0.05, 0.0, 0.0, 0.4};
  const double psi_los = 0.1;
  HorizontalState z = start;
  double expected = 0.0;
  for (int k = 0; k < c.horizon; ++k) {
    for (int i = 0; i < c.substeps; ++i) z = step(p, z, 0.0, 0.0, c.dt / c.substeps);
    expected += c.w_u * std::pow(z.u - c.u_ref, 2) + c.w_psi * std::pow(wrap_angle(z.psi - psi_los), 2);
  }
  const double got = tracking_objective(p, c, start, psi_los, Eigen::VectorXd::Zero(2 * c.horizon));
  EXPECT_NEAR(got, expected, 1e-14);
}

TEST(TrackingMpc, IsDeterministic) {
  const VehicleParams p;
  LosConfig c;
  const HorizontalState z{0.1, 0.0, 0.0, 0.2, 0.0, 0.1};
  const Eigen::VectorXd warm = Eigen::VectorXd::Zero(2 * c.horizon);
  const TrackingSolution a = solve_tracking_mpc(p, c, z, 0.6, warm);
  const TrackingSolution b = solve_tracking_mpc(p, c, z, 0.6, warm);
  EXPECT_TRUE((a.thrusts.array() == b.thrusts.array()).all());
}

TEST(LosMpcController, StopsPushingInsideArrivalDisc) {
  LosMpcController ctl(VehicleParams{}, LosConfig{}, kPath);
  VehicleState s;
  s.eta[0] = 2.01;
  s.eta[1] = 2.0;
  const LosMpcController::Step step = ctl.control_step(s, 0.3, 0.4);
  EXPECT_TRUE(step.arrived);
  EXPECT_EQ(step.command.left, 0.0);
  EXPECT_EQ(step.command.right, 0.0);
  EXPECT_EQ(step.command.aft, 0.4);
}

TEST(Pid, EquilibriumOutputsBuoyancyFeedForward) {
  const VehicleParams p;
  PidState state;
  const auto [fore, aft] = pid_step(p, PidGains{}, state, 0.0, 0.0, 0.0, 0.0, 0.1);
  const double hold = (p.buoyancy() - p.weight()) / 2.0;
  EXPECT_NEAR(fore, hold, 1e-15);
  EXPECT_NEAR(aft, hold, 1e-15);
}

TEST(Pid, PureDepthErrorIsCollective) {
  const VehicleParams p;
  PidState state;
  const auto [fore, aft] = pid_step(p, PidGains{}, state, -0.005, 0.0, -0.01, 0.0, 0.1);
  EXPECT_DOUBLE_EQ(fore, aft);
  EXPECT_GT(fore, (p.buoyancy() - p.weight()) / 2.0);
}

TEST(Pid, PitchErrorIsDifferential) {
  const VehicleParams p;
  PidState state;
  const auto [fore, aft] = pid_step(p, PidGains{}, state, 0.0, 0.02, 0.0, 0.0, 0.1);
  const double hold = (p.buoyancy() - p.weight()) / 2.0;
  EXPECT_NEAR(fore - hold, -(aft - hold), 1e-12);
  EXPECT_NE(fore, aft);
}

TEST(Pid, ZeroGainsReturnExactlyTheFeedForward) {
  const VehicleParams p;
  PidGains g;
  g.depth = PidLoop{};
  g.pitch = PidLoop{};
  PidState state;
  const auto [fore, aft] = pid_step(p, g, state, 0.3, -0.2, 0.1, 0.05, 0.1);
  const double hold = (p.buoyancy() - p.weight()) / 2.0;
  EXPECT_EQ(fore, hold);
  EXPECT_EQ(aft, hold);
}

TEST(Pid, OutputsAndIntegratorAreClamped) {
  const VehicleParams p;
  const PidGains g;
  PidState state;
  for (int k = 0; k < 1000; ++k) {
    const auto [fore, aft] = pid_step(p, g, state, 5.0, 1.0, 0.0, 0.0, 0.1);
    EXPECT_LE(std::abs(fore), g.output_limit);
    EXPECT_LE(std::abs(aft), g.output_limit);
  }
  EXPECT_LE(std::abs(state.depth_integral), g.depth.integral_limit);
  EXPECT_LE(std::abs(state.pitch_integral), g.pitch.integral_limit);
}

TEST(Pid, RejectsNegativeGainsAndOversizedLimit) {
  PidGains g;
  g.depth.kp = -1.0;
  EXPECT_THROW(g.validate(7.86), ConfigError);
  g = PidGains{};
  g.output_limit = 10.0;
  EXPECT_THROW(g.validate(7.86), ConfigError);
}

TEST(Pid, HoldsDepthDuringStraightCruise) {
  const VehicleParams p;
  const PidGains g;
  PidState pid;
  VehicleState s;
  s.nu[0] = optimal_cruise_speed(p);
  const double drag = p.x_uu * s.nu[0] * s.nu[0] / 2.0;
  double worst = 0.0;
  for (int k = 0; k < 300; ++k) {
    const Vector6d rates = kinematic_rates(s);
    const auto [fore, aft] = pid_step(p, g, pid, s.eta[2], s.eta[4], rates[2], rates[4], 0.1);
    for (int i = 0; i < 10; ++i) {
      s = step(p, s, ThrustCommand{drag, drag, fore, aft}, 0.01);
      worst = std::max(worst, std::abs(s.eta[2]));
    }
  }
  EXPECT_LE(worst, 0.01);
}

}  // namespace
}  // namespace ecoauv::baselines
