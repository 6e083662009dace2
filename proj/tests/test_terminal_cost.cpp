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
#include <vector>

#include "ecoauv/dc/ocp.hpp"
#include "ecoauv/empc/controller.hpp"
#include "ecoauv/empc/terminal_cost.hpp"
#include "ecoauv/error.hpp"
#include "ecoauv/optim/box_qn.hpp"
#include "ecoauv/optim/golden_section.hpp"
#include "ecoauv/vehicle/energy.hpp"
#include "oracles.hpp"

namespace ecoauv::empc {
namespace {

constexpr double kPi = std::numbers::pi;
const Goal kGoal{2.0, 2.0};

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ma += a[i] / n, mb += b[i] / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TEST(HeadingError, RestAtOriginFacingNorth) {
  EXPECT_NEAR(heading_error(HorizontalState{}, kGoal), kPi / 4.0, 1e-15);
}

TEST(HeadingError, FacingGoalIsZero) {
  HorizontalState z;
  z.psi = kPi / 4.0;
  EXPECT_NEAR(heading_error(z, kGoal), 0.0, 1e-15);
}

TEST(HeadingError, DriftAngleCancelsPathAngle) {
  HorizontalState z;
  z.u = 0.1;
  z.v = 0.1;
  EXPECT_NEAR(heading_error(z, kGoal), 0.0, 1e-15);
}

TEST(HeadingError, WrapsIntoHalfOpenInterval) {
  HorizontalState z;
  z.psi = -3.0 * kPi / 4.0 + 1e-3;
  const double e = heading_error(z, kGoal);
  EXPECT_GT(e, -kPi);
  EXPECT_LE(e, kPi);
  EXPECT_NEAR(e, kPi - 1e-3, 1e-12);
}

TEST(HeadingError, UndefinedAtGoal) {
  HorizontalState z;
  z.x = 2.0;
  z.y = 2.0;
  EXPECT_THROW(heading_error(z, kGoal), DomainError);
}

TEST(ApproxThrusts, StraightLineSharesDrag) {
  const VehicleParams p;
  const auto [l, r] = approx_thrusts(0.2, 0.0, 0.0, p);
  EXPECT_DOUBLE_EQ(l, p.x_uu * 0.04 / 2.0);
  EXPECT_DOUBLE_EQ(r, p.x_uu * 0.04 / 2.0);
}

TEST(ApproxThrusts, PureYawIsACouple) {
  const VehicleParams p;
  const double rate = 0.3;
  const auto [l, r] = approx_thrusts(0.0, rate, 0.0, p);
  EXPECT_DOUBLE_EQ(l, p.n_rr * rate * rate / (2.0 * p.l2));
  EXPECT_DOUBLE_EQ(r, -l);
}

TEST(ApproxThrusts, FollowsDcThrustPatterns) {
  const VehicleParams p;
  for (double y0 : {0.0, -0.5, 0.5}) {
    dc::OcpSpec spec;
    spec.initial.nu[0] = optimal_cruise_speed(p);
    spec.initial.eta[1] = y0;
    const dc::DcResult r = dc::solve_horizontal(p, spec);
    ASSERT_TRUE(r.solution.converged);
    const dc::HorizontalNlp nlp = dc::transcribe(p, spec);
    const Trajectory& tr = r.trajectory;
    std::vector<double> approx_sum, approx_diff, dc_sum, dc_diff;
    for (std::size_t k = 1; k + 1 < tr.size(); ++k) {
      const double r_dot = (tr.states[k + 1][2] - tr.states[k - 1][2]) / (tr.times[k + 1] - tr.times[k - 1]);
      const auto [l, rr] = approx_thrusts(tr.states[k][0], tr.states[k][2], r_dot, p);
      const auto c = nlp.control(r.solution.x, static_cast<int>(k));
      approx_sum.push_back(l + rr);
      approx_diff.push_back(std::abs(l - rr));
      dc_sum.push_back(c[0] + c[1]);
      dc_diff.push_back(std::abs(c[0] - c[1]));
    }
    EXPECT_GT(pearson(approx_sum, dc_sum), 0.5) << "y0 = " << y0;
    EXPECT_GT(pearson(approx_diff, dc_diff), 0.5) << "y0 = " << y0;
  }
}

TEST(YawProfile, StartsAtHorizonRate) {
  EXPECT_DOUBLE_EQ(yaw_profile(0.07, 0.8, 4.0, 0.0).rate, 0.07);
}

TEST(YawProfile, RampEndAndPlateau) {
  const double r_n = 0.05, psi_d = 0.8, t_d = 4.0;
  EXPECT_NEAR(yaw_profile(r_n, psi_d, t_d, t_d / 2.0).rate, 2.0 * psi_d / t_d - r_n, 1e-15);
  EXPECT_DOUBLE_EQ(yaw_profile(r_n, psi_d, t_d, t_d).rate, psi_d / t_d);
  EXPECT_DOUBLE_EQ(yaw_profile(r_n, psi_d, t_d, t_d).accel, 0.0);
  EXPECT_DOUBLE_EQ(yaw_profile(r_n, psi_d, t_d, 0.3).accel, 4.0 * (psi_d / t_d - r_n) / t_d);
}

TEST(YawProfile, MatchedRateStaysConstant) {
  const double psi_d = 0.6, t_d = 3.0;
  for (double t : {0.0, 0.5, 1.5, 2.0, 3.0}) {
    EXPECT_NEAR(yaw_profile(psi_d / t_d, psi_d, t_d, t).rate, psi_d / t_d, 1e-15);
  }
}

TEST(YawProfile, RejectsTimesOutsideTurn) {
  EXPECT_THROW(yaw_profile(0.0, 0.5, 2.0, -0.1), DomainError);
  EXPECT_THROW(yaw_profile(0.0, 0.5, 2.0, 2.1), DomainError);
  EXPECT_THROW(yaw_profile(0.0, 0.5, 0.0, 0.0), DomainError);
}

TEST(DynamicCost, NoTurnIsStraightCruise) {
  const VehicleParams p;
  const double u = 0.14, t_d = 3.0;
  const HorizontalState z{u, 0.0, 0.0, 0.0, 0.0, 0.0};
  const double cruise = 2.0 * p.power(p.x_uu * u * u / 2.0) + buoyancy_holding_power(p);
  EXPECT_NEAR(dynamic_cost(z, 0.0, t_d, p), cruise * t_d, 1e-12);
}

TEST(DynamicCost, LinearInTurnDurationAtFixedThrustSamples) {
  const VehicleParams p;
  const double rate = 0.1;
  const HorizontalState z{0.14, 0.0, rate, 0.0, 0.0, 0.0};
  for (double t_d : {1.0, 2.5, 6.0}) {
    EXPECT_NEAR(dynamic_cost(z, 2.0 * rate * t_d, 2.0 * t_d, p), 2.0 * dynamic_cost(z, rate * t_d, t_d, p),
                1e-12);
  }
}

TEST(DynamicCost, ThreeNodeRuleMatchesDenseQuadrature) {
  const VehicleParams p;
  const double u = optimal_cruise_speed(p);
  const HorizontalState z{u, 0.0, 0.0, 0.0, 0.0, 0.0};
  const double holding = buoyancy_holding_power(p);
  for (double psi_d : {0.1, 0.3, 0.6, 1.0}) {
    for (double t_d : {2.0, 5.0, 10.0}) {
      const int n = 20000;
      double dense = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double t = t_d * i / n;
        const YawSample y = yaw_profile(0.0, psi_d, t_d, t);
        const auto [l, r] = approx_thrusts(u, y.rate, y.accel, p);
        dense += (i == 0 || i == n ? 0.5 : 1.0) * (p.power(l) + p.power(r)) * t_d / n;
      }
      const double three_node = dynamic_cost(z, psi_d, t_d, p) - holding * t_d;
      EXPECT_NEAR(three_node, dense, 0.10 * dense) << "psi_d = " << psi_d << ", t_d = " << t_d;
    }
  }
}

TEST(IntermediateState, AlignedHeadingAdvancesStraight) {
  const HorizontalState z{0.14, 0.0, 0.0, 0.0, 0.0, kPi / 4.0};
  const double t_d = 3.0;
  const HorizontalState s = intermediate_state(z, 0.0, kGoal, t_d);
  EXPECT_NEAR(s.x, 0.14 * t_d / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.y, 0.14 * t_d / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.psi, kPi / 4.0, 1e-15);
}

TEST(IntermediateState, ZeroDurationStaysPut) {
  const HorizontalState z{0.14, 0.02, 0.1, 0.3, -0.4, 0.2};
  const HorizontalState s = intermediate_state(z, 0.02, kGoal, 0.0);
  EXPECT_EQ(s.x, z.x);
  EXPECT_EQ(s.y, z.y);
}

TEST(IntermediateState, QuarterTurnChordIsTwoOverPi) {
  const double u = 0.14, v0 = 0.03, t_d = 4.0;
  // Bearing pi/4, drift atan2(v0, u): choose psi so that the heading error is pi/2.
  const double psi = kPi / 4.0 - std::atan2(v0, u) - kPi / 2.0;
  const HorizontalState z{u, v0, 0.0, 0.0, 0.0, psi};
  ASSERT_NEAR(heading_error(z, kGoal), kPi / 2.0, 1e-12);
  const HorizontalState s = intermediate_state(z, v0, kGoal, t_d);
  const double chord = std::hypot(u, v0) * t_d * 2.0 / kPi;
  EXPECT_NEAR(s.x, chord * std::cos(kPi / 4.0), 1e-12);
  EXPECT_NEAR(s.y, chord * std::sin(kPi / 4.0), 1e-12);
  EXPECT_EQ(s.u, u);
  EXPECT_EQ(s.v, v0);
  EXPECT_NEAR(s.r, 2.0 * (kPi / 2.0) / t_d, 1e-12);
  EXPECT_NEAR(s.psi, wrap_angle(psi + kPi), 1e-12);
}

TEST(StaticCost, ZeroAtGoal) {
  HorizontalState s{0.14, 0.0, 0.0, 2.0, 2.0, 0.0};
  EXPECT_EQ(static_cost(s, kGoal, VehicleParams{}), 0.0);
}

TEST(StaticCost, LinearInRemainingDistance) {
  const VehicleParams p;
  const HorizontalState near{0.12, 0.01, 0.0, 1.5, 2.0, 0.0};
  const HorizontalState far{0.12, 0.01, 0.0, 1.0, 2.0, 0.0};
  EXPECT_NEAR(static_cost(far, kGoal, p), 2.0 * static_cost(near, kGoal, p), 1e-12);
}

TEST(StaticCost, PerDistanceMinimiserIsOptimalCruise) {
  const VehicleParams p;
  const auto per_metre = [&](double u) {
    return static_cost(HorizontalState{u, 0.0, 0.0, 1.0, 2.0, 0.0}, kGoal, p);
  };
  const double best = optim::golden_section(per_metre, 0.01, 1.0, 1e-9).argmin;
  EXPECT_NEAR(best, optimal_cruise_speed(p), 1e-5);
}

TEST(StaticCost, RestingAwayFromGoalIsAnError) {
  EXPECT_THROW(static_cost(HorizontalState{}, kGoal, VehicleParams{}), DomainError);
}

TEST(TerminalCost, BreakdownIsConsistent) {
  const VehicleParams p;
  const HorizontalState z{0.13, 0.01, 0.02, 0.3, 0.1, 0.2};
  const TerminalCostBreakdown b = terminal_cost(z, 0.01, kGoal, p);
  EXPECT_GE(b.dynamic_cost, 0.0);
  EXPECT_GE(b.static_cost, 0.0);
  EXPECT_DOUBLE_EQ(b.total, b.dynamic_cost + b.static_cost);
  EXPECT_NEAR(b.psi_d, 2.0 * heading_error(z, kGoal), 1e-15);
  EXPECT_GE(b.t_d, 0.1);
  EXPECT_LE(b.t_d, 10.0);
}

TEST(TerminalCost, AlignedStraightCruiseLimit) {
  const VehicleParams p;
  const double u = 0.14;
  const HorizontalState z{u, 0.0, 0.0, 0.0, 0.0, kPi / 4.0};
  TerminalCostSettings s;
  s.td_min = 1e-4;
  const double d = std::hypot(2.0, 2.0);
  const double straight = d / u * (2.0 * p.power(p.x_uu * u * u / 2.0) + buoyancy_holding_power(p));
  EXPECT_NEAR(terminal_cost_at(z, 0.0, kGoal, s.td_min, p, s).total, straight, 0.01 * straight);
  EXPECT_NEAR(terminal_cost(z, 0.0, kGoal, p, s).total, straight, 0.01 * straight);
}

TEST(TerminalCost, GridValuesRecompose) {
  const VehicleParams p;
  const HorizontalState z{0.12, 0.02, 0.03, 0.4, 0.2, -0.3};
  const double v0 = 0.02;
  const TerminalCostSettings s;
  for (int i = 0; i < s.grid_points; ++i) {
    const double t_d = s.td_min + (s.td_max - s.td_min) * i / (s.grid_points - 1);
    const TerminalCostBreakdown b = terminal_cost_at(z, v0, kGoal, t_d, p, s);
    const double psi_d = 2.0 * heading_error(z, kGoal);
    const double j_d = dynamic_cost(z, psi_d, t_d, p);
    const double j_s = static_cost(intermediate_state(z, v0, kGoal, t_d), kGoal, p);
    EXPECT_NEAR(b.total, j_d + j_s, 1e-12 * (j_d + j_s)) << "t_d = " << t_d;
  }
}

TEST(TerminalCost, MinimiserIsGridGlobal) {
  const VehicleParams p;
  const std::vector<HorizontalState> states{
      {0.14, 0.0, 0.0, 0.0, 0.0, 0.0},     {0.10, 0.02, 0.05, 1.0, 0.5, 1.2},
      {0.14, -0.01, -0.02, 1.8, 1.9, 0.1}, {0.05, 0.0, 0.0, 0.5, 1.5, -2.0},
      {0.14, 0.0, 0.0, 0.0, -0.5, 0.0},    {0.20, 0.03, 0.1, 1.2, 1.2, 2.5}};
  for (const HorizontalState& z : states) {
    EXPECT_LE(testing::terminal_grid_excess(p, z, z.v, kGoal, TerminalCostSettings{}), 0.0)
        << "state " << z.vector().transpose();
  }
}

TEST(TerminalCost, GradientMatchesCentralDifferences) {
  const VehicleParams p;
  const HorizontalState z{0.13, 0.01, 0.02, 0.3, 0.1, 0.2};
  const double v0 = 0.01;
  const TerminalCostBreakdown b = terminal_cost(z, v0, kGoal, p);
  const Vector6d g = terminal_cost_gradient(z, v0, kGoal, b, p);
  const Eigen::VectorXd fd = optim::central_difference_gradient(
      [&](const Eigen::VectorXd& x) {
        return terminal_cost(HorizontalState::from_vector(x), v0, kGoal, p).total;
      },
      z.vector(), 1e-6);
  EXPECT_LT((g - fd).cwiseAbs().maxCoeff(), 1e-4 * fd.cwiseAbs().maxCoeff());
}

TEST(TerminalCost, WithinQuarterOfDcEnergyToGoAfterFirstHorizon) {
  const VehicleParams p;
  const EmpcConfig config;
  for (double y0 : {0.0, -0.5, 0.5}) {
    const HorizontalState start{optimal_cruise_speed(p), 0.0, 0.0, 0.0, y0, 0.0};
    TwoStageTerminalCost terminal(p, config.goal, config.terminal);
    const EmpcSolution sol =
        solve_empc(p, config, terminal, start, straight_line_guess(p, config, start));
    const HorizontalState& zn = sol.terminal_state;
    const double k_h = terminal_cost(zn, start.v, config.goal, p, config.terminal).total;

    dc::OcpSpec spec;
    spec.initial.nu << zn.u, zn.v, 0.0, 0.0, 0.0, zn.r;
    spec.initial.eta << zn.x, zn.y, 0.0, 0.0, 0.0, zn.psi;
    spec.time_lower = 0.01;
    const dc::DcResult to_go = dc::solve_horizontal(p, spec);
    ASSERT_TRUE(to_go.solution.converged);
    EXPECT_NEAR(k_h, to_go.energy, 0.25 * to_go.energy) << "y0 = " << y0;
  }
}

}  // namespace
}  // namespace ecoauv::empc
