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

#pragma once

#include <memory>
#include <vector>

#include "ecoauv/dc/ocp.hpp"
#include "ecoauv/empc/terminal_cost.hpp"
#include "ecoauv/optim/box_qn.hpp"
#include "ecoauv/optim/interior_point.hpp"
#include "ecoauv/vehicle/params.hpp"
#include "ecoauv/vehicle/state.hpp"

namespace ecoauv::empc {

struct EmpcConfig {
  int horizon = 5;        // N samples
  double dt = 0.1;        // s
  int substeps = 10;      // RK4 steps per sample in the prediction
  double thrust_max = 7.86;
  TerminalCostSettings terminal;
  bool warm_start = true;
  Goal goal{2.0, 2.0};
  double arrival_radius = 0.05;
  optim::BoxQnSettings solver;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Estimate of the energy still needed from the end of the horizon.
class TerminalCostModel {
 public:
  virtual ~TerminalCostModel() = default;
  /// Value at zeta_n and d/dzeta_n. v0 is the measured sway at the current
  /// sample. Implementations may keep warm-start state between calls.
  virtual double evaluate(const Vector6d& zeta_n, double v0, Vector6d& gradient) = 0;
  /// Two-stage parts for diagnostics; models without them return zeros.
  virtual TerminalCostBreakdown breakdown(const Vector6d& zeta_n, double v0);
};

/// Dynamic (turn) plus static (cruise) approximation minimized over t_d.
class TwoStageTerminalCost : public TerminalCostModel {
 public:
  TwoStageTerminalCost(VehicleParams params, Goal goal, TerminalCostSettings settings = {});
  double evaluate(const Vector6d& zeta_n, double v0, Vector6d& gradient) override;
  TerminalCostBreakdown breakdown(const Vector6d& zeta_n, double v0) override;

 private:
  VehicleParams params_;
  Goal goal_;
  TerminalCostSettings settings_;
};

/// Energy-to-go from a warm-started horizontal collocation solve; the
/// gradient is minus the multipliers of the initial-state rows.
class CollocationTerminalCost : public TerminalCostModel {
 public:
  CollocationTerminalCost(VehicleParams params, Goal goal, double goal_radius, int intervals,
                          optim::InteriorPointSettings settings = {});
  double evaluate(const Vector6d& zeta_n, double v0, Vector6d& gradient) override;
  int solves() const { return solves_; }

 private:
  VehicleParams params_;
  dc::OcpSpec spec_;
  optim::InteriorPointSettings settings_;
  Eigen::VectorXd warm_x_;
  Eigen::VectorXd warm_lambda_;
  int solves_ = 0;
};

struct EmpcSolution {
  std::vector<double> left;   // T_l over the horizon, N
  std::vector<double> right;  // T_r over the horizon, N
  double t_d = 0.0;
  HorizontalState terminal_state;  // predicted zeta_N
  double objective = 0.0;          // stage energy + terminal cost, J
  double stage_energy = 0.0;
  double terminal_cost = 0.0;
  TerminalCostBreakdown terminal;
  double heading_error = 0.0;      // at the current state
  double solve_time = 0.0;         // s
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
};

/// Horizon objective of the thrust sequence [T_l0 T_r0 T_l1 ...]: stage
/// energy of the RK4 rollout plus the terminal cost at the predicted state.
/// Writes the exact gradient when requested.
struct HorizonTerms {
  double stage_energy = 0.0;
  double terminal_cost = 0.0;
  Vector6d terminal_state = Vector6d::Zero();
};
double horizon_objective(const VehicleParams& params, const EmpcConfig& config,
                         TerminalCostModel& terminal, const HorizontalState& current,
                         const Eigen::VectorXd& thrusts, Eigen::VectorXd* gradient = nullptr,
                         HorizonTerms* terms = nullptr);

/// Predicted horizontal state after applying the thrust sequence.
HorizontalState predict(const VehicleParams& params, const EmpcConfig& config,
                        const HorizontalState& current, const Eigen::VectorXd& thrusts);

/// Drag-balanced equal pair at the current surge speed, repeated over the
/// horizon.
Eigen::VectorXd straight_line_guess(const VehicleParams& params, const EmpcConfig& config,
                                    const HorizontalState& current);

/// One receding-horizon solve from warm_start (size 2N). Non-convergence is
/// reported through EmpcSolution::converged; the returned sequence is the
/// best iterate, never worse than warm_start.
EmpcSolution solve_empc(const VehicleParams& params, const EmpcConfig& config,
                        TerminalCostModel& terminal, const HorizontalState& current,
                        const Eigen::VectorXd& warm_start);

struct ControlStep {
  ThrustCommand command;
  bool arrived = false;
  bool solved = false;  // a horizon problem was solved this step
  EmpcSolution solution;
};

/// Stateful receding-horizon controller owning its warm start.
class EmpcController {
 public:
  EmpcController(VehicleParams params, EmpcConfig config,
                 std::unique_ptr<TerminalCostModel> terminal = nullptr);

  EmpcSolution solve(const HorizontalState& current);

  /// Projects to the plane, solves, and merges the first thrust pair with the
  /// given vertical pair; saturates. Inside the arrival disc the horizontal
  /// pair is zero.
  ControlStep control_step(const VehicleState& state, double fore, double aft);

  void reset() { warm_.resize(0); }
  const EmpcConfig& config() const { return config_; }
  TerminalCostModel& terminal() { return *terminal_; }

 private:
  VehicleParams params_;
  EmpcConfig config_;
  std::unique_ptr<TerminalCostModel> terminal_;
  Eigen::VectorXd warm_;
};

}  // namespace ecoauv::empc
