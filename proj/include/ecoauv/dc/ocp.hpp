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

#include <vector>

#include "ecoauv/dc/collocation.hpp"
#include "ecoauv/dc/models.hpp"
#include "ecoauv/dc/trajectory.hpp"
#include "ecoauv/optim/interior_point.hpp"
#include "ecoauv/vehicle/params.hpp"
#include "ecoauv/vehicle/state.hpp"

namespace ecoauv::dc {

/// Waypoint-to-goal energy-management problem.
struct OcpSpec {
  VehicleState initial;
  double goal_x = 2.0;
  double goal_y = 2.0;
  double goal_radius = 0.05;
  double depth_max = 0.01;  // |z|
  double roll_max = 0.05;   // |phi|
  double pitch_max = 0.05;  // |theta|
  double thrust_max = 7.86;
  int intervals = 100;
  bool free_final_time = true;
  double final_time = 20.0;  // horizon when the final time is fixed
  double time_lower = 1.0;
  double time_upper = 200.0;
  double power_smoothing = 0.01;  // N; see SmoothPower

  /// Throws DomainError on an inconsistent specification.
  void validate() const;
};

using HorizontalNlp = TrapezoidCollocation<HorizontalModel>;
using FullNlp = TrapezoidCollocation<FullModel>;
using SurgeNlp = TrapezoidCollocation<SurgeOnlyModel>;

HorizontalNlp transcribe(const VehicleParams& params, const OcpSpec& spec);
/// Full 6-DOF variant with the depth/roll/pitch boxes.
FullNlp transcribe_full(const VehicleParams& params, const OcpSpec& spec);

/// Straight line toward the goal at constant heading and the given cruise
/// speed, with drag-balancing thrusts; clamped to the boxes.
Trajectory initial_guess(const VehicleParams& params, const OcpSpec& spec, double cruise_speed);
Trajectory initial_guess_full(const VehicleParams& params, const OcpSpec& spec, double cruise_speed);

/// Node-wise conversions between trajectories and decision vectors. The
/// trajectory power is the interval mean of the node stage costs.
template <typename Model>
Eigen::VectorXd to_decision_vector(const TrapezoidCollocation<Model>& nlp, const Trajectory& guess);
template <typename Model>
Trajectory to_trajectory(const TrapezoidCollocation<Model>& nlp, const Eigen::VectorXd& x,
                         const std::vector<std::string>& state_names,
                         const std::vector<std::string>& command_names);

optim::NlpSolution solve(const HorizontalNlp& nlp, const Trajectory& guess,
                         const optim::InteriorPointSettings& settings);
optim::NlpSolution solve(const FullNlp& nlp, const Trajectory& guess,
                         const optim::InteriorPointSettings& settings);

struct DcSettings {
  optim::InteriorPointSettings ipm;
  int multistarts = 3;         // nominal, then -/+ speed_spread variants
  double speed_spread = 0.2;
  double cruise_speed = 0.0;   // <= 0: optimal cruise speed
};

struct DcResult {
  optim::NlpSolution solution;
  Trajectory trajectory;
  double energy = 0.0;  // trapezoidal energy of the plan with the exact power model, J
  double final_time = 0.0;
  int best_start = 0;
  double total_solve_time = 0.0;  // all starts, s
};

/// Best converged solution over the deterministic multistart set; when no
/// start converges the least-violating one is returned with its status.
DcResult solve_horizontal(const VehicleParams& params, const OcpSpec& spec,
                          const DcSettings& settings = {});
DcResult solve_full(const VehicleParams& params, const OcpSpec& spec, const DcSettings& settings = {});

const std::vector<std::string>& horizontal_state_names();
const std::vector<std::string>& full_state_names();
const std::vector<std::string>& horizontal_command_names();
const std::vector<std::string>& full_command_names();

// Explicit instantiations live in dc_solve.cpp.
extern template Eigen::VectorXd to_decision_vector(const HorizontalNlp&, const Trajectory&);
extern template Eigen::VectorXd to_decision_vector(const FullNlp&, const Trajectory&);
extern template Eigen::VectorXd to_decision_vector(const SurgeNlp&, const Trajectory&);
extern template Trajectory to_trajectory(const HorizontalNlp&, const Eigen::VectorXd&,
                                         const std::vector<std::string>&,
                                         const std::vector<std::string>&);
extern template Trajectory to_trajectory(const FullNlp&, const Eigen::VectorXd&,
                                         const std::vector<std::string>&,
                                         const std::vector<std::string>&);
extern template Trajectory to_trajectory(const SurgeNlp&, const Eigen::VectorXd&,
                                         const std::vector<std::string>&,
                                         const std::vector<std::string>&);

}  // namespace ecoauv::dc
