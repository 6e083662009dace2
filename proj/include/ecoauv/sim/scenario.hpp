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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ecoauv/baselines/los_mpc.hpp"
#include "ecoauv/baselines/pid.hpp"
#include "ecoauv/dc/ocp.hpp"
#include "ecoauv/dc/trajectory.hpp"
#include "ecoauv/empc/controller.hpp"
#include "ecoauv/vehicle/params.hpp"

namespace ecoauv::sim {

enum class ControllerKind { DcFeedforward, DcFeedback, EoEmpc, LosMpc };

/// "dc-feedforward", "dc-feedback", "eo-empc", "los-mpc".
std::string to_string(ControllerKind kind);
/// Table label, e.g. "DC (feedback)".
std::string display_name(ControllerKind kind);
/// Throws ConfigError("scenario.controller") on unknown names.
ControllerKind parse_controller(const std::string& name);

struct Scenario {
  std::string id = "nominal-eo-empc";
  std::string group = "nominal";
  ControllerKind controller = ControllerKind::EoEmpc;

  double x0 = 0.0;
  double y0 = 0.0;
  double psi0 = 0.0;
  std::optional<double> u0;  // empty: optimal cruise speed
  // Start the DC plan is computed for; empty: the actual start. The
  // feed-forward variant plans for the unperturbed start.
  std::optional<double> plan_x0;
  std::optional<double> plan_y0;

  empc::Goal goal{2.0, 2.0};
  double arrival_radius = 0.05;
  double max_time = 0.0;    // s; <= 0: five times the straight transit at u0
  double sim_dt = 0.01;     // plant integration step, s
  double control_dt = 0.1;  // zero-order-hold sample, s

  VehicleParams params;
  empc::EmpcConfig empc;
  baselines::LosConfig los;
  std::optional<double> los_u_ref;  // empty: the initial surge speed
  baselines::PidGains pid;
  dc::DcSettings dc;
  int dc_intervals = 100;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  /// u0 resolved against the optimal cruise speed.
  double initial_surge() const;
  /// max_time resolved against the straight transit time.
  double time_limit() const;
};

/// Energy attributed to motion axes, J.
struct AxisEnergy {
  double surge = 0.0;
  double heave = 0.0;
  double yaw = 0.0;
  double pitch = 0.0;

  double total() const { return surge + heave + yaw + pitch; }
  /// Shares in percent of total(); all zero when total() is zero.
  std::array<double, 4> shares() const;
};

/// Splits a command's power over the axes. The horizontal pair's power is
/// shared between surge and yaw in proportion to P((T_l+T_r)/2) and
/// P((T_r-T_l)/2); the vertical pair likewise between heave (collective) and
/// pitch (differential). The parts sum to the command's power exactly.
AxisEnergy attribute_power(const VehicleParams& params, const ThrustCommand& command);

/// Axis energies of a trajectory with four-thruster commands, each command
/// held over its interval.
AxisEnergy axis_energy(const VehicleParams& params, const Trajectory& trajectory);

/// One row per controller sample of the EO-EMPC run.
struct DiagnosticRow {
  double t = 0.0;
  double heading_error = 0.0;
  double t_d = 0.0;
  double dynamic_cost = 0.0;
  double static_cost = 0.0;
  double terminal_cost = 0.0;
  double stage_energy = 0.0;
  double solve_time = 0.0;
  bool converged = false;
};

struct ScenarioResult {
  std::string id;
  std::string group;
  ControllerKind controller = ControllerKind::EoEmpc;

  bool goal_reached = false;
  bool failed = false;      // controller or solver failure
  std::string message;      // failure or termination reason
  double travel_time = 0.0;
  double energy = 0.0;      // sum over thrusters, J
  double final_distance = 0.0;
  std::array<double, 4> thruster_energy{};  // T_l, T_r, T_f, T_a
  AxisEnergy axis_energy;
  double compute_time = 0.0;  // cumulative controller time, s
  int controller_steps = 0;
  int nonconverged_steps = 0;

  double max_abs_depth = 0.0;
  double max_abs_roll = 0.0;
  double max_abs_pitch = 0.0;
  double max_abs_thrust = 0.0;

  Trajectory trajectory;  // 6-DOF states and the four thrusts per sim step
  std::vector<DiagnosticRow> diagnostics;
};

/// Closed-loop 6-DOF run. Controller failures are reported in the result.
ScenarioResult run(const Scenario& scenario);

}  // namespace ecoauv::sim
