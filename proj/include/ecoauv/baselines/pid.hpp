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

#include <utility>

#include "ecoauv/vehicle/params.hpp"

namespace ecoauv::baselines {

struct PidLoop {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral_limit = 0.0;  // clamp on the integrated error
};

/// Depth (collective) and pitch (differential) regulators for the vertical
/// thruster pair.
struct PidGains {
  PidLoop depth{50.0, 5.0, 80.0, 0.02};   // N/m, N/(m s), N s/m, m s
  PidLoop pitch{10.0, 2.0, 10.0, 0.1};    // N m/rad, ..., rad s
  double depth_setpoint = 0.0;            // m, positive down
  double pitch_setpoint = 0.0;            // rad
  double output_limit = 7.86;             // N per thruster

  /// Throws ConfigError naming the offending key.
  void validate(double thrust_max) const;
};

struct PidState {
  double depth_integral = 0.0;
  double pitch_integral = 0.0;
};

/// One PID update. Returns (T_f, T_a): buoyancy feed-forward (B - W)/2 each,
/// plus the collective depth force split evenly, plus the pitch moment as a
/// differential over the lever l1; each thrust saturated at output_limit.
std::pair<double, double> pid_step(const VehicleParams& params, const PidGains& gains,
                                   PidState& state, double z, double theta, double z_dot,
                                   double theta_dot, double dt);

}  // namespace ecoauv::baselines
