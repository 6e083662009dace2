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

#include "ecoauv/baselines/pid.hpp"

#include <algorithm>

#include "ecoauv/error.hpp"

namespace ecoauv::baselines {

namespace {

void check_loop(const PidLoop& loop, const std::string& prefix) {
  if (loop.kp < 0.0) throw ConfigError(prefix + "_kp", "must be non-negative");
  if (loop.ki < 0.0) throw ConfigError(prefix + "_ki", "must be non-negative");
  if (loop.kd < 0.0) throw ConfigError(prefix + "_kd", "must be non-negative");
  if (loop.integral_limit < 0.0) throw ConfigError(prefix + "_integral_limit", "must be non-negative");
}

}  // namespace

void PidGains::validate(double thrust_max) const {
  check_loop(depth, "pid.depth");
  check_loop(pitch, "pid.pitch");
  if (!(output_limit > 0.0) || output_limit > thrust_max) {
    throw ConfigError("pid.output_limit", "must be in (0, thrust_max]");
  }
}

std::pair<double, double> pid_step(const VehicleParams& params, const PidGains& gains,
                                   PidState& state, double z, double theta, double z_dot,
                                   double theta_dot, double dt) {
  if (!(dt > 0.0)) throw DomainError("PID time step must be positive");
  const double ez = gains.depth_setpoint - z;
  const double et = gains.pitch_setpoint - theta;
  const double zl = gains.depth.integral_limit;
  const double tl = gains.pitch.integral_limit;
  state.depth_integral = std::clamp(state.depth_integral + ez * dt, -zl, zl);
  state.pitch_integral = std::clamp(state.pitch_integral + et * dt, -tl, tl);

  const double force = gains.depth.kp * ez + gains.depth.ki * state.depth_integral - gains.depth.kd * z_dot;
  const double moment = gains.pitch.kp * et + gains.pitch.ki * state.pitch_integral - gains.pitch.kd * theta_dot;

  const double feed = 0.5 * (params.buoyancy() - params.weight());
  const double diff = 0.5 * moment / params.l1;
  const double limit = gains.output_limit;
  return {std::clamp(feed + 0.5 * force - diff, -limit, limit),
          std::clamp(feed + 0.5 * force + diff, -limit, limit)};
}

}  // namespace ecoauv::baselines
