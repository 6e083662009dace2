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

#include "ecoauv/vehicle/dynamics.hpp"

#include <algorithm>

namespace ecoauv {

ThrustCommand ThrustCommand::saturated(double limit) const {
  const Vector4d t = vector().cwiseMax(-limit).cwiseMin(limit);
  return from_vector(t);
}

bool ThrustCommand::within(double limit) const {
  return (vector().array().abs() <= limit).all();
}

Vector6d kinematic_rates(const VehicleState& state) {
  return kinematic_rates<double>(state.eta, state.nu);
}

GeneralizedForce allocate(const VehicleParams& params, const ThrustCommand& command) {
  return {allocate<double>(params, command.vector())};
}

Vector6d dynamics_6dof(const VehicleParams& params, const VehicleState& state,
                       const ThrustCommand& command) {
  return body_accelerations<double>(params, state.nu, state.eta, command.vector());
}

Vector6d dynamics_horizontal(const VehicleParams& params, const HorizontalState& state,
                             double left, double right) {
  return horizontal_rates<double>(params, state.vector(), left, right);
}

VehicleState step(const VehicleParams& params, const VehicleState& state,
                  const ThrustCommand& command, double dt) {
  if (!(dt > 0.0)) throw DomainError("step requires dt > 0");
  const Vector4d thrust = command.vector();
  const Vector12d next = rk4_step(state.stacked(), dt, [&](const Vector12d& s) {
    return full_rates<double>(params, s, thrust);
  });
  VehicleState out = VehicleState::from_stacked(next);
  for (int i = 3; i < 6; ++i) out.eta[i] = wrap_angle(out.eta[i]);
  return out;
}

HorizontalState step(const VehicleParams& params, const HorizontalState& state, double left,
                     double right, double dt) {
  if (!(dt > 0.0)) throw DomainError("step requires dt > 0");
  const Vector6d next = rk4_step(state.vector(), dt, [&](const Vector6d& z) {
    return horizontal_rates<double>(params, z, left, right);
  });
  HorizontalState out = HorizontalState::from_vector(next);
  out.psi = wrap_angle(out.psi);
  return out;
}

}  // namespace ecoauv
