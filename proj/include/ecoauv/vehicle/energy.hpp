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

#include "ecoauv/vehicle/params.hpp"
#include "ecoauv/vehicle/state.hpp"

namespace ecoauv {

inline double thruster_power(const VehicleParams& params, double thrust) {
  return params.power(thrust);
}

/// Power of all four thrusters.
inline double stage_power_all(const VehicleParams& params, const ThrustCommand& c) {
  return params.power(c.left) + params.power(c.right) + params.power(c.fore) +
         params.power(c.aft);
}

/// Power of the two horizontal thrusters.
template <typename Scalar>
Scalar stage_power_horizontal(const VehicleParams& params, const Scalar& left,
                              const Scalar& right) {
  return params.power(left) + params.power(right);
}

/// Power the two vertical thrusters spend cancelling net positive buoyancy.
double buoyancy_holding_power(const VehicleParams& params);

/// Energy per metre of straight cruise at surge speed u > 0:
/// (2 P(X_uu u^2 / 2) + P_PB) / u.
double cruise_energy_per_distance(const VehicleParams& params, double u);

/// Minimizer of cruise_energy_per_distance over [lower, upper] by a grid scan
/// followed by golden-section refinement.
double optimal_cruise_speed(const VehicleParams& params, double lower = 0.01, double upper = 3.0);

}  // namespace ecoauv
