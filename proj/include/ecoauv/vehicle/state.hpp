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

#include "ecoauv/scalar.hpp"

namespace ecoauv {

/// Full 6-DOF state: body velocities nu = [u v w p q r] and earth-fixed
/// pose eta = [x y z phi theta psi] (NED).
struct VehicleState {
  Vector6d nu = Vector6d::Zero();
  Vector6d eta = Vector6d::Zero();

  Vector12d stacked() const {
    Vector12d s;
    s << nu, eta;
    return s;
  }

  static VehicleState from_stacked(const Vector12d& s) {
    return {s.head<6>(), s.tail<6>()};
  }
};

/// Reduced horizontal-plane state zeta = [u v r x y psi].
struct HorizontalState {
  double u = 0.0;
  double v = 0.0;
  double r = 0.0;
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;

  Vector6d vector() const {
    Vector6d z;
    z << u, v, r, x, y, psi;
    return z;
  }

  static HorizontalState from_vector(const Vector6d& z) {
    return {z[0], z[1], z[2], z[3], z[4], z[5]};
  }

  static HorizontalState project(const VehicleState& s) {
    return {s.nu[0], s.nu[1], s.nu[5], s.eta[0], s.eta[1], s.eta[5]};
  }
};

/// Forces of the four bi-directional thrusters (N).
struct ThrustCommand {
  double left = 0.0;
  double right = 0.0;
  double fore = 0.0;
  double aft = 0.0;

  Vector4d vector() const { return {left, right, fore, aft}; }
  static ThrustCommand from_vector(const Vector4d& t) { return {t[0], t[1], t[2], t[3]}; }

  /// Every component clamped to +-limit.
  ThrustCommand saturated(double limit) const;
  bool within(double limit) const;
};

/// Body-frame generalized force [X Y Z K M N].
struct GeneralizedForce {
  Vector6d tau = Vector6d::Zero();
};

}  // namespace ecoauv
