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

#include "ecoauv/vehicle/power_model.hpp"

namespace ecoauv {

/// Physical and hydrodynamic constants of the vehicle (SI units).
///
/// Added-mass terms follow the hydrodynamic-derivative sign convention
/// (X_udot < 0 etc.), so the rigid-body-plus-added mass on a diagonal entry
/// is m - X_udot. Damping coefficients are positive magnitudes of the
/// quadratic drag terms, e.g. surge drag force = x_uu * |u| * u.
struct VehicleParams {
  // geometry
  double length = 1.0;
  double width = 0.5;
  double l1 = 0.30;  // vertical thrusters to midship
  double l2 = 0.20;  // horizontal thrusters to centre line
  double l3 = 0.02;  // horizontal thrusters below the centre of gravity
  double zg = 0.05;  // centre of gravity below the centre of buoyancy

  // mass
  double mass = 20.42;
  double displacement = 20.57;
  double gravity = 9.81;
  double ix = 0.51;
  double iy = 1.28;
  double iz = 1.28;
  double x_udot = -2.0;
  double y_vdot = -15.0;
  double z_wdot = -15.0;
  double k_pdot = -0.05;
  double m_qdot = -1.0;
  double n_rdot = -1.0;

  // quadratic damping magnitudes
  double x_uu = 47.0;
  double y_vv = 196.0;
  double z_ww = 196.0;
  double k_pp = 0.5;
  double m_qq = 8.0;
  double n_rr = 8.0;

  double thrust_max = 7.86;
  PowerModel power;

  double weight() const { return mass * gravity; }
  double buoyancy() const { return displacement * gravity; }

  /// Diagonal of the total (rigid body + added) mass matrix.
  Vector6d mass_diagonal() const {
    Vector6d m;
    m << mass - x_udot, mass - y_vdot, mass - z_wdot, ix - k_pdot, iy - m_qdot, iz - n_rdot;
    return m;
  }

  Vector6d damping_diagonal() const {
    Vector6d d;
    d << x_uu, y_vv, z_ww, k_pp, m_qq, n_rr;
    return d;
  }

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

}  // namespace ecoauv
