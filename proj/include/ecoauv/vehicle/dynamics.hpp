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

#include <cmath>
#include <numbers>

#include "ecoauv/error.hpp"
#include "ecoauv/vehicle/params.hpp"
#include "ecoauv/vehicle/state.hpp"

namespace ecoauv {

/// Pitch magnitude beyond which the Euler-rate transformation is rejected.
inline constexpr double kSingularPitchMargin = 1e-6;

/// Linear-velocity block of J(eta): R = Rz(psi) Ry(theta) Rx(phi).
template <typename Scalar>
Matrix3<Scalar> rotation_body_to_earth(const Scalar& phi, const Scalar& theta, const Scalar& psi) {
  using std::cos;
  using std::sin;
  const Scalar cf = cos(phi), sf = sin(phi);
  const Scalar ct = cos(theta), st = sin(theta);
  const Scalar cp = cos(psi), sp = sin(psi);
  Matrix3<Scalar> r;
  r << cp * ct, -sp * cf + cp * st * sf, sp * sf + cp * cf * st,
       sp * ct, cp * cf + sf * st * sp, -cp * sf + st * sp * cf,
       -st, ct * sf, ct * cf;
  return r;
}

/// Angular-velocity block of J(eta) mapping [p q r] to Euler-angle rates.
template <typename Scalar>
Matrix3<Scalar> euler_rate_transform(const Scalar& phi, const Scalar& theta) {
  using std::cos;
  using std::sin;
  if (std::abs(value_of(theta)) >= std::numbers::pi / 2.0 - kSingularPitchMargin) {
    throw SingularOrientationError("Euler transformation is singular at |theta| = pi/2");
  }
  const Scalar cf = cos(phi), sf = sin(phi);
  const Scalar ct = cos(theta), tt = sin(theta) / ct;
  Matrix3<Scalar> t;
  t << Scalar(1.0), sf * tt, cf * tt,
       Scalar(0.0), cf, -sf,
       Scalar(0.0), sf / ct, cf / ct;
  return t;
}

template <typename Scalar>
Matrix6<Scalar> body_to_earth(const Vector6<Scalar>& eta) {
  Matrix6<Scalar> j = Matrix6<Scalar>::Zero();
  j.template topLeftCorner<3, 3>() = rotation_body_to_earth(eta[3], eta[4], eta[5]);
  j.template bottomRightCorner<3, 3>() = euler_rate_transform(eta[3], eta[4]);
  return j;
}

/// eta_dot = J(eta) nu.
template <typename Scalar>
Vector6<Scalar> kinematic_rates(const Vector6<Scalar>& eta, const Vector6<Scalar>& nu) {
  Vector6<Scalar> rates;
  rates.template head<3>() =
      rotation_body_to_earth(eta[3], eta[4], eta[5]) * nu.template head<3>();
  rates.template tail<3>() = euler_rate_transform(eta[3], eta[4]) * nu.template tail<3>();
  return rates;
}

/// Thruster allocation; thrust = [left right fore aft].
template <typename Scalar>
Vector6<Scalar> allocate(const VehicleParams& p, const Vector4<Scalar>& thrust) {
  const Scalar horizontal = thrust[0] + thrust[1];
  Vector6<Scalar> tau;
  tau << horizontal, Scalar(0.0), thrust[3] + thrust[2], Scalar(0.0),
      horizontal * p.l3 + p.l1 * (thrust[3] - thrust[2]), p.l2 * (thrust[1] - thrust[0]);
  return tau;
}

/// Coriolis and centripetal force C(nu) nu for a diagonal mass matrix.
template <typename Scalar>
Vector6<Scalar> coriolis_force(const Vector6d& m, const Vector6<Scalar>& nu) {
  const Scalar &u = nu[0], &v = nu[1], &w = nu[2], &p = nu[3], &q = nu[4], &r = nu[5];
  Vector6<Scalar> c;
  c << m[2] * w * q - m[1] * v * r,
       m[0] * u * r - m[2] * w * p,
       m[1] * v * p - m[0] * u * q,
       (m[2] - m[1]) * w * v + (m[5] - m[4]) * q * r,
       (m[0] - m[2]) * u * w + (m[3] - m[5]) * p * r,
       (m[1] - m[0]) * u * v + (m[4] - m[3]) * p * q;
  return c;
}

/// Hydrostatic restoring force with the buoyancy centre at the origin and
/// the centre of gravity at (0, 0, zg).
template <typename Scalar>
Vector6<Scalar> restoring_force(const VehicleParams& p, const Vector6<Scalar>& eta) {
  using std::cos;
  using std::sin;
  const double w = p.weight();
  const double net = w - p.buoyancy();
  const Scalar sf = sin(eta[3]), cf = cos(eta[3]);
  const Scalar st = sin(eta[4]), ct = cos(eta[4]);
  Vector6<Scalar> g;
  g << net * st, -net * ct * sf, -net * ct * cf, p.zg * w * ct * sf, p.zg * w * st, Scalar(0.0);
  return g;
}

/// nu_dot = M^-1 (tau - C(nu) nu - D(nu) nu - g(eta)).
template <typename Scalar>
Vector6<Scalar> body_accelerations(const VehicleParams& p, const Vector6<Scalar>& nu,
                                   const Vector6<Scalar>& eta, const Vector4<Scalar>& thrust) {
  using std::abs;
  const Vector6d m = p.mass_diagonal();
  const Vector6d d = p.damping_diagonal();
  const Vector6<Scalar> tau = allocate(p, thrust);
  const Vector6<Scalar> cor = coriolis_force(m, nu);
  const Vector6<Scalar> rest = restoring_force(p, eta);
  Vector6<Scalar> acc;
  for (int i = 0; i < 6; ++i) {
    acc[i] = (tau[i] - cor[i] - d[i] * abs(nu[i]) * nu[i] - rest[i]) / m[i];
  }
  return acc;
}

/// Time derivative of the stacked 12-state [nu; eta].
template <typename Scalar>
Eigen::Matrix<Scalar, 12, 1> full_rates(const VehicleParams& p,
                                        const Eigen::Matrix<Scalar, 12, 1>& state,
                                        const Vector4<Scalar>& thrust) {
  const Vector6<Scalar> nu = state.template head<6>();
  const Vector6<Scalar> eta = state.template tail<6>();
  Eigen::Matrix<Scalar, 12, 1> rates;
  rates << body_accelerations(p, nu, eta, thrust), kinematic_rates(eta, nu);
  return rates;
}

/// Horizontal-plane rates of zeta = [u v r x y psi] with z, phi, theta, w,
/// p and q frozen at zero.
template <typename Scalar>
Vector6<Scalar> horizontal_rates(const VehicleParams& p, const Vector6<Scalar>& zeta,
                                 const Scalar& left, const Scalar& right) {
  using std::abs;
  using std::cos;
  using std::sin;
  const Vector6d m = p.mass_diagonal();
  const Scalar &u = zeta[0], &v = zeta[1], &r = zeta[2], &psi = zeta[5];
  const Scalar cp = cos(psi), sp = sin(psi);
  Vector6<Scalar> rates;
  rates << (left + right + m[1] * v * r - p.x_uu * abs(u) * u) / m[0],
           (-m[0] * u * r - p.y_vv * abs(v) * v) / m[1],
           (p.l2 * (right - left) - (m[1] - m[0]) * u * v - p.n_rr * abs(r) * r) / m[5],
           u * cp - v * sp,
           u * sp + v * cp,
           r;
  return rates;
}

/// One classical fourth-order Runge-Kutta step of x_dot = f(x).
template <typename Vector, typename Rates>
Vector rk4_step(const Vector& x, double dt, Rates&& f) {
  const Vector k1 = f(x);
  const Vector k2 = f(Vector(x + (0.5 * dt) * k1));
  const Vector k3 = f(Vector(x + (0.5 * dt) * k2));
  const Vector k4 = f(Vector(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Typed entry points.

Vector6d kinematic_rates(const VehicleState& state);
GeneralizedForce allocate(const VehicleParams& params, const ThrustCommand& command);
Vector6d dynamics_6dof(const VehicleParams& params, const VehicleState& state,
                       const ThrustCommand& command);
Vector6d dynamics_horizontal(const VehicleParams& params, const HorizontalState& state,
                             double left, double right);

/// RK4 step of the full model; angles re-wrapped to (-pi, pi].
VehicleState step(const VehicleParams& params, const VehicleState& state,
                  const ThrustCommand& command, double dt);
/// RK4 step of the horizontal model; heading re-wrapped.
HorizontalState step(const VehicleParams& params, const HorizontalState& state, double left,
                     double right, double dt);

}  // namespace ecoauv
