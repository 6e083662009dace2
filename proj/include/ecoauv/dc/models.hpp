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

#include "ecoauv/scalar.hpp"
#include "ecoauv/vehicle/dynamics.hpp"
#include "ecoauv/vehicle/energy.hpp"
#include "ecoauv/vehicle/params.hpp"

namespace ecoauv::dc {

/// Solver-facing power P(sqrt(T^2 + eps^2)) - P(eps). It equals P at T = 0,
/// differs from P by at most P(eps) elsewhere, and keeps the curvature of
/// |T|^1.5 bounded where a thrust changes sign. eps = 0 gives P itself.
struct SmoothPower {
  const PowerModel* power;
  double eps = 0.0;

  double value(double t) const {
    if (eps == 0.0) return (*power)(t);
    return (*power)(std::sqrt(t * t + eps * eps)) - (*power)(eps);
  }
  double derivative(double t) const {
    if (eps == 0.0) return power->derivative(t);
    const double s = std::sqrt(t * t + eps * eps);
    return power->derivative(s) * t / s;
  }
  double second_derivative(double t) const {
    if (eps == 0.0) return power->second_derivative(t);
    const double s = std::sqrt(t * t + eps * eps);
    const double ds = t / s;
    return power->second_derivative(s) * ds * ds + power->derivative(s) * eps * eps / (s * s * s);
  }
};

/// Planar model zeta = [u v r x y psi], controls [T_l T_r]; the stage cost
/// carries the constant buoyancy-holding power of the vertical pair.
struct HorizontalModel {
  static constexpr int kStates = 6;
  static constexpr int kControls = 2;
  using Control = Eigen::Matrix<double, 2, 1>;

  VehicleParams params;
  double holding_power = 0.0;
  double smoothing = 0.0;  // eps of SmoothPower, N

  explicit HorizontalModel(VehicleParams p, double eps = 0.0)
      : params(std::move(p)), holding_power(buoyancy_holding_power(params)), smoothing(eps) {}

  template <typename S>
  Eigen::Matrix<S, 6, 1> rates(const Eigen::Matrix<S, 6, 1>& zeta,
                               const Eigen::Matrix<S, 2, 1>& thrust) const {
    return horizontal_rates<S>(params, zeta, thrust[0], thrust[1]);
  }

  /// Exact power of the command.
  double power(const Control& t) const { return params.power(t[0]) + params.power(t[1]) + holding_power; }

  double stage_cost(const Control& t) const {
    const SmoothPower p{&params.power, smoothing};
    return p.value(t[0]) + p.value(t[1]) + holding_power;
  }
  Control stage_cost_gradient(const Control& t) const {
    const SmoothPower p{&params.power, smoothing};
    return {p.derivative(t[0]), p.derivative(t[1])};
  }
  Control stage_cost_hessian_diagonal(const Control& t) const {
    const SmoothPower p{&params.power, smoothing};
    return {p.second_derivative(t[0]), p.second_derivative(t[1])};
  }
};

/// Full 6-DOF model over the stacked state [nu; eta] with all four thrusters;
/// the stage cost is the total thruster power.
struct FullModel {
  static constexpr int kStates = 12;
  static constexpr int kControls = 4;
  using Control = Eigen::Matrix<double, 4, 1>;

  VehicleParams params;
  double smoothing = 0.0;

  explicit FullModel(VehicleParams p, double eps = 0.0) : params(std::move(p)), smoothing(eps) {}

  template <typename S>
  Eigen::Matrix<S, 12, 1> rates(const Eigen::Matrix<S, 12, 1>& state,
                                const Eigen::Matrix<S, 4, 1>& thrust) const {
    return full_rates<S>(params, state, thrust);
  }

  double power(const Control& t) const {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += params.power(t[i]);
    return sum;
  }

  double stage_cost(const Control& t) const {
    const SmoothPower p{&params.power, smoothing};
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += p.value(t[i]);
    return sum;
  }
  Control stage_cost_gradient(const Control& t) const {
    const SmoothPower p{&params.power, smoothing};
    Control g;
    for (int i = 0; i < 4; ++i) g[i] = p.derivative(t[i]);
    return g;
  }
  Control stage_cost_hessian_diagonal(const Control& t) const {
    const SmoothPower p{&params.power, smoothing};
    Control h;
    for (int i = 0; i < 4; ++i) h[i] = p.second_derivative(t[i]);
    return h;
  }
};

/// Straight-line transit: state [u x], control the total surge thrust shared
/// equally by the horizontal pair.
struct SurgeOnlyModel {
  static constexpr int kStates = 2;
  static constexpr int kControls = 1;
  using Control = Eigen::Matrix<double, 1, 1>;

  VehicleParams params;
  double holding_power = 0.0;

  explicit SurgeOnlyModel(VehicleParams p)
      : params(std::move(p)), holding_power(buoyancy_holding_power(params)) {}

  template <typename S>
  Eigen::Matrix<S, 2, 1> rates(const Eigen::Matrix<S, 2, 1>& x,
                               const Eigen::Matrix<S, 1, 1>& thrust) const {
    using std::abs;
    const double m11 = params.mass_diagonal()[0];
    Eigen::Matrix<S, 2, 1> r;
    r << (thrust[0] - params.x_uu * abs(x[0]) * x[0]) / m11, x[0];
    return r;
  }

  double power(const Control& t) const { return 2.0 * params.power(0.5 * t[0]) + holding_power; }
  double stage_cost(const Control& t) const { return power(t); }
  Control stage_cost_gradient(const Control& t) const {
    return Control::Constant(params.power.derivative(0.5 * t[0]));
  }
  Control stage_cost_hessian_diagonal(const Control& t) const {
    return Control::Constant(0.5 * params.power.second_derivative(0.5 * t[0]));
  }
};

}  // namespace ecoauv::dc
