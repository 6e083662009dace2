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
#include <utility>

#include "ecoauv/error.hpp"
#include "ecoauv/scalar.hpp"
#include "ecoauv/vehicle/energy.hpp"
#include "ecoauv/vehicle/params.hpp"
#include "ecoauv/vehicle/state.hpp"

namespace ecoauv::empc {

struct Goal {
  double x = 0.0;
  double y = 0.0;
};

/// Distance below which a state counts as sitting on the goal.
inline constexpr double kAtGoalDistance = 1e-9;

struct TerminalCostSettings {
  double td_min = 0.1;      // s
  double td_max = 10.0;     // s
  int grid_points = 32;
  double tolerance = 1e-5;  // golden-section interval, s
  /// Floor on the static-stage speed used inside the controller, m/s;
  /// zero makes static_cost strict.
  double min_speed = 1e-3;

  void validate() const;
};

struct TerminalCostBreakdown {
  double t_d = 0.0;
  double psi_d = 0.0;
  HorizontalState intermediate;
  double dynamic_cost = 0.0;
  double static_cost = 0.0;
  double total = 0.0;
  bool goal_arc = false;  // t_d sits where the arc ends on the goal
};

struct YawSample {
  double rate = 0.0;
  double accel = 0.0;
};

// Scalar-generic building blocks. zeta is [u v r x y psi].

template <typename S>
S power_of(const VehicleParams& p, const S& thrust) {
  return p.power(thrust);
}

/// Angle of the velocity vector w.r.t. the nose; 0 at rest.
template <typename S>
S drift_angle(const S& u, const S& v) {
  using std::atan2;
  const double uu = value_of(u), vv = value_of(v);
  if (uu * uu + vv * vv < 1e-9) return u * 0.0;
  return atan2(v, u);
}

/// Goal bearing minus drift angle minus heading, wrapped to (-pi, pi].
template <typename S>
S heading_error(const Vector6<S>& zeta, const Goal& goal) {
  using std::atan2;
  const S dx = goal.x - zeta[3];
  const S dy = goal.y - zeta[4];
  if (std::hypot(value_of(dx), value_of(dy)) <= kAtGoalDistance) {
    throw DomainError("heading error undefined at the goal");
  }
  return wrap_angle<S>(atan2(dy, dx) - drift_angle(zeta[0], zeta[1]) - zeta[5]);
}

/// Thrust pair that sustains surge speed u while following the yaw motion
/// (r, r_dot).
template <typename S>
std::pair<S, S> approx_thrusts(const S& u, const S& r, const S& r_dot, const VehicleParams& p) {
  using std::abs;
  const double izz = p.iz - p.n_rdot;
  const S surge = p.x_uu * u * u;
  const S yaw = (izz * r_dot + p.n_rr * abs(r) * r) / p.l2;
  return {S(0.5 * (surge + yaw)), S(0.5 * (surge - yaw))};
}

/// Ramp from r_N toward the turn rate psi_d / t_d over the first half of the
/// turn, plateau afterwards.
template <typename S>
std::pair<S, S> yaw_profile_t(const S& r_n, const S& psi_d, double t_d, double t) {
  if (!(t_d > 0.0)) throw DomainError("yaw profile needs t_d > 0");
  if (t < 0.0 || t > t_d) throw DomainError("yaw profile time outside [0, t_d]");
  const S plateau = psi_d / t_d;
  if (t <= 0.5 * t_d) {
    const S slope = 4.0 * (plateau - r_n) / t_d;
    return {S(r_n + slope * t), slope};
  }
  return {plateau, S(plateau * 0.0)};
}

inline YawSample yaw_profile(double r_n, double psi_d, double t_d, double t) {
  const auto [rate, accel] = yaw_profile_t<double>(r_n, psi_d, t_d, t);
  return {rate, accel};
}

/// Energy of the turning stage: three-node weighted power times t_d. The
/// t_d/2 node is evaluated on the plateau. t_d may carry derivatives.
template <typename S, typename TD = double>
S dynamic_cost(const Vector6<S>& zeta_n, const S& psi_d, const TD& t_d, const VehicleParams& p) {
  if (!(value_of(t_d) > 0.0)) throw DomainError("dynamic cost needs t_d > 0");
  const S& u = zeta_n[0];
  const S& r_n = zeta_n[2];
  const S plateau = psi_d / t_d;
  const S slope = 4.0 * (plateau - r_n) / t_d;
  const S zero = plateau * 0.0;
  const auto start = approx_thrusts<S>(u, r_n, slope, p);
  const auto turn = approx_thrusts<S>(u, plateau, zero, p);
  const S p_start = power_of<S>(p, start.first) + power_of<S>(p, start.second);
  const S p_turn = power_of<S>(p, turn.first) + power_of<S>(p, turn.second);
  // Nodes 0, t_d/2 and t_d; the last two coincide on the plateau.
  const S p_h = 0.25 * p_start + 0.25 * p_turn + 0.5 * p_turn;
  return (p_h + buoyancy_holding_power(p)) * t_d;
}

/// sin(x)/x with its series near zero.
template <typename S>
S sinc(const S& x) {
  using std::sin;
  return std::abs(value_of(x)) < 1e-6 ? S(1.0 - x * x / 6.0) : S(sin(x) / x);
}

/// State at the end of the turning stage, reached along a circular arc with
/// total heading change psi_d = 2 * heading_error(zeta_n).
template <typename S>
Vector6<S> intermediate_state(const Vector6<S>& zeta_n, double v0, const Goal& goal, double t_d) {
  using std::atan2;
  using std::cos;
  using std::sin;
  using std::sqrt;
  const S dpsi = heading_error<S>(zeta_n, goal);
  const S u_t = sqrt(zeta_n[0] * zeta_n[0] + v0 * v0);
  const S bearing = atan2(goal.y - zeta_n[4], goal.x - zeta_n[3]);
  const S chord = u_t * t_d * sinc<S>(dpsi);
  Vector6<S> s;
  s << zeta_n[0], S(zeta_n[0] * 0.0 + v0), t_d > 0.0 ? S(2.0 * dpsi / t_d) : S(dpsi * 0.0),
      zeta_n[3] + chord * cos(bearing), zeta_n[4] + chord * sin(bearing),
      wrap_angle<S>(zeta_n[5] + 2.0 * dpsi);
  return s;
}

/// Energy of the straight cruise from zeta_s to the goal at zeta_s's speed.
/// Speeds below min_speed are floored; with min_speed = 0 a resting state
/// away from the goal throws.
template <typename S>
S static_cost(const Vector6<S>& zeta_s, const Goal& goal, const VehicleParams& p,
              double min_speed = 0.0) {
  using std::abs;
  using std::sqrt;
  const S dx = goal.x - zeta_s[3];
  const S dy = goal.y - zeta_s[4];
  const double d_value = std::hypot(value_of(dx), value_of(dy));
  if (d_value == 0.0) return dx * 0.0;
  const S d = sqrt(dx * dx + dy * dy);
  S speed = sqrt(zeta_s[0] * zeta_s[0] + zeta_s[1] * zeta_s[1]);
  if (value_of(speed) <= min_speed) {
    if (min_speed <= 0.0) throw DomainError("static cost needs a nonzero speed away from the goal");
    speed = speed * 0.0 + min_speed;
  }
  const S p_static = 2.0 * power_of<S>(p, S(0.5 * p.x_uu * abs(zeta_s[0]) * zeta_s[0]));
  return d / speed * (p_static + buoyancy_holding_power(p));
}

/// K_h(t_d) and its parts at a fixed t_d.
template <typename S>
struct TerminalCostTerms {
  S psi_d;
  Vector6<S> intermediate;
  S dynamic_cost;
  S static_cost;
  S total;
};

template <typename S>
TerminalCostTerms<S> terminal_cost_at(const Vector6<S>& zeta_n, double v0, const Goal& goal,
                                      double t_d, const VehicleParams& p, double min_speed) {
  TerminalCostTerms<S> t;
  t.psi_d = 2.0 * heading_error<S>(zeta_n, goal);
  t.intermediate = intermediate_state<S>(zeta_n, v0, goal, t_d);
  t.dynamic_cost = dynamic_cost<S>(zeta_n, t.psi_d, t_d, p);
  t.static_cost = static_cost<S>(t.intermediate, goal, p, min_speed);
  t.total = t.dynamic_cost + t.static_cost;
  return t;
}

/// Duration for which the turning arc ends exactly on the goal (the static
/// stage vanishes), or a negative value when the arc cannot advance.
template <typename S>
S goal_arc_duration(const Vector6<S>& zeta_n, double v0, const Goal& goal) {
  using std::sqrt;
  const S dpsi = heading_error<S>(zeta_n, goal);
  const S rate = sqrt(zeta_n[0] * zeta_n[0] + v0 * v0) * sinc<S>(dpsi);
  if (!(value_of(rate) > 0.0)) return dpsi * 0.0 - 1.0;
  const S dx = goal.x - zeta_n[3];
  const S dy = goal.y - zeta_n[4];
  return sqrt(dx * dx + dy * dy) / rate;
}

/// K_h along the goal arc: the dynamic cost at t_d = goal_arc_duration.
template <typename S>
S goal_arc_cost(const Vector6<S>& zeta_n, double v0, const Goal& goal, const VehicleParams& p) {
  const S t_hit = goal_arc_duration<S>(zeta_n, v0, goal);
  return dynamic_cost<S, S>(zeta_n, S(2.0 * heading_error<S>(zeta_n, goal)), t_hit, p);
}

// Typed entry points.

double heading_error(const HorizontalState& state, const Goal& goal);
std::pair<double, double> approx_thrusts(double u, double r, double r_dot, const VehicleParams& p);
double dynamic_cost(const HorizontalState& zeta_n, double psi_d, double t_d, const VehicleParams& p);
HorizontalState intermediate_state(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                   double t_d);
double static_cost(const HorizontalState& zeta_s, const Goal& goal, const VehicleParams& p);

/// Minimizes K_h over t_d in [td_min, td_max] (grid, then golden section).
TerminalCostBreakdown terminal_cost(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                    const VehicleParams& p, const TerminalCostSettings& settings = {});

/// K_h at a fixed t_d.
TerminalCostBreakdown terminal_cost_at(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                       double t_d, const VehicleParams& p,
                                       const TerminalCostSettings& settings = {});

/// dK_h/dzeta_n at fixed t_d (by the envelope argument, the gradient of the
/// t_d-minimized cost when t_d is the minimizer).
Vector6d terminal_cost_gradient(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                double t_d, const VehicleParams& p,
                                const TerminalCostSettings& settings = {});

/// Total derivative of the minimized K_h at a breakdown returned by
/// terminal_cost (follows t_d along the goal arc when it is snapped there).
Vector6d terminal_cost_gradient(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                const TerminalCostBreakdown& at, const VehicleParams& p,
                                const TerminalCostSettings& settings = {});

}  // namespace ecoauv::empc
