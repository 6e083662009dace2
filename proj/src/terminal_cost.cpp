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

#include "ecoauv/empc/terminal_cost.hpp"

#include "ecoauv/optim/golden_section.hpp"

namespace ecoauv::empc {

void TerminalCostSettings::validate() const {
  if (!(td_min > 0.0)) throw ConfigError("empc.td_min", "must be positive");
  if (!(td_max > td_min)) throw ConfigError("empc.td_max", "must exceed empc.td_min");
  if (grid_points < 2) throw ConfigError("empc.td_grid_points", "must be at least 2");
  if (!(tolerance > 0.0)) throw ConfigError("empc.td_tolerance", "must be positive");
  if (!(min_speed >= 0.0)) throw ConfigError("empc.min_speed", "must be non-negative");
}

double heading_error(const HorizontalState& state, const Goal& goal) {
  return heading_error<double>(state.vector(), goal);
}

std::pair<double, double> approx_thrusts(double u, double r, double r_dot, const VehicleParams& p) {
  return approx_thrusts<double>(u, r, r_dot, p);
}

double dynamic_cost(const HorizontalState& zeta_n, double psi_d, double t_d, const VehicleParams& p) {
  return dynamic_cost<double>(zeta_n.vector(), psi_d, t_d, p);
}

HorizontalState intermediate_state(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                   double t_d) {
  if (t_d < 0.0) throw DomainError("intermediate state needs t_d >= 0");
  return HorizontalState::from_vector(intermediate_state<double>(zeta_n.vector(), v0, goal, t_d));
}

double static_cost(const HorizontalState& zeta_s, const Goal& goal, const VehicleParams& p) {
  return static_cost<double>(zeta_s.vector(), goal, p, 0.0);
}

TerminalCostBreakdown terminal_cost_at(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                       double t_d, const VehicleParams& p,
                                       const TerminalCostSettings& settings) {
  const auto t = terminal_cost_at<double>(zeta_n.vector(), v0, goal, t_d, p, settings.min_speed);
  TerminalCostBreakdown b;
  b.t_d = t_d;
  b.psi_d = t.psi_d;
  b.intermediate = HorizontalState::from_vector(t.intermediate);
  b.dynamic_cost = t.dynamic_cost;
  b.static_cost = t.static_cost;
  b.total = t.total;
  return b;
}

namespace {

// The static distance |chord - d| has a kink at the goal-arc duration; the
// grid/golden search lands next to it, so snap when that point is at least
// as good.
bool snap_to_goal_arc(const Vector6d& z, double v0, const Goal& goal, const VehicleParams& p,
                      const TerminalCostSettings& settings, double& t_d, double& value) {
  const double t_hit = goal_arc_duration<double>(z, v0, goal);
  if (!(t_hit >= settings.td_min && t_hit <= settings.td_max)) return false;
  if (std::abs(t_hit - t_d) > 1e-3 * std::max(1.0, t_hit) + 10.0 * settings.tolerance) return false;
  const double hit_value = terminal_cost_at<double>(z, v0, goal, t_hit, p, settings.min_speed).total;
  if (hit_value > value) return false;
  t_d = t_hit;
  value = hit_value;
  return true;
}

}  // namespace

TerminalCostBreakdown terminal_cost(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                    const VehicleParams& p, const TerminalCostSettings& settings) {
  settings.validate();
  const Vector6d z = zeta_n.vector();
  const auto k_h = [&](double t_d) {
    return terminal_cost_at<double>(z, v0, goal, t_d, p, settings.min_speed).total;
  };
  // The turn ends no later than where its arc reaches the goal.
  double upper = settings.td_max;
  const double t_hit = goal_arc_duration<double>(z, v0, goal);
  if (t_hit > settings.td_min) upper = std::min(upper, t_hit);
  optim::ScalarMinimum best = optim::grid_golden_minimize(
      k_h, settings.td_min, upper, settings.grid_points, settings.tolerance);
  const bool arc = snap_to_goal_arc(z, v0, goal, p, settings, best.argmin, best.value);
  TerminalCostBreakdown b = terminal_cost_at(zeta_n, v0, goal, best.argmin, p, settings);
  b.goal_arc = arc;
  if (arc) b.static_cost = 0.0, b.total = b.dynamic_cost;
  return b;
}

Vector6d terminal_cost_gradient(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                double t_d, const VehicleParams& p,
                                const TerminalCostSettings& settings) {
  Vector6<ADScalar> z;
  const Vector6d value = zeta_n.vector();
  for (int i = 0; i < 6; ++i) z[i] = ADScalar(value[i], 6, i);
  const ADScalar total = terminal_cost_at<ADScalar>(z, v0, goal, t_d, p, settings.min_speed).total;
  Vector6d g = Vector6d::Zero();
  if (total.derivatives().size() == 6) g = total.derivatives();
  return g;
}

Vector6d terminal_cost_gradient(const HorizontalState& zeta_n, double v0, const Goal& goal,
                                const TerminalCostBreakdown& at, const VehicleParams& p,
                                const TerminalCostSettings& settings) {
  if (!at.goal_arc) return terminal_cost_gradient(zeta_n, v0, goal, at.t_d, p, settings);
  Vector6<ADScalar> z;
  const Vector6d value = zeta_n.vector();
  for (int i = 0; i < 6; ++i) z[i] = ADScalar(value[i], 6, i);
  const ADScalar total = goal_arc_cost<ADScalar>(z, v0, goal, p);
  Vector6d g = Vector6d::Zero();
  if (total.derivatives().size() == 6) g = total.derivatives();
  return g;
}

}  // namespace ecoauv::empc
