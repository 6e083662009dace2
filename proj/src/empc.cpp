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

#include "ecoauv/empc/controller.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ecoauv/error.hpp"
#include "ecoauv/vehicle/dynamics.hpp"
#include "ecoauv/vehicle/energy.hpp"
#include "ecoauv/vehicle/rollout.hpp"

namespace ecoauv::empc {

void EmpcConfig::validate() const {
  if (horizon < 1) throw ConfigError("empc.horizon", "must be at least 1");
  if (!(dt > 0.0)) throw ConfigError("empc.dt", "must be positive");
  if (substeps < 1) throw ConfigError("empc.substeps", "must be at least 1");
  if (!(thrust_max > 0.0)) throw ConfigError("thrusters.thrust_max", "must be positive");
  if (!(arrival_radius > 0.0)) throw ConfigError("empc.arrival_radius", "must be positive");
  if (2 * horizon > 32) throw ConfigError("empc.horizon", "at most 16 samples supported");
  terminal.validate();
}

TerminalCostBreakdown TerminalCostModel::breakdown(const Vector6d&, double) { return {}; }

TwoStageTerminalCost::TwoStageTerminalCost(VehicleParams params, Goal goal,
                                           TerminalCostSettings settings)
    : params_(std::move(params)), goal_(goal), settings_(settings) {
  settings_.validate();
}

namespace {

bool at_goal(const Vector6d& zeta, const Goal& goal) {
  return std::hypot(goal.x - zeta[3], goal.y - zeta[4]) <= kAtGoalDistance;
}

}  // namespace

double TwoStageTerminalCost::evaluate(const Vector6d& zeta_n, double v0, Vector6d& gradient) {
  if (at_goal(zeta_n, goal_)) {
    gradient.setZero();
    return 0.0;
  }
  const HorizontalState z = HorizontalState::from_vector(zeta_n);
  const TerminalCostBreakdown b = terminal_cost(z, v0, goal_, params_, settings_);
  gradient = terminal_cost_gradient(z, v0, goal_, b, params_, settings_);
  return b.total;
}

TerminalCostBreakdown TwoStageTerminalCost::breakdown(const Vector6d& zeta_n, double v0) {
  if (at_goal(zeta_n, goal_)) return {};
  return terminal_cost(HorizontalState::from_vector(zeta_n), v0, goal_, params_, settings_);
}

CollocationTerminalCost::CollocationTerminalCost(VehicleParams params, Goal goal,
                                                 double goal_radius, int intervals,
                                                 optim::InteriorPointSettings settings)
    : params_(std::move(params)), settings_(settings) {
  spec_.goal_x = goal.x;
  spec_.goal_y = goal.y;
  spec_.goal_radius = goal_radius;
  spec_.intervals = intervals;
  spec_.thrust_max = params_.thrust_max;
  // Close to the goal the remaining time is well below a second.
  spec_.time_lower = 1e-2;
  spec_.validate();
}

double CollocationTerminalCost::evaluate(const Vector6d& zeta_n, double, Vector6d& gradient) {
  const double distance = std::hypot(spec_.goal_x - zeta_n[3], spec_.goal_y - zeta_n[4]);
  if (distance <= spec_.goal_radius) {
    gradient.setZero();
    return 0.0;
  }
  dc::OcpSpec spec = spec_;
  spec.initial.nu << zeta_n[0], zeta_n[1], 0.0, 0.0, 0.0, zeta_n[2];
  spec.initial.eta << zeta_n[3], zeta_n[4], 0.0, 0.0, 0.0, zeta_n[5];
  const dc::HorizontalNlp nlp = dc::transcribe(params_, spec);
  ++solves_;

  optim::NlpSolution sol;
  if (warm_x_.size() == nlp.num_variables()) {
    optim::InteriorPointSettings warm = settings_;
    warm.mu_init = 1e-4;
    warm.bound_push = 1e-4;
    sol = optim::solve_interior_point(nlp, warm_x_, warm, warm_lambda_);
  }
  if (!sol.converged) {
    dc::DcSettings cold;
    cold.ipm = settings_;
    sol = dc::solve_horizontal(params_, spec, cold).solution;
  }
  if (!sol.converged) {
    throw Error("energy-to-go collocation solve failed: " + optim::to_string(sol.status));
  }
  warm_x_ = sol.x;
  warm_lambda_ = sol.lambda;
  gradient = -sol.lambda.head<6>();
  return sol.objective;
}

HorizontalState predict(const VehicleParams& params, const EmpcConfig& config,
                        const HorizontalState& current, const Eigen::VectorXd& thrusts) {
  HorizontalState z = current;
  for (int k = 0; k < config.horizon; ++k) {
    for (int s = 0; s < config.substeps; ++s) {
      z = step(params, z, thrusts[2 * k], thrusts[2 * k + 1], config.dt / config.substeps);
    }
  }
  return z;
}

double horizon_objective(const VehicleParams& params, const EmpcConfig& config,
                         TerminalCostModel& terminal, const HorizontalState& current,
                         const Eigen::VectorXd& thrusts, Eigen::VectorXd* gradient,
                         HorizonTerms* terms) {
  const int n = 2 * config.horizon;
  if (thrusts.size() != n) throw DomainError("thrust sequence length must be 2N");
  const double holding = buoyancy_holding_power(params);
  double stage = 0.0;
  for (int i = 0; i < n; ++i) stage += params.power(thrusts[i]) * config.dt;
  stage += holding * config.dt * config.horizon;

  const RolloutGrid grid{config.horizon, config.dt, config.substeps};
  const Vector6<ADScalar> zeta_n =
      rollout_samples(params, grid, current, thrusts, gradient != nullptr).back();
  Vector6d z;
  for (int i = 0; i < 6; ++i) z[i] = zeta_n[i].value();
  Vector6d dk;
  const double k_value = terminal.evaluate(z, current.v, dk);

  if (gradient) {
    gradient->resize(n);
    for (int i = 0; i < n; ++i) gradient->coeffRef(i) = params.power.derivative(thrusts[i]) * config.dt;
    for (int r = 0; r < 6; ++r) {
      if (zeta_n[r].derivatives().size() == n) *gradient += dk[r] * zeta_n[r].derivatives();
    }
  }
  if (terms) {
    terms->stage_energy = stage;
    terms->terminal_cost = k_value;
    terms->terminal_state = z;
  }
  return stage + k_value;
}

Eigen::VectorXd straight_line_guess(const VehicleParams& params, const EmpcConfig& config,
                                    const HorizontalState& current) {
  const double u = current.u;
  const double drag = std::clamp(0.5 * params.x_uu * std::abs(u) * u, -config.thrust_max, config.thrust_max);
  return Eigen::VectorXd::Constant(2 * config.horizon, drag);
}

EmpcSolution solve_empc(const VehicleParams& params, const EmpcConfig& config,
                        TerminalCostModel& terminal, const HorizontalState& current,
                        const Eigen::VectorXd& warm_start) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 2 * config.horizon;
  if (warm_start.size() != n) throw DomainError("warm start length must be 2N");
  const Eigen::VectorXd lower = Eigen::VectorXd::Constant(n, -config.thrust_max);
  const Eigen::VectorXd upper = Eigen::VectorXd::Constant(n, config.thrust_max);

  const optim::ValueAndGradient f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    return horizon_objective(params, config, terminal, current, x, &g);
  };
  const optim::BoxQnResult r = optim::minimize_box(f, warm_start, lower, upper, config.solver);

  EmpcSolution s;
  HorizonTerms terms;
  s.objective = horizon_objective(params, config, terminal, current, r.x, nullptr, &terms);
  s.stage_energy = terms.stage_energy;
  s.terminal_cost = terms.terminal_cost;
  s.terminal_state = HorizontalState::from_vector(terms.terminal_state);
  s.terminal = terminal.breakdown(terms.terminal_state, current.v);
  s.t_d = s.terminal.t_d;
  s.left.resize(config.horizon);
  s.right.resize(config.horizon);
  for (int k = 0; k < config.horizon; ++k) {
    s.left[k] = r.x[2 * k];
    s.right[k] = r.x[2 * k + 1];
  }
  const double distance = std::hypot(config.goal.x - current.x, config.goal.y - current.y);
  s.heading_error = distance > kAtGoalDistance ? heading_error(current, config.goal) : 0.0;
  s.iterations = r.iterations;
  s.gradient_norm = r.projected_gradient_norm;
  s.converged = r.converged;
  s.solve_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

EmpcController::EmpcController(VehicleParams params, EmpcConfig config,
                               std::unique_ptr<TerminalCostModel> terminal)
    : params_(std::move(params)), config_(std::move(config)), terminal_(std::move(terminal)) {
  config_.validate();
  if (!terminal_) {
    terminal_ = std::make_unique<TwoStageTerminalCost>(params_, config_.goal, config_.terminal);
  }
}

EmpcSolution EmpcController::solve(const HorizontalState& current) {
  const int n = 2 * config_.horizon;
  Eigen::VectorXd start;
  if (config_.warm_start && warm_.size() == n) {
    start.resize(n);
    start.head(n - 2) = warm_.tail(n - 2);
    start.tail(2) = warm_.tail(2);
  } else {
    start = straight_line_guess(params_, config_, current);
  }
  EmpcSolution s = solve_empc(params_, config_, *terminal_, current, start);
  warm_.resize(n);
  for (int k = 0; k < config_.horizon; ++k) {
    warm_[2 * k] = s.left[k];
    warm_[2 * k + 1] = s.right[k];
  }
  return s;
}

ControlStep EmpcController::control_step(const VehicleState& state, double fore, double aft) {
  ControlStep out;
  const HorizontalState h = HorizontalState::project(state);
  const double distance = std::hypot(config_.goal.x - h.x, config_.goal.y - h.y);
  ThrustCommand c{0.0, 0.0, fore, aft};
  if (distance <= config_.arrival_radius) {
    out.arrived = true;
  } else {
    out.solution = solve(h);
    out.solved = true;
    c.left = out.solution.left.front();
    c.right = out.solution.right.front();
  }
  out.command = c.saturated(config_.thrust_max);
  return out;
}

}  // namespace ecoauv::empc
