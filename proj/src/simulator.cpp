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

#include "ecoauv/sim/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "ecoauv/error.hpp"
#include "ecoauv/vehicle/dynamics.hpp"
#include "ecoauv/vehicle/energy.hpp"

namespace ecoauv::sim {

namespace {

struct NamedKind {
  ControllerKind kind;
  const char* name;
  const char* label;
};

constexpr NamedKind kKinds[] = {
    {ControllerKind::DcFeedforward, "dc-feedforward", "DC (feed-forward)"},
    {ControllerKind::DcFeedback, "dc-feedback", "DC (feedback)"},
    {ControllerKind::EoEmpc, "eo-empc", "EO-EMPC"},
    {ControllerKind::LosMpc, "los-mpc", "LOS-MPC"},
};

}  // namespace

std::string to_string(ControllerKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::string display_name(ControllerKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.label;
  }
  return "unknown";
}

ControllerKind parse_controller(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  throw ConfigError("scenario.controller",
                    "unknown controller '" + name + "' (dc-feedforward, dc-feedback, eo-empc, los-mpc)");
}

void Scenario::validate() const {
  if (id.empty()) throw ConfigError("scenario.id", "must not be empty");
  params.validate();
  if (u0 && !(*u0 >= 0.0)) throw ConfigError("scenario.u0", "must be non-negative");
  if (!(arrival_radius > 0.0)) throw ConfigError("scenario.arrival_radius", "must be positive");
  if (!(sim_dt > 0.0)) throw ConfigError("scenario.sim_dt", "must be positive");
  if (!(control_dt >= sim_dt)) throw ConfigError("scenario.control_dt", "must be at least sim_dt");
  const double ratio = control_dt / sim_dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw ConfigError("scenario.control_dt", "must be an integer multiple of sim_dt");
  }
  if (!std::isfinite(max_time)) throw ConfigError("scenario.max_time", "must be finite");
  if (dc_intervals < 2) throw ConfigError("dc.intervals", "must be at least 2");
  if (dc.multistarts < 1) throw ConfigError("dc.multistarts", "must be at least 1");
  empc.validate();
  if (std::abs(empc.dt - control_dt) > 1e-12) throw ConfigError("empc.dt", "must equal scenario.control_dt");
  los.validate();
  if (los_u_ref && !(*los_u_ref > 0.0)) throw ConfigError("los.u_ref", "must be positive");
  if (std::abs(los.dt - control_dt) > 1e-12) throw ConfigError("los.dt", "must equal scenario.control_dt");
  pid.validate(params.thrust_max);
}

double Scenario::initial_surge() const { return u0 ? *u0 : optimal_cruise_speed(params); }

double Scenario::time_limit() const {
  if (max_time > 0.0) return max_time;
  const double distance = std::hypot(goal.x - x0, goal.y - y0);
  const double speed = u0 && *u0 > 0.0 ? *u0 : optimal_cruise_speed(params);
  return std::max(5.0 * distance / speed, control_dt);
}

std::array<double, 4> AxisEnergy::shares() const {
  const double t = total();
  if (!(t > 0.0)) return {0.0, 0.0, 0.0, 0.0};
  return {100.0 * surge / t, 100.0 * heave / t, 100.0 * yaw / t, 100.0 * pitch / t};
}

namespace {

// Splits p_pair between two modes in proportion to their single-thruster
// powers.
std::pair<double, double> split(double p_pair, double p_a, double p_b) {
  const double sum = p_a + p_b;
  if (!(sum > 0.0)) return {0.5 * p_pair, 0.5 * p_pair};
  return {p_pair * p_a / sum, p_pair * p_b / sum};
}

}  // namespace

AxisEnergy attribute_power(const VehicleParams& params, const ThrustCommand& c) {
  const auto& p = params.power;
  const double horizontal = p(c.left) + p(c.right);
  const double vertical = p(c.fore) + p(c.aft);
  const auto [surge, yaw] = split(horizontal, p(0.5 * (c.left + c.right)), p(0.5 * (c.right - c.left)));
  const auto [heave, pitch] = split(vertical, p(0.5 * (c.fore + c.aft)), p(0.5 * (c.aft - c.fore)));
  return {surge, heave, yaw, pitch};
}

AxisEnergy axis_energy(const VehicleParams& params, const Trajectory& trajectory) {
  AxisEnergy e;
  for (std::size_t k = 0; k < trajectory.commands.size(); ++k) {
    const Eigen::VectorXd& c = trajectory.commands[k];
    if (c.size() != 4) throw DomainError("axis energy needs four-thruster commands");
    const double dt = trajectory.times[k + 1] - trajectory.times[k];
    const AxisEnergy p = attribute_power(params, ThrustCommand{c[0], c[1], c[2], c[3]});
    e.surge += p.surge * dt;
    e.heave += p.heave * dt;
    e.yaw += p.yaw * dt;
    e.pitch += p.pitch * dt;
  }
  return e;
}

namespace {

// Piecewise-linear replay of a collocation plan's node controls.
class PlanReplay {
 public:
  PlanReplay(const dc::HorizontalNlp& nlp, const Eigen::VectorXd& x)
      : duration_(nlp.final_time(x)), step_(nlp.step(x)) {
    for (int k = 0; k <= nlp.intervals(); ++k) controls_.push_back(nlp.control(x, k));
  }

  double duration() const { return duration_; }

  // Thrust pair at time t; zero outside the plan.
  std::pair<double, double> at(double t) const {
    if (t < 0.0 || t > duration_) return {0.0, 0.0};
    const double s = t / step_;
    const int k = std::min(static_cast<int>(s), static_cast<int>(controls_.size()) - 2);
    const double w = s - k;
    const Eigen::Vector2d c = (1.0 - w) * controls_[k] + w * controls_[k + 1];
    return {c[0], c[1]};
  }

 private:
  double duration_;
  double step_;
  std::vector<Eigen::Vector2d> controls_;
};

Eigen::VectorXd as_vector(const VehicleState& s) {
  Eigen::VectorXd x(12);
  x << s.nu, s.eta;
  return x;
}

double horizontal_distance(const VehicleState& s, const empc::Goal& goal) {
  return std::hypot(goal.x - s.eta[0], goal.y - s.eta[1]);
}

}  // namespace

ScenarioResult run(const Scenario& sc) {
  sc.validate();
  const VehicleParams& params = sc.params;
  ScenarioResult res;
  res.id = sc.id;
  res.group = sc.group;
  res.controller = sc.controller;

  VehicleState state;
  state.nu[0] = sc.initial_surge();
  state.eta << sc.x0, sc.y0, 0.0, 0.0, 0.0, sc.psi0;
  res.trajectory.state_names = dc::full_state_names();
  res.trajectory.command_names = dc::full_command_names();
  res.trajectory.start(0.0, as_vector(state));

  const double limit = sc.time_limit();
  const int substeps = static_cast<int>(std::lround(sc.control_dt / sc.sim_dt));
  res.final_distance = horizontal_distance(state, sc.goal);
  if (res.final_distance <= sc.arrival_radius) {
    res.goal_reached = true;
    res.message = "started inside the goal disc";
    return res;
  }

  // Controller set-up; the DC plans are solved once, before the run.
  std::unique_ptr<empc::EmpcController> empc_ctrl;
  std::unique_ptr<baselines::LosMpcController> los_ctrl;
  std::optional<PlanReplay> plan;
  try {
    switch (sc.controller) {
      case ControllerKind::DcFeedforward:
      case ControllerKind::DcFeedback: {
        dc::OcpSpec spec;
        spec.initial = state;
        if (sc.controller == ControllerKind::DcFeedforward) {
          spec.initial.eta[0] = sc.plan_x0.value_or(sc.x0);
          spec.initial.eta[1] = sc.plan_y0.value_or(sc.y0);
        }
        spec.goal_x = sc.goal.x;
        spec.goal_y = sc.goal.y;
        spec.goal_radius = sc.arrival_radius;
        spec.intervals = sc.dc_intervals;
        spec.thrust_max = params.thrust_max;
        const dc::DcResult dc_result = dc::solve_horizontal(params, spec, sc.dc);
        res.compute_time += dc_result.total_solve_time;
        res.controller_steps = 1;
        if (!dc_result.solution.converged) {
          res.failed = true;
          res.message = "DC plan did not converge: " + optim::to_string(dc_result.solution.status);
          return res;
        }
        plan.emplace(dc::transcribe(params, spec), dc_result.solution.x);
        break;
      }
      case ControllerKind::EoEmpc: {
        empc::EmpcConfig cfg = sc.empc;
        cfg.goal = sc.goal;
        cfg.arrival_radius = sc.arrival_radius;
        cfg.thrust_max = params.thrust_max;
        empc_ctrl = std::make_unique<empc::EmpcController>(params, cfg);
        break;
      }
      case ControllerKind::LosMpc: {
        baselines::LosConfig cfg = sc.los;
        cfg.u_ref = sc.los_u_ref.value_or(sc.initial_surge());
        cfg.arrival_radius = sc.arrival_radius;
        cfg.thrust_max = params.thrust_max;
        los_ctrl = std::make_unique<baselines::LosMpcController>(
            params, cfg, baselines::Segment{sc.x0, sc.y0, sc.goal.x, sc.goal.y});
        break;
      }
    }
  } catch (const Error& e) {
    res.failed = true;
    res.message = e.what();
    return res;
  }

  baselines::PidState pid_state;
  double t = 0.0;
  bool done = false;
  while (!done) {
    if (t >= limit - 1e-9) {
      res.message = "time limit reached";
      break;
    }
    const Vector6d eta_dot = kinematic_rates(state);
    const auto [fore, aft] = baselines::pid_step(params, sc.pid, pid_state, state.eta[2], state.eta[4],
                                                 eta_dot[2], eta_dot[4], sc.control_dt);
    ThrustCommand command{0.0, 0.0, fore, aft};
    try {
      switch (sc.controller) {
        case ControllerKind::DcFeedforward:
        case ControllerKind::DcFeedback: {
          if (t >= plan->duration() - 1e-9) {
            res.message = "open-loop plan exhausted";
            done = true;
            continue;
          }
          const auto [left, right] = plan->at(t + 0.5 * sc.control_dt);
          command.left = left;
          command.right = right;
          break;
        }
        case ControllerKind::EoEmpc: {
          const empc::ControlStep step = empc_ctrl->control_step(state, fore, aft);
          command = step.command;
          if (step.solved) {
            const empc::EmpcSolution& s = step.solution;
            res.compute_time += s.solve_time;
            ++res.controller_steps;
            if (!s.converged) ++res.nonconverged_steps;
            res.diagnostics.push_back({t, s.heading_error, s.t_d, s.terminal.dynamic_cost,
                                       s.terminal.static_cost, s.terminal_cost, s.stage_energy,
                                       s.solve_time, s.converged});
          }
          break;
        }
        case ControllerKind::LosMpc: {
          const baselines::LosMpcController::Step step = los_ctrl->control_step(state, fore, aft);
          command = step.command;
          if (!step.arrived) {
            res.compute_time += step.solution.solve_time;
            ++res.controller_steps;
            if (!step.solution.converged) ++res.nonconverged_steps;
          }
          break;
        }
      }
    } catch (const Error& e) {
      res.failed = true;
      res.message = std::string("controller failure at t = ") + format_number(t) + ": " + e.what();
      break;
    }
    command = command.saturated(params.thrust_max);
    res.max_abs_thrust = std::max(res.max_abs_thrust, command.vector().cwiseAbs().maxCoeff());

    const double power = stage_power_all(params, command);
    const AxisEnergy axis = attribute_power(params, command);
    const Eigen::VectorXd cmd = command.vector();
    for (int j = 0; j < substeps; ++j) {
      try {
        state = step(params, state, command, sc.sim_dt);
      } catch (const Error& e) {
        res.failed = true;
        res.message = std::string("plant failure: ") + e.what();
        done = true;
        break;
      }
      t += sc.sim_dt;
      for (int i = 0; i < 4; ++i) res.thruster_energy[i] += params.power(cmd[i]) * sc.sim_dt;
      res.axis_energy.surge += axis.surge * sc.sim_dt;
      res.axis_energy.heave += axis.heave * sc.sim_dt;
      res.axis_energy.yaw += axis.yaw * sc.sim_dt;
      res.axis_energy.pitch += axis.pitch * sc.sim_dt;
      res.trajectory.append(cmd, power, t, as_vector(state));
      res.max_abs_depth = std::max(res.max_abs_depth, std::abs(state.eta[2]));
      res.max_abs_roll = std::max(res.max_abs_roll, std::abs(state.eta[3]));
      res.max_abs_pitch = std::max(res.max_abs_pitch, std::abs(state.eta[4]));
      if (horizontal_distance(state, sc.goal) <= sc.arrival_radius) {
        res.goal_reached = true;
        res.message = "goal reached";
        done = true;
        break;
      }
    }
  }
  res.travel_time = t;
  res.energy = res.thruster_energy[0] + res.thruster_energy[1] + res.thruster_energy[2] +
               res.thruster_energy[3];
  res.final_distance = horizontal_distance(state, sc.goal);
  return res;
}

}  // namespace ecoauv::sim
