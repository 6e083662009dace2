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

#include "ecoauv/dc/ocp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ecoauv/error.hpp"
#include "ecoauv/vehicle/energy.hpp"

namespace ecoauv::dc {

void OcpSpec::validate() const {
  if (intervals < 2) throw DomainError("OcpSpec: at least two intervals required");
  if (!(goal_radius > 0.0)) throw DomainError("OcpSpec: goal radius must be positive");
  if (!(thrust_max > 0.0)) throw DomainError("OcpSpec: thrust bound must be positive");
  if (!(depth_max > 0.0 && roll_max > 0.0 && pitch_max > 0.0)) {
    throw DomainError("OcpSpec: state boxes must have positive width");
  }
  if (free_final_time && !(time_lower > 0.0 && time_lower < time_upper)) {
    throw DomainError("OcpSpec: inconsistent final-time bounds");
  }
  if (!free_final_time && !(final_time > 0.0)) throw DomainError("OcpSpec: final time must be positive");
  if (!(power_smoothing >= 0.0)) throw DomainError("OcpSpec: power smoothing must be non-negative");
}

const std::vector<std::string>& horizontal_state_names() {
  static const std::vector<std::string> names{"u", "v", "r", "x", "y", "psi"};
  return names;
}
const std::vector<std::string>& full_state_names() {
  static const std::vector<std::string> names{"u", "v", "w", "p", "q", "r",
                                              "x", "y", "z", "phi", "theta", "psi"};
  return names;
}
const std::vector<std::string>& horizontal_command_names() {
  static const std::vector<std::string> names{"T_l", "T_r"};
  return names;
}
const std::vector<std::string>& full_command_names() {
  static const std::vector<std::string> names{"T_l", "T_r", "T_f", "T_a"};
  return names;
}

namespace {

constexpr double kVelocityScale = 0.2;
constexpr double kTimeScale = 10.0;

template <int NX, int NU>
void common_spec(const OcpSpec& spec, CollocationSpec<NX, NU>& c, int ix, int iy) {
  c.intervals = spec.intervals;
  c.control_lower.setConstant(-spec.thrust_max);
  c.control_upper.setConstant(spec.thrust_max);
  c.free_final_time = spec.free_final_time;
  c.final_time = spec.final_time;
  c.time_lower = spec.time_lower;
  c.time_upper = spec.time_upper;
  c.terminal_disc = TerminalDisc{ix, iy, spec.goal_x, spec.goal_y, spec.goal_radius};
  c.time_scale = kTimeScale;
}

double straight_distance(const OcpSpec& spec) {
  return std::hypot(spec.goal_x - spec.initial.eta[0], spec.goal_y - spec.initial.eta[1]);
}

double guess_time(const OcpSpec& spec, double cruise_speed) {
  if (!spec.free_final_time) return spec.final_time;
  const double t = straight_distance(spec) / cruise_speed;
  return std::clamp(t, spec.time_lower, spec.time_upper);
}

template <typename Model>
optim::NlpSolution run_solver(const TrapezoidCollocation<Model>& nlp, const Trajectory& guess,
                              const optim::InteriorPointSettings& settings) {
  return optim::solve_interior_point(nlp, to_decision_vector(nlp, guess), settings);
}

// Lexicographic preference: converged first, then objective, then violation.
bool better(const optim::NlpSolution& a, const optim::NlpSolution& b) {
  if (a.converged != b.converged) return a.converged;
  if (a.converged) return a.objective < b.objective;
  return a.constraint_violation < b.constraint_violation;
}

template <typename Nlp, typename Guess>
DcResult multistart(const VehicleParams& params, const DcSettings& settings,
                    const Nlp& nlp, Guess&& make_guess, const std::vector<std::string>& states,
                    const std::vector<std::string>& commands) {
  const double base = settings.cruise_speed > 0.0 ? settings.cruise_speed : optimal_cruise_speed(params);
  const std::vector<double> factors{1.0, 1.0 - settings.speed_spread, 1.0 + settings.speed_spread};
  const int starts = std::clamp(settings.multistarts, 1, 3);
  DcResult best;
  bool have = false;
  for (int s = 0; s < starts; ++s) {
    const Trajectory guess = make_guess(base * factors[s]);
    optim::NlpSolution sol = run_solver(nlp, guess, settings.ipm);
    best.total_solve_time += sol.solve_time;
    if (!have || better(sol, best.solution)) {
      best.solution = std::move(sol);
      best.best_start = s;
      have = true;
    }
  }
  best.trajectory = to_trajectory(nlp, best.solution.x, states, commands);
  best.energy = best.trajectory.total_energy();
  best.final_time = nlp.final_time(best.solution.x);
  return best;
}

}  // namespace

HorizontalNlp transcribe(const VehicleParams& params, const OcpSpec& spec) {
  spec.validate();
  HorizontalNlp::Spec c;
  common_spec(spec, c, 3, 4);
  c.initial_state = HorizontalState::project(spec.initial).vector();
  c.state_scale << kVelocityScale, kVelocityScale, kVelocityScale, 1.0, 1.0, 1.0;
  c.control_scale.setOnes();
  return HorizontalNlp(HorizontalModel(params, spec.power_smoothing), c);
}

FullNlp transcribe_full(const VehicleParams& params, const OcpSpec& spec) {
  spec.validate();
  FullNlp::Spec c;
  common_spec(spec, c, 6, 7);
  c.initial_state = spec.initial.stacked();
  c.state_lower[8] = -spec.depth_max;
  c.state_upper[8] = spec.depth_max;
  c.state_lower[9] = -spec.roll_max;
  c.state_upper[9] = spec.roll_max;
  c.state_lower[10] = -spec.pitch_max;
  c.state_upper[10] = spec.pitch_max;
  c.state_scale << kVelocityScale, kVelocityScale, 0.01, 0.05, 0.05, kVelocityScale,
      1.0, 1.0, spec.depth_max, spec.roll_max, spec.pitch_max, 1.0;
  c.control_scale.setOnes();
  return FullNlp(FullModel(params, spec.power_smoothing), c);
}

Trajectory initial_guess(const VehicleParams& params, const OcpSpec& spec, double cruise_speed) {
  if (!(cruise_speed > 0.0)) throw DomainError("initial_guess: cruise speed must be positive");
  const HorizontalState start = HorizontalState::project(spec.initial);
  const double heading = std::atan2(spec.goal_y - start.y, spec.goal_x - start.x);
  const double total = guess_time(spec, cruise_speed);
  const double drag = std::clamp(0.5 * params.x_uu * cruise_speed * cruise_speed, -spec.thrust_max,
                                 spec.thrust_max);
  const HorizontalModel model(params);
  Eigen::Vector2d thrust(drag, drag);
  const double node_power = model.power(thrust);

  Trajectory tr;
  tr.state_names = horizontal_state_names();
  tr.command_names = horizontal_command_names();
  for (int k = 0; k <= spec.intervals; ++k) {
    const double s = static_cast<double>(k) / spec.intervals;
    Vector6d z;
    z << cruise_speed, 0.0, 0.0, start.x + s * (spec.goal_x - start.x),
        start.y + s * (spec.goal_y - start.y), heading;
    if (k == 0) {
      tr.start(0.0, z);
    } else {
      tr.append(thrust, node_power, s * total, z);
    }
  }
  return tr;
}

Trajectory initial_guess_full(const VehicleParams& params, const OcpSpec& spec, double cruise_speed) {
  const Trajectory planar = initial_guess(params, spec, cruise_speed);
  const double hold = std::clamp(0.5 * (params.buoyancy() - params.weight()), -spec.thrust_max,
                                 spec.thrust_max);
  Trajectory tr;
  tr.state_names = full_state_names();
  tr.command_names = full_command_names();
  const FullModel model(params);
  for (std::size_t k = 0; k < planar.size(); ++k) {
    const Eigen::VectorXd& z = planar.states[k];
    Vector12d s = Vector12d::Zero();
    s[0] = z[0];
    s[6] = z[3];
    s[7] = z[4];
    s[11] = z[5];
    if (k == 0) {
      tr.start(planar.times[0], s);
    } else {
      const Eigen::VectorXd& h = planar.commands[k - 1];
      const Vector4d t(h[0], h[1], hold, hold);
      tr.append(t, model.power(t), planar.times[k], s);
    }
  }
  return tr;
}

template <typename Model>
Eigen::VectorXd to_decision_vector(const TrapezoidCollocation<Model>& nlp, const Trajectory& guess) {
  constexpr int NX = Model::kStates;
  constexpr int NU = Model::kControls;
  if (static_cast<int>(guess.size()) != nlp.nodes() || guess.commands.empty()) {
    throw DomainError("initial guess does not match the mesh");
  }
  std::vector<Eigen::Matrix<double, NX, 1>> states;
  std::vector<Eigen::Matrix<double, NU, 1>> controls;
  for (int k = 0; k < nlp.nodes(); ++k) {
    if (guess.states[k].size() != NX) throw DomainError("initial guess state dimension mismatch");
    states.emplace_back(guess.states[k]);
    const Eigen::VectorXd& c = guess.commands[std::min<std::size_t>(k, guess.commands.size() - 1)];
    if (c.size() != NU) throw DomainError("initial guess command dimension mismatch");
    controls.emplace_back(c);
  }
  return nlp.pack(states, controls, guess.duration());
}

template <typename Model>
Trajectory to_trajectory(const TrapezoidCollocation<Model>& nlp, const Eigen::VectorXd& x,
                         const std::vector<std::string>& state_names,
                         const std::vector<std::string>& command_names) {
  Trajectory tr;
  tr.state_names = state_names;
  tr.command_names = command_names;
  const double h = nlp.step(x);
  tr.start(0.0, nlp.state(x, 0));
  for (int k = 0; k < nlp.intervals(); ++k) {
    const double p0 = nlp.model().power(nlp.control(x, k));
    const double p1 = nlp.model().power(nlp.control(x, k + 1));
    tr.append(nlp.control(x, k), 0.5 * (p0 + p1), (k + 1) * h, nlp.state(x, k + 1));
  }
  return tr;
}

template Eigen::VectorXd to_decision_vector(const HorizontalNlp&, const Trajectory&);
template Eigen::VectorXd to_decision_vector(const FullNlp&, const Trajectory&);
template Eigen::VectorXd to_decision_vector(const SurgeNlp&, const Trajectory&);
template Trajectory to_trajectory(const HorizontalNlp&, const Eigen::VectorXd&,
                                  const std::vector<std::string>&, const std::vector<std::string>&);
template Trajectory to_trajectory(const FullNlp&, const Eigen::VectorXd&,
                                  const std::vector<std::string>&, const std::vector<std::string>&);
template Trajectory to_trajectory(const SurgeNlp&, const Eigen::VectorXd&,
                                  const std::vector<std::string>&, const std::vector<std::string>&);

optim::NlpSolution solve(const HorizontalNlp& nlp, const Trajectory& guess,
                         const optim::InteriorPointSettings& settings) {
  return run_solver(nlp, guess, settings);
}

optim::NlpSolution solve(const FullNlp& nlp, const Trajectory& guess,
                         const optim::InteriorPointSettings& settings) {
  return run_solver(nlp, guess, settings);
}

DcResult solve_horizontal(const VehicleParams& params, const OcpSpec& spec, const DcSettings& settings) {
  const HorizontalNlp nlp = transcribe(params, spec);
  return multistart(
      params, settings, nlp, [&](double u) { return initial_guess(params, spec, u); },
      horizontal_state_names(), horizontal_command_names());
}

DcResult solve_full(const VehicleParams& params, const OcpSpec& spec, const DcSettings& settings) {
  const FullNlp nlp = transcribe_full(params, spec);
  return multistart(
      params, settings, nlp, [&](double u) { return initial_guess_full(params, spec, u); },
      full_state_names(), full_command_names());
}

}  // namespace ecoauv::dc
