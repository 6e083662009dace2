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

#include "ecoauv/baselines/los_mpc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ecoauv/error.hpp"
#include "ecoauv/vehicle/rollout.hpp"

namespace ecoauv::baselines {

double Segment::azimuth() const { return std::atan2(y1 - y0, x1 - x0); }
double Segment::length() const { return std::hypot(x1 - x0, y1 - y0); }

void LosConfig::validate() const {
  if (!(lookahead > 0.0)) throw ConfigError("los.lookahead", "must be positive");
  if (w_u < 0.0) throw ConfigError("los.w_u", "must be non-negative");
  if (w_psi < 0.0) throw ConfigError("los.w_psi", "must be non-negative");
  if (w_thrust < 0.0) throw ConfigError("los.w_thrust", "must be non-negative");
  if (!(w_u > 0.0 || w_psi > 0.0)) throw ConfigError("los.w_psi", "at least one state weight must be positive");
  if (horizon < 1) throw ConfigError("los.horizon", "must be at least 1");
  if (2 * horizon > 32) throw ConfigError("los.horizon", "at most 16 samples supported");
  if (!(dt > 0.0)) throw ConfigError("los.dt", "must be positive");
  if (substeps < 1) throw ConfigError("los.substeps", "must be at least 1");
  if (!(thrust_max > 0.0)) throw ConfigError("thrusters.thrust_max", "must be positive");
  if (!(arrival_radius > 0.0)) throw ConfigError("los.arrival_radius", "must be positive");
}

double cross_track_error(const HorizontalState& state, const Segment& path) {
  const double length = path.length();
  if (!(length > 0.0)) throw DomainError("LOS path segment has zero length");
  const double ex = (path.x1 - path.x0) / length;
  const double ey = (path.y1 - path.y0) / length;
  return -(state.x - path.x0) * ey + (state.y - path.y0) * ex;
}

double los_reference(const HorizontalState& state, const Segment& path, const LosConfig& config) {
  const double e = cross_track_error(state, path);
  return wrap_angle(path.azimuth() + std::atan(-e / config.lookahead));
}

double tracking_objective(const VehicleParams& params, const LosConfig& config,
                          const HorizontalState& current, double psi_los,
                          const Eigen::VectorXd& thrusts, Eigen::VectorXd* gradient) {
  const int n = 2 * config.horizon;
  if (thrusts.size() != n) throw DomainError("thrust sequence length must be 2N");
  const RolloutGrid grid{config.horizon, config.dt, config.substeps};
  const auto states = rollout_samples(params, grid, current, thrusts, gradient != nullptr);

  ADScalar cost(0.0, ADDerivatives::Zero(gradient ? n : 0));
  for (const auto& z : states) {
    const ADScalar eu = z[0] - config.u_ref;
    const ADScalar epsi = wrap_angle(ADScalar(z[5] - psi_los));
    cost += config.w_u * eu * eu + config.w_psi * epsi * epsi;
  }
  double value = cost.value() + config.w_thrust * thrusts.squaredNorm();
  if (gradient) {
    *gradient = cost.derivatives().size() == n ? Eigen::VectorXd(cost.derivatives())
                                                : Eigen::VectorXd::Zero(n);
    *gradient += 2.0 * config.w_thrust * thrusts;
  }
  return value;
}

TrackingSolution solve_tracking_mpc(const VehicleParams& params, const LosConfig& config,
                                    const HorizontalState& current, double psi_los,
                                    const Eigen::VectorXd& warm_start) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 2 * config.horizon;
  if (warm_start.size() != n) throw DomainError("warm start length must be 2N");
  const Eigen::VectorXd lower = Eigen::VectorXd::Constant(n, -config.thrust_max);
  const Eigen::VectorXd upper = Eigen::VectorXd::Constant(n, config.thrust_max);
  const optim::ValueAndGradient f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    return tracking_objective(params, config, current, psi_los, x, &g);
  };
  const optim::BoxQnResult r = optim::minimize_box(f, warm_start, lower, upper, config.solver);

  TrackingSolution s;
  s.thrusts = r.x;
  s.left = r.x[0];
  s.right = r.x[1];
  s.cost = r.value;
  s.iterations = r.iterations;
  s.converged = r.converged;
  s.solve_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

LosMpcController::LosMpcController(VehicleParams params, LosConfig config, Segment path)
    : params_(std::move(params)), config_(std::move(config)), path_(path) {
  config_.validate();
  if (!(path_.length() > 0.0)) throw DomainError("LOS path segment has zero length");
}

LosMpcController::Step LosMpcController::control_step(const VehicleState& state, double fore,
                                                      double aft) {
  Step out;
  const HorizontalState h = HorizontalState::project(state);
  ThrustCommand c{0.0, 0.0, fore, aft};
  if (std::hypot(path_.x1 - h.x, path_.y1 - h.y) <= config_.arrival_radius) {
    out.arrived = true;
    out.command = c.saturated(config_.thrust_max);
    return out;
  }
  const int n = 2 * config_.horizon;
  Eigen::VectorXd start(n);
  if (warm_.size() == n) {
    start.head(n - 2) = warm_.tail(n - 2);
    start.tail(2) = warm_.tail(2);
  } else {
    const double drag = 0.5 * params_.x_uu * std::abs(h.u) * h.u;
    start.setConstant(std::clamp(drag, -config_.thrust_max, config_.thrust_max));
  }
  out.psi_los = los_reference(h, path_, config_);
  out.solution = solve_tracking_mpc(params_, config_, h, out.psi_los, start);
  warm_ = out.solution.thrusts;
  c.left = out.solution.left;
  c.right = out.solution.right;
  out.command = c.saturated(config_.thrust_max);
  return out;
}

}  // namespace ecoauv::baselines
