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

#include <Eigen/Core>

#include "ecoauv/empc/terminal_cost.hpp"
#include "ecoauv/optim/box_qn.hpp"
#include "ecoauv/vehicle/params.hpp"
#include "ecoauv/vehicle/state.hpp"

namespace ecoauv::baselines {

/// Straight path from start to goal.
struct Segment {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 2.0;
  double y1 = 2.0;

  double azimuth() const;
  double length() const;
};

struct LosConfig {
  double lookahead = 0.5;  // m
  double u_ref = 0.14;     // m/s; scenarios set it to the initial surge speed
  double w_u = 1.0;        // (m/s)^-2
  double w_psi = 1.0;      // rad^-2
  double w_thrust = 0.0;   // N^-2
  int horizon = 5;
  double dt = 0.1;
  int substeps = 10;
  double thrust_max = 7.86;
  double arrival_radius = 0.05;
  optim::BoxQnSettings solver;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Signed cross-track error, positive left of the path direction. Throws
/// DomainError on a zero-length segment.
double cross_track_error(const HorizontalState& state, const Segment& path);

/// Constant-lookahead line-of-sight heading, wrapped to (-pi, pi].
double los_reference(const HorizontalState& state, const Segment& path, const LosConfig& config);

struct TrackingSolution {
  double left = 0.0;   // first command
  double right = 0.0;
  Eigen::VectorXd thrusts;  // whole horizon, [T_l0 T_r0 ...]
  double cost = 0.0;
  double solve_time = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Quadratic tracking cost of the sequence over the rolled-out horizon:
/// sum_k w_u (u_k - u_ref)^2 + w_psi wrap(psi_k - psi_los)^2 + w_T (T_l^2 + T_r^2).
double tracking_objective(const VehicleParams& params, const LosConfig& config,
                          const HorizontalState& current, double psi_los,
                          const Eigen::VectorXd& thrusts, Eigen::VectorXd* gradient = nullptr);

TrackingSolution solve_tracking_mpc(const VehicleParams& params, const LosConfig& config,
                                    const HorizontalState& current, double psi_los,
                                    const Eigen::VectorXd& warm_start);

/// LOS guidance plus tracking MPC with a shifted warm start.
class LosMpcController {
 public:
  LosMpcController(VehicleParams params, LosConfig config, Segment path);

  struct Step {
    ThrustCommand command;
    bool arrived = false;
    double psi_los = 0.0;
    TrackingSolution solution;
  };

  /// Horizontal pair from the MPC merged with the given vertical pair;
  /// zero horizontal thrust inside the arrival disc.
  Step control_step(const VehicleState& state, double fore, double aft);
  void reset() { warm_.resize(0); }

 private:
  VehicleParams params_;
  LosConfig config_;
  Segment path_;
  Eigen::VectorXd warm_;
};

}  // namespace ecoauv::baselines
