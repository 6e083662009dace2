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

#include <functional>

#include <Eigen/Dense>

namespace ecoauv::optim {

struct BoxQnSettings {
  double gradient_tolerance = 1e-6;  // on the projected, scaled gradient
  int max_iterations = 200;
  double armijo = 1e-4;
  int max_backtracks = 40;
};

struct BoxQnResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double projected_gradient_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// value = f(x, gradient)
using ValueAndGradient = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Projected BFGS for min f(x) subject to lower <= x <= upper.
///
/// Bounds are handled by projection and an active set frozen per iteration;
/// the inverse-Hessian update runs in variables divided by scale. Iterates
/// stay feasible and the objective decreases monotonically, so the returned
/// point is never worse than the (projected) start.
BoxQnResult minimize_box(const ValueAndGradient& f, const Eigen::VectorXd& start,
                         const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                         const BoxQnSettings& settings = {},
                         const Eigen::VectorXd& scale = Eigen::VectorXd());

/// Central-difference gradient, used to validate analytic gradients.
Eigen::VectorXd central_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                            const Eigen::VectorXd& x, double step = 1e-6);

}  // namespace ecoauv::optim
