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

#include "ecoauv/optim/box_qn.hpp"

#include <cmath>
#include <vector>

namespace ecoauv::optim {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd project(const VectorXd& x, const VectorXd& lower, const VectorXd& upper) {
  return x.cwiseMax(lower).cwiseMin(upper);
}

double projected_gradient_norm(const VectorXd& x, const VectorXd& g, const VectorXd& lower,
                               const VectorXd& upper, const VectorXd& scale) {
  // Scaled variables y = x / scale have gradient g .* scale.
  const VectorXd step = x - project(x - g.cwiseProduct(scale).cwiseProduct(scale), lower, upper);
  return step.cwiseQuotient(scale).lpNorm<Eigen::Infinity>();
}

}  // namespace

BoxQnResult minimize_box(const ValueAndGradient& f, const VectorXd& start, const VectorXd& lower,
                         const VectorXd& upper, const BoxQnSettings& settings,
                         const VectorXd& scale_in) {
  const Eigen::Index n = start.size();
  const VectorXd scale = scale_in.size() == n ? scale_in : VectorXd::Ones(n);

  BoxQnResult result;
  VectorXd x = project(start, lower, upper);
  VectorXd g(n);
  double fx = f(x, g);
  ++result.evaluations;

  // Inverse Hessian approximation in scaled variables.
  MatrixXd inv_h = MatrixXd::Identity(n, n);
  bool scaled_once = false;

  for (int iter = 0; iter < settings.max_iterations; ++iter) {
    result.iterations = iter;
    const double pg = projected_gradient_norm(x, g, lower, upper, scale);
    result.projected_gradient_norm = pg;
    if (pg <= settings.gradient_tolerance) {
      result.converged = true;
      break;
    }

    // Free variables: not pinned at a bound by the gradient sign.
    const double eps = 1e-12;
    std::vector<Eigen::Index> free;
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool at_lower = x[i] <= lower[i] + eps * scale[i] && g[i] > 0.0;
      const bool at_upper = x[i] >= upper[i] - eps * scale[i] && g[i] < 0.0;
      if (!at_lower && !at_upper) free.push_back(i);
    }

    const VectorXd gs = g.cwiseProduct(scale);
    VectorXd ds = VectorXd::Zero(n);
    for (Eigen::Index a : free) {
      double acc = 0.0;
      for (Eigen::Index b : free) acc -= inv_h(a, b) * gs[b];
      ds[a] = acc;
    }
    if (gs.dot(ds) >= 0.0) {
      inv_h.setIdentity();
      ds.setZero();
      for (Eigen::Index a : free) ds[a] = -gs[a];
    }
    const VectorXd d = ds.cwiseProduct(scale);

    double alpha = 1.0;
    VectorXd x_new, g_new(n);
    double f_new = fx;
    bool accepted = false;
    for (int k = 0; k < settings.max_backtracks; ++k) {
      x_new = project(x + alpha * d, lower, upper);
      f_new = f(x_new, g_new);
      ++result.evaluations;
      if (std::isfinite(f_new) && f_new <= fx + settings.armijo * g.dot(x_new - x)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;

    const VectorXd s = (x_new - x).cwiseQuotient(scale);
    const VectorXd y = (g_new - g).cwiseProduct(scale);
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm() && sy > 0.0) {
      if (!scaled_once) {
        inv_h *= sy / y.squaredNorm();
        scaled_once = true;
      }
      const double rho = 1.0 / sy;
      const VectorXd hy = inv_h * y;
      inv_h += (rho * rho * y.dot(hy) + rho) * s * s.transpose() -
               rho * (hy * s.transpose() + s * hy.transpose());
    }
    const bool stalled = std::abs(fx - f_new) <= 1e-15 * std::max(1.0, std::abs(fx)) &&
                         (x_new - x).lpNorm<Eigen::Infinity>() == 0.0;
    x = x_new;
    g = g_new;
    fx = f_new;
    if (stalled) break;
  }

  result.x = x;
  result.value = fx;
  if (!result.converged) {
    result.projected_gradient_norm = projected_gradient_norm(x, g, lower, upper, scale);
    result.converged = result.projected_gradient_norm <= settings.gradient_tolerance;
  }
  return result;
}

VectorXd central_difference_gradient(const std::function<double(const VectorXd&)>& f,
                                     const VectorXd& x, double step) {
  VectorXd g(x.size());
  VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace ecoauv::optim
