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

#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace ecoauv::optim {

using Triplets = std::vector<Eigen::Triplet<double>>;

/// Smooth nonlinear program
///   min f(x)  s.t.  g_l <= g(x) <= g_u,  x_l <= x <= x_u.
/// Rows with g_l == g_u are equalities. Infinite bounds are allowed.
class NlpProblem {
 public:
  virtual ~NlpProblem() = default;

  virtual int num_variables() const = 0;
  virtual int num_constraints() const = 0;
  virtual void variable_bounds(Eigen::VectorXd& lower, Eigen::VectorXd& upper) const = 0;
  virtual void constraint_bounds(Eigen::VectorXd& lower, Eigen::VectorXd& upper) const = 0;

  virtual double objective(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd constraints(const Eigen::VectorXd& x) const = 0;

  /// Jacobian entries; the pattern must not depend on x.
  virtual void jacobian(const Eigen::VectorXd& x, Triplets& entries) const = 0;

  /// Lower-triangle entries of obj_factor * H_f + sum_i lambda_i H_gi; the
  /// pattern must not depend on x. Duplicates are summed.
  virtual void hessian(const Eigen::VectorXd& x, double obj_factor, const Eigen::VectorXd& lambda,
                       Triplets& entries) const = 0;

  /// Typical magnitudes of the variables and constraint rows; the solver
  /// works in units where these are one.
  virtual Eigen::VectorXd variable_scaling() const {
    return Eigen::VectorXd::Ones(num_variables());
  }
  virtual Eigen::VectorXd constraint_scaling() const {
    return Eigen::VectorXd::Ones(num_constraints());
  }
};

enum class SolveStatus {
  Converged,
  MaxIterations,
  LineSearchFailure,
  Infeasible,
  InvalidBounds,
  NumericalFailure,
};

std::string to_string(SolveStatus status);

/// Output of a constrained solve.
struct NlpSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd lambda;  // constraint multipliers, L = f + lambda^T g
  double objective = 0.0;
  double constraint_violation = 0.0;  // max bound violation of g, scaled units
  int iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::MaxIterations;
  double solve_time = 0.0;  // wall clock, s
};

}  // namespace ecoauv::optim
