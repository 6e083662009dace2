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

#include "ecoauv/optim/nlp_problem.hpp"

namespace ecoauv::optim {

struct InteriorPointSettings {
  double tolerance = 1e-8;             // scaled KKT error
  double constraint_tolerance = 1e-6;  // scaled constraint violation
  double acceptable_tolerance = 1e-6;
  int acceptable_iterations = 10;
  int max_iterations = 500;
  double mu_init = 0.1;
  double bound_push = 1e-2;
  int print_level = 0;
};

/// Primal-dual interior-point method with a filter-free l1-merit line search.
///
/// Inequality rows get slack variables; the barrier subproblems are solved
/// with Newton steps on the sparse quasi-definite KKT system. Inertia is
/// corrected by a diagonal shift of the Hessian block until the LDL^T
/// factor has exactly n positive and m negative pivots.
NlpSolution solve_interior_point(const NlpProblem& problem, const Eigen::VectorXd& x0,
                                 const InteriorPointSettings& settings = {},
                                 const Eigen::VectorXd& lambda0 = Eigen::VectorXd());

}  // namespace ecoauv::optim
