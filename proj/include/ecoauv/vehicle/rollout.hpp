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

#include <vector>

#include "ecoauv/scalar.hpp"
#include "ecoauv/vehicle/params.hpp"
#include "ecoauv/vehicle/state.hpp"

namespace ecoauv {

/// Zero-order-hold schedule of a horizontal thrust sequence [T_l0 T_r0 T_l1 ...].
struct RolloutGrid {
  int samples = 5;
  double dt = 0.1;
  int substeps = 10;
};

/// Horizontal states at the end of every sample, integrated with RK4. With
/// derivatives, each state carries d/d(thrusts) (at most 32 thrusts).
std::vector<Vector6<ADScalar>> rollout_samples(const VehicleParams& params, const RolloutGrid& grid,
                                               const HorizontalState& current,
                                               const Eigen::VectorXd& thrusts,
                                               bool with_derivatives);

}  // namespace ecoauv
