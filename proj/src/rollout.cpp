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

#include "ecoauv/vehicle/rollout.hpp"

#include "ecoauv/error.hpp"
#include "ecoauv/vehicle/dynamics.hpp"

namespace ecoauv {

std::vector<Vector6<ADScalar>> rollout_samples(const VehicleParams& params, const RolloutGrid& grid,
                                               const HorizontalState& current,
                                               const Eigen::VectorXd& thrusts,
                                               bool with_derivatives) {
  using ADVector6 = Vector6<ADScalar>;
  const int n = static_cast<int>(thrusts.size());
  if (n != 2 * grid.samples) throw DomainError("thrust sequence length must be twice the samples");
  if (with_derivatives && n > ADDerivatives::MaxRowsAtCompileTime) {
    throw DomainError("too many thrust variables for forward derivatives");
  }
  ADVector6 zeta;
  const Vector6d z0 = current.vector();
  for (int i = 0; i < 6; ++i) {
    zeta[i] = ADScalar(z0[i], ADDerivatives::Zero(with_derivatives ? n : 0));
  }
  std::vector<ADVector6> out;
  out.reserve(grid.samples);
  const double h = grid.dt / grid.substeps;
  for (int k = 0; k < grid.samples; ++k) {
    ADScalar left, right;
    if (with_derivatives) {
      left = ADScalar(thrusts[2 * k], n, 2 * k);
      right = ADScalar(thrusts[2 * k + 1], n, 2 * k + 1);
    } else {
      left = ADScalar(thrusts[2 * k], ADDerivatives());
      right = ADScalar(thrusts[2 * k + 1], ADDerivatives());
    }
    const auto f = [&](const ADVector6& z) { return horizontal_rates<ADScalar>(params, z, left, right); };
    for (int s = 0; s < grid.substeps; ++s) zeta = rk4_step(zeta, h, f);
    out.push_back(zeta);
  }
  return out;
}

}  // namespace ecoauv
