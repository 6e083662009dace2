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

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

namespace ecoauv {

template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

using Vector6d = Vector6<double>;
using Vector4d = Vector4<double>;
using Vector12d = Eigen::Matrix<double, 12, 1>;

/// Forward-mode derivative scalar with up to 32 directions kept on the stack.
using ADDerivatives = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 32, 1>;
using ADScalar = Eigen::AutoDiffScalar<ADDerivatives>;

inline double value_of(double x) { return x; }

template <typename Der>
double value_of(const Eigen::AutoDiffScalar<Der>& x) {
  return x.value();
}

/// Wraps an angle into (-pi, pi].
template <typename Scalar>
Scalar wrap_angle(const Scalar& angle) {
  constexpr double kPi = std::numbers::pi;
  const double raw = value_of(angle);
  double wrapped = std::remainder(raw, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return angle + (wrapped - raw);
}

}  // namespace ecoauv
