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
#include <vector>

#include "ecoauv/scalar.hpp"

namespace ecoauv {

/// Electrical power drawn by one thruster as a function of its signed thrust.
///
/// Two closed forms are supported:
///   - PowerLaw:   P(T) = kappa * |T|^exponent   (default exponent 3/2)
///   - Polynomial: P(T) = sum_i c_i * |T|^(i+1)
/// Both are even in T, vanish at T = 0 and grow strictly with |T| for valid
/// coefficients (see validate()).
struct PowerModel {
  enum class Kind { PowerLaw, Polynomial };

  Kind kind = Kind::PowerLaw;
  double kappa = 0.45;    // W / N^exponent
  double exponent = 1.5;
  std::vector<double> coefficients;

  template <typename Scalar>
  Scalar operator()(const Scalar& thrust) const {
    using std::abs;
    using std::pow;
    const Scalar magnitude = abs(thrust);
    if (kind == Kind::PowerLaw) {
      if (value_of(magnitude) == 0.0) return magnitude * 0.0;
      return kappa * pow(magnitude, exponent);
    }
    Scalar power = magnitude * 0.0;
    Scalar term = magnitude;
    for (double c : coefficients) {
      power += c * term;
      term *= magnitude;
    }
    return power;
  }

  /// dP/dT.
  double derivative(double thrust) const {
    const double sign = thrust < 0.0 ? -1.0 : 1.0;
    const double a = std::abs(thrust);
    if (kind == Kind::PowerLaw) {
      if (a == 0.0) return exponent > 1.0 ? 0.0 : sign * kappa;
      return sign * kappa * exponent * std::pow(a, exponent - 1.0);
    }
    double d = 0.0;
    double term = 1.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      d += coefficients[i] * static_cast<double>(i + 1) * term;
      term *= a;
    }
    return sign * d;
  }

  /// d2P/dT2, capped where the power law is singular at T = 0.
  double second_derivative(double thrust) const {
    constexpr double kCap = 1e6;
    const double a = std::abs(thrust);
    if (kind == Kind::PowerLaw) {
      if (exponent == 1.0) return 0.0;
      if (a == 0.0) return exponent >= 2.0 ? (exponent == 2.0 ? 2.0 * kappa : 0.0) : kCap;
      return std::min(kCap, kappa * exponent * (exponent - 1.0) * std::pow(a, exponent - 2.0));
    }
    double d = 0.0;
    double term = 1.0;
    for (std::size_t i = 1; i < coefficients.size(); ++i) {
      d += coefficients[i] * static_cast<double>((i + 1) * i) * term;
      term *= a;
    }
    return d;
  }

  /// Throws ConfigError when the model is not even/monotone/zero at rest.
  void validate() const;
};

}  // namespace ecoauv
