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

#include <algorithm>
#include <cmath>
#include <utility>

#include "ecoauv/error.hpp"

namespace ecoauv::optim {

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
};

/// Golden-section search on [lower, upper] for a unimodal f.
template <typename Function>
ScalarMinimum golden_section(Function&& f, double lower, double upper, double tolerance,
                             int max_iterations = 200) {
  if (!(lower <= upper)) throw DomainError("golden_section: lower bound exceeds upper bound");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lower, b = upper;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && (b - a) > tolerance; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

/// Uniform grid scan followed by golden-section refinement around the best
/// grid point. The returned value never exceeds any grid value.
template <typename Function>
ScalarMinimum grid_golden_minimize(Function&& f, double lower, double upper, int grid_points,
                                   double tolerance) {
  if (grid_points < 2) throw DomainError("grid_golden_minimize needs at least two grid points");
  if (!(lower <= upper)) throw DomainError("grid_golden_minimize: lower bound exceeds upper bound");
  const double spacing = (upper - lower) / (grid_points - 1);
  ScalarMinimum best{lower, f(lower)};
  int best_index = 0;
  for (int i = 1; i < grid_points; ++i) {
    const double t = i == grid_points - 1 ? upper : lower + i * spacing;
    const double value = f(t);
    if (value < best.value) {
      best = {t, value};
      best_index = i;
    }
  }
  const double a = best_index == 0 ? lower : lower + (best_index - 1) * spacing;
  const double b = best_index == grid_points - 1 ? upper : lower + (best_index + 1) * spacing;
  const ScalarMinimum refined = golden_section(f, a, std::min(b, upper), tolerance);
  return refined.value < best.value ? refined : best;
}

}  // namespace ecoauv::optim
