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

#include <cmath>
#include <string>

#include "ecoauv/error.hpp"
#include "ecoauv/optim/golden_section.hpp"
#include "ecoauv/vehicle/energy.hpp"
#include "ecoauv/vehicle/params.hpp"

namespace ecoauv {

namespace {

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

}  // namespace

void PowerModel::validate() const {
  if (kind == Kind::PowerLaw) {
    require(std::isfinite(kappa) && kappa > 0.0, "power.kappa", "must be positive");
    require(std::isfinite(exponent) && exponent >= 1.0, "power.exponent", "must be >= 1");
    return;
  }
  require(!coefficients.empty(), "power.coefficients", "polynomial needs coefficients");
  bool any_positive = false;
  for (double c : coefficients) {
    require(std::isfinite(c) && c >= 0.0, "power.coefficients", "must be non-negative");
    any_positive = any_positive || c > 0.0;
  }
  require(any_positive, "power.coefficients", "at least one coefficient must be positive");
}

void VehicleParams::validate() const {
  require(mass > 0.0, "mass.mass", "must be positive");
  require(gravity > 0.0, "mass.gravity", "must be positive");
  require(displacement > mass, "mass.displacement",
          "must exceed mass (vehicle is positively buoyant)");
  require(ix > 0.0 && iy > 0.0 && iz > 0.0, "mass.ix", "inertias must be positive");
  const Vector6d m = mass_diagonal();
  require((m.array() > 0.0).all(), "mass.x_udot", "total mass diagonal must be positive");
  require(x_uu > 0.0 && y_vv > 0.0 && z_ww > 0.0 && k_pp > 0.0 && m_qq > 0.0 && n_rr > 0.0,
          "damping.x_uu", "damping magnitudes must be positive");
  require(l1 >= 0.0, "geometry.l1", "must be non-negative");
  require(l2 >= 0.0, "geometry.l2", "must be non-negative");
  require(l3 >= 0.0, "geometry.l3", "must be non-negative");
  require(thrust_max > 0.0, "thrusters.thrust_max", "must be positive");
  for (double x : {length, width, l1, l2, l3, zg, mass, displacement, ix, iy, iz, x_udot, y_vdot,
                   z_wdot, k_pdot, m_qdot, n_rdot, x_uu, y_vv, z_ww, k_pp, m_qq, n_rr}) {
    require(std::isfinite(x), "vehicle", "all parameters must be finite");
  }
  power.validate();
}

double buoyancy_holding_power(const VehicleParams& params) {
  const double excess = params.buoyancy() - params.weight();
  if (excess < 0.0) throw DomainError("buoyancy_holding_power requires B >= W");
  return 2.0 * params.power(excess / 2.0);
}

double cruise_energy_per_distance(const VehicleParams& params, double u) {
  if (!(u > 0.0)) throw DomainError("cruise speed must be positive");
  const double drag_share = 0.5 * params.x_uu * u * u;
  return (2.0 * params.power(drag_share) + buoyancy_holding_power(params)) / u;
}

double optimal_cruise_speed(const VehicleParams& params, double lower, double upper) {
  if (!(lower > 0.0 && lower < upper)) throw DomainError("invalid cruise-speed search interval");
  const auto f = [&](double u) { return cruise_energy_per_distance(params, u); };
  return optim::grid_golden_minimize(f, lower, upper, 64, 1e-9).argmin;
}

}  // namespace ecoauv
