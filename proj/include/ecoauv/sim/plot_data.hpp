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

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ecoauv/sim/scenario.hpp"

namespace ecoauv::sim {

/// Figure families of a closed-loop run.
enum class PlotKind { Trajectory, ThrustHeading, AxisPower, Velocity };

inline constexpr std::array<PlotKind, 4> kPlotKinds = {PlotKind::Trajectory, PlotKind::ThrustHeading,
                                                       PlotKind::AxisPower, PlotKind::Velocity};

/// File suffix, e.g. "xy" for "<id>.xy.csv".
std::string plot_suffix(PlotKind kind);

/// One CSV per family: a "# columns: ..." comment line with units, a header
/// row, then data. State-based families (xy, velocity) have one row per sim
/// step; command-based families (thrusts, axis power) one row per held
/// command, stamped with the start of the hold. An empty trajectory gives
/// the two header lines only.
void write_plot_csv(PlotKind kind, const ScenarioResult& result, const Scenario& scenario,
                    std::ostream& out);

/// "<dir>/<id>.<suffix>.csv" for every family.
std::vector<std::filesystem::path> plot_paths(const std::string& id, const std::filesystem::path& dir);

/// Writes the four files of plot_paths() and returns their paths.
std::vector<std::filesystem::path> emit_plot_data(const ScenarioResult& result, const Scenario& scenario,
                                                  const std::filesystem::path& dir);

}  // namespace ecoauv::sim
