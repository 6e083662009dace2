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

#include <iosfwd>
#include <string>
#include <vector>

#include "ecoauv/sim/scenario.hpp"

namespace ecoauv::sim {

struct SuiteRow {
  std::string id;
  std::string group;
  std::string method;
  bool goal_reached = false;
  bool failed = false;
  std::string message;
  double travel_time = 0.0;
  double energy = 0.0;
  double reduction = 0.0;      // % vs LOS-MPC in the same group
  bool has_reduction = false;  // false for LOS-MPC itself or without a LOS row
  double compute_time = 0.0;
};

/// (energy - los_energy) / los_energy * 100.
double energy_reduction(double energy, double los_energy);

struct SuiteReport {
  std::vector<ScenarioResult> results;  // ordered by scenario id
  std::vector<SuiteRow> rows;           // same order
};

/// Runs scenarios on up to `jobs` threads (0: hardware concurrency capped at
/// the scenario count). Output order is by id, independent of scheduling.
SuiteReport run_suite(const std::vector<Scenario>& scenarios, int jobs = 0);

std::vector<SuiteRow> comparison_rows(const std::vector<ScenarioResult>& results);

/// Columns: id,group,method,goal_reached,travel_time,energy,reduction_pct,
/// compute_time,status. With timing = false the compute column is omitted so
/// the file is reproducible byte for byte.
void write_summary_csv(const std::vector<SuiteRow>& rows, std::ostream& out, bool timing = true);
/// Markdown table grouped by scenario group.
void write_summary_markdown(const std::vector<SuiteRow>& rows, std::ostream& out);

/// Per-run axis shares (%), final goal distance and the largest depth and
/// attitude excursions.
void write_breakdown_markdown(const std::vector<ScenarioResult>& results, std::ostream& out);

/// Columns: t,heading_error,t_d,J_d,J_s,K_h,stage_energy,solve_time,converged.
void write_diagnostics_csv(const std::vector<DiagnosticRow>& rows, std::ostream& out,
                           bool timing = true);

}  // namespace ecoauv::sim
