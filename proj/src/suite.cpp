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

#include "ecoauv/sim/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

#include "ecoauv/error.hpp"

namespace ecoauv::sim {

double energy_reduction(double energy, double los_energy) {
  if (!(los_energy > 0.0)) throw DomainError("reference energy must be positive");
  return (energy - los_energy) / los_energy * 100.0;
}

SuiteReport run_suite(const std::vector<Scenario>& scenarios, int jobs) {
  std::vector<const Scenario*> order;
  for (const auto& s : scenarios) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](const Scenario* a, const Scenario* b) { return a->id < b->id; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->id == order[i - 1]->id) throw ConfigError("scenario.id", "duplicate id '" + order[i]->id + "'");
  }

  SuiteReport report;
  report.results.resize(order.size());
  const int available = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int workers = jobs > 0 ? jobs : available;
  workers = std::max(1, std::min<int>(workers, static_cast<int>(order.size())));

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      try {
        report.results[i] = run(*order[i]);
      } catch (const Error& e) {
        ScenarioResult& r = report.results[i];
        r.id = order[i]->id;
        r.group = order[i]->group;
        r.controller = order[i]->controller;
        r.failed = true;
        r.message = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  report.rows = comparison_rows(report.results);
  return report;
}

std::vector<SuiteRow> comparison_rows(const std::vector<ScenarioResult>& results) {
  std::map<std::string, double> los_energy;
  for (const auto& r : results) {
    if (r.controller == ControllerKind::LosMpc && !r.failed && r.energy > 0.0) los_energy[r.group] = r.energy;
  }
  std::vector<SuiteRow> rows;
  for (const auto& r : results) {
    SuiteRow row;
    row.id = r.id;
    row.group = r.group;
    row.method = display_name(r.controller);
    row.goal_reached = r.goal_reached;
    row.failed = r.failed;
    row.message = r.message;
    row.travel_time = r.travel_time;
    row.energy = r.energy;
    row.compute_time = r.compute_time;
    const auto it = los_energy.find(r.group);
    if (r.controller != ControllerKind::LosMpc && it != los_energy.end() && !r.failed) {
      row.reduction = energy_reduction(r.energy, it->second);
      row.has_reduction = true;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string status(const SuiteRow& r) {
  if (r.failed) return "failed";
  return r.goal_reached ? "reached" : "missed";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_summary_csv(const std::vector<SuiteRow>& rows, std::ostream& out, bool timing) {
  out << "id,group,method,goal_reached,travel_time,energy,reduction_pct";
  if (timing) out << ",compute_time";
  out << ",status\n";
  for (const auto& r : rows) {
    out << csv_field(r.id) << ',' << csv_field(r.group) << ',' << csv_field(r.method) << ','
        << (r.goal_reached ? 1 : 0) << ',' << format_number(r.travel_time) << ','
        << format_number(r.energy) << ',' << (r.has_reduction ? format_number(r.reduction) : "");
    if (timing) out << ',' << format_number(r.compute_time);
    out << ',' << status(r) << '\n';
  }
}

void write_summary_markdown(const std::vector<SuiteRow>& rows, std::ostream& out) {
  std::vector<std::string> groups;
  for (const auto& r : rows) {
    if (std::find(groups.begin(), groups.end(), r.group) == groups.end()) groups.push_back(r.group);
  }
  char buf[64];
  for (const auto& g : groups) {
    out << "### " << g << "\n\n";
    out << "| Method | Travel time (s) | Energy (J) | Energy reduction (%) | Compute time (s) | Status |\n";
    out << "|---|---:|---:|---:|---:|---|\n";
    for (const auto& r : rows) {
      if (r.group != g) continue;
      out << "| " << r.method << " | ";
      std::snprintf(buf, sizeof buf, "%.2f", r.travel_time);
      out << buf << " | ";
      std::snprintf(buf, sizeof buf, "%.2f", r.energy);
      out << buf << " | ";
      if (r.has_reduction) {
        std::snprintf(buf, sizeof buf, "%.2f", r.reduction);
        out << buf;
      } else {
        out << "--";
      }
      std::snprintf(buf, sizeof buf, "%.3f", r.compute_time);
      out << " | " << buf << " | " << status(r) << " |\n";
    }
    out << '\n';
  }
}

void write_breakdown_markdown(const std::vector<ScenarioResult>& results, std::ostream& out) {
  out << "| Run | Surge (%) | Heave (%) | Yaw (%) | Pitch (%) | Final distance (m) | max abs z (m) "
         "| max abs roll (rad) | max abs pitch (rad) |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  char buf[256];
  for (const auto& r : results) {
    const auto s = r.axis_energy.shares();
    std::snprintf(buf, sizeof buf, "| %.2f | %.2f | %.2f | %.2f | %.3f | %.4f | %.4f | %.4f |\n", s[0], s[1],
                  s[2], s[3], r.final_distance, r.max_abs_depth, r.max_abs_roll, r.max_abs_pitch);
    out << "| " << r.id << " " << buf;
  }
}

void write_diagnostics_csv(const std::vector<DiagnosticRow>& rows, std::ostream& out, bool timing) {
  out << "t,heading_error,t_d,J_d,J_s,K_h,stage_energy";
  if (timing) out << ",solve_time";
  out << ",converged\n";
  for (const auto& r : rows) {
    out << format_number(r.t) << ',' << format_number(r.heading_error) << ',' << format_number(r.t_d)
        << ',' << format_number(r.dynamic_cost) << ',' << format_number(r.static_cost) << ','
        << format_number(r.terminal_cost) << ',' << format_number(r.stage_energy);
    if (timing) out << ',' << format_number(r.solve_time);
    out << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

}  // namespace ecoauv::sim
