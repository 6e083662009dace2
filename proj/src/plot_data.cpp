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

#include "ecoauv/sim/plot_data.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "ecoauv/dc/trajectory.hpp"
#include "ecoauv/empc/terminal_cost.hpp"
#include "ecoauv/error.hpp"

namespace ecoauv::sim {

namespace {

// Stacked state layout [u v w p q r x y z phi theta psi].
constexpr int kX = 6, kY = 7, kZ = 8, kPsi = 11;

void row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    out << (first ? "" : ",") << format_number(v);
    first = false;
  }
  out << '\n';
}

double heading_error_at(const Eigen::VectorXd& s, const empc::Goal& goal) {
  const HorizontalState h = HorizontalState::project(VehicleState::from_stacked(s));
  if (std::hypot(goal.x - h.x, goal.y - h.y) <= empc::kAtGoalDistance) return 0.0;
  return empc::heading_error(h, goal);
}

}  // namespace

std::string plot_suffix(PlotKind kind) {
  switch (kind) {
    case PlotKind::Trajectory: return "xy";
    case PlotKind::ThrustHeading: return "thrust_heading";
    case PlotKind::AxisPower: return "axis_power";
    case PlotKind::Velocity: return "velocity";
  }
  return "unknown";
}

void write_plot_csv(PlotKind kind, const ScenarioResult& result, const Scenario& scenario,
                    std::ostream& out) {
  const Trajectory& tr = result.trajectory;
  switch (kind) {
    case PlotKind::Trajectory:
      out << "# columns: t [s], x [m], y [m], z [m], psi [rad]; goal (" << format_number(scenario.goal.x)
          << ", " << format_number(scenario.goal.y) << ")\n"
          << "t,x,y,z,psi\n";
      for (std::size_t k = 0; k < tr.size(); ++k) {
        const Eigen::VectorXd& s = tr.states[k];
        row(out, {tr.times[k], s[kX], s[kY], s[kZ], s[kPsi]});
      }
      break;
    case PlotKind::ThrustHeading:
      out << "# columns: t [s] (start of hold), T_l T_r T_f T_a [N], heading_error [rad]\n"
          << "t,T_l,T_r,T_f,T_a,heading_error\n";
      for (std::size_t k = 0; k < tr.commands.size(); ++k) {
        const Eigen::VectorXd& c = tr.commands[k];
        row(out, {tr.times[k], c[0], c[1], c[2], c[3], heading_error_at(tr.states[k], scenario.goal)});
      }
      break;
    case PlotKind::AxisPower:
      out << "# columns: t [s] (start of hold), surge heave yaw pitch total [W]\n"
          << "t,surge,heave,yaw,pitch,total\n";
      for (std::size_t k = 0; k < tr.commands.size(); ++k) {
        const Eigen::VectorXd& c = tr.commands[k];
        const AxisEnergy p = attribute_power(scenario.params, ThrustCommand{c[0], c[1], c[2], c[3]});
        row(out, {tr.times[k], p.surge, p.heave, p.yaw, p.pitch, p.total()});
      }
      break;
    case PlotKind::Velocity:
      out << "# columns: t [s], u v w [m/s], p q r [rad/s]\n"
          << "t,u,v,w,p,q,r\n";
      for (std::size_t k = 0; k < tr.size(); ++k) {
        const Eigen::VectorXd& s = tr.states[k];
        row(out, {tr.times[k], s[0], s[1], s[2], s[3], s[4], s[5]});
      }
      break;
  }
}

std::vector<std::filesystem::path> plot_paths(const std::string& id, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (PlotKind kind : kPlotKinds) paths.push_back(dir / (id + "." + plot_suffix(kind) + ".csv"));
  return paths;
}

std::vector<std::filesystem::path> emit_plot_data(const ScenarioResult& result, const Scenario& scenario,
                                                  const std::filesystem::path& dir) {
  const std::vector<std::filesystem::path> paths = plot_paths(result.id, dir);
  for (std::size_t i = 0; i < kPlotKinds.size(); ++i) {
    std::ofstream out(paths[i]);
    if (!out) throw Error("cannot write '" + paths[i].string() + "'");
    write_plot_csv(kPlotKinds[i], result, scenario, out);
  }
  return paths;
}

}  // namespace ecoauv::sim
