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

#include <Eigen/Core>

namespace ecoauv {

/// Time-indexed states and the commands held between them.
///
/// commands[k] and power[k] apply on [times[k], times[k+1]); power[k] is the
/// mean power over that interval, so energy[k+1] = energy[k] + power[k] * dt.
struct Trajectory {
  std::vector<std::string> state_names;
  std::vector<std::string> command_names;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<Eigen::VectorXd> commands;
  std::vector<double> power;
  std::vector<double> energy;

  std::size_t size() const { return states.size(); }
  bool empty() const { return states.empty(); }
  double duration() const { return times.empty() ? 0.0 : times.back() - times.front(); }
  double total_energy() const { return energy.empty() ? 0.0 : energy.back(); }

  /// Starts a trajectory at (t, x) with zero energy.
  void start(double t, const Eigen::VectorXd& x);
  /// Appends the command held over [times.back(), t] and the state reached.
  void append(const Eigen::VectorXd& command, double mean_power, double t, const Eigen::VectorXd& x);

  /// Throws DomainError when lengths, time ordering or energy monotonicity
  /// are violated.
  void validate() const;
};

/// Header "t,<states>,<commands>,power,energy"; 9 significant digits. The
/// last row leaves command and power fields empty.
void write_csv(const Trajectory& trajectory, std::ostream& out);
Trajectory read_csv(std::istream& in, int num_states);

/// Formats a double with 9 significant digits.
std::string format_number(double value);

}  // namespace ecoauv
