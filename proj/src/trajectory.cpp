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

#include "ecoauv/dc/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ecoauv/error.hpp"

namespace ecoauv {

void Trajectory::start(double t, const Eigen::VectorXd& x) {
  times.assign(1, t);
  states.assign(1, x);
  commands.clear();
  power.clear();
  energy.assign(1, 0.0);
}

void Trajectory::append(const Eigen::VectorXd& command, double mean_power, double t,
                        const Eigen::VectorXd& x) {
  if (states.empty()) throw DomainError("append to an unstarted trajectory");
  const double dt = t - times.back();
  commands.push_back(command);
  power.push_back(mean_power);
  energy.push_back(energy.back() + mean_power * dt);
  times.push_back(t);
  states.push_back(x);
}

void Trajectory::validate() const {
  const std::size_t n = states.size();
  if (times.size() != n || energy.size() != n) throw DomainError("trajectory length mismatch");
  if (n > 0 && (commands.size() != n - 1 || power.size() != n - 1)) {
    throw DomainError("trajectory needs one command per interval");
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (!(times[k] > times[k - 1])) throw DomainError("trajectory times not increasing");
    if (energy[k] < energy[k - 1]) throw DomainError("trajectory energy decreasing");
  }
}

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

void write_csv(const Trajectory& tr, std::ostream& out) {
  out << 't';
  for (const auto& name : tr.state_names) out << ',' << name;
  for (const auto& name : tr.command_names) out << ',' << name;
  out << ",power,energy\n";
  const std::size_t nc = tr.command_names.size();
  for (std::size_t k = 0; k < tr.size(); ++k) {
    out << format_number(tr.times[k]);
    for (Eigen::Index i = 0; i < tr.states[k].size(); ++i) out << ',' << format_number(tr.states[k][i]);
    const bool has_command = k < tr.commands.size();
    for (std::size_t j = 0; j < nc; ++j) {
      out << ',';
      if (has_command) out << format_number(tr.commands[k][static_cast<Eigen::Index>(j)]);
    }
    out << ',';
    if (has_command) out << format_number(tr.power[k]);
    out << ',' << format_number(tr.energy[k]) << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw DomainError("bad number '" + s + "' in trajectory CSV");
    return v;
  } catch (const std::logic_error&) {
    throw DomainError("bad number '" + s + "' in trajectory CSV");
  }
}

}  // namespace

Trajectory read_csv(std::istream& in, int num_states) {
  Trajectory tr;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty trajectory CSV");
  const auto header = split(line);
  const int nc = static_cast<int>(header.size()) - 3 - num_states;
  if (num_states < 1 || nc < 0 || header.front() != "t") throw DomainError("bad trajectory CSV header");
  tr.state_names.assign(header.begin() + 1, header.begin() + 1 + num_states);
  tr.command_names.assign(header.begin() + 1 + num_states, header.end() - 2);

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != header.size()) throw DomainError("trajectory CSV row has wrong field count");
    tr.times.push_back(parse(f[0]));
    Eigen::VectorXd x(num_states);
    for (int i = 0; i < num_states; ++i) x[i] = parse(f[1 + i]);
    tr.states.push_back(x);
    if (!f[f.size() - 2].empty()) {
      Eigen::VectorXd c(nc);
      for (int j = 0; j < nc; ++j) c[j] = parse(f[1 + num_states + j]);
      tr.commands.push_back(c);
      tr.power.push_back(parse(f[f.size() - 2]));
    }
    tr.energy.push_back(parse(f.back()));
  }
  tr.validate();
  return tr;
}

}  // namespace ecoauv
