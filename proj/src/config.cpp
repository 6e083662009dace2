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

#include "ecoauv/config/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "ecoauv/error.hpp"

namespace ecoauv::config {

namespace {

using Text = const std::string&;

double to_number(Text key, Text text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key, "expected a number, got '" + text + "'");
  }
  return v;
}

int to_int(Text key, Text text) {
  int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(Text key, Text text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

std::vector<double> to_list(Text key, Text text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(to_number(key, item));
  }
  if (out.empty()) throw ConfigError(key, "expected a comma-separated list of numbers");
  return out;
}

// Message of a ConfigError without its "key: " prefix.
std::string detail(const ConfigError& e) {
  const std::string what = e.what();
  const std::string prefix = e.key() + ": ";
  return !e.key().empty() && what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

template <typename T>
struct Field {
  std::string key;
  bool required;
  std::function<void(T&, Text key, Text text)> set;
};

template <typename T, typename M>
std::function<void(T&, Text, Text)> number(M T::*member) {
  return [member](T& t, Text k, Text v) { t.*member = to_number(k, v); };
}

const std::vector<Field<VehicleParams>>& vehicle_fields() {
  using P = VehicleParams;
  static const std::vector<Field<P>> fields = {
      {"geometry.length", true, number(&P::length)},
      {"geometry.width", true, number(&P::width)},
      {"geometry.l1", true, number(&P::l1)},
      {"geometry.l2", true, number(&P::l2)},
      {"geometry.l3", true, number(&P::l3)},
      {"geometry.zg", true, number(&P::zg)},
      {"mass.mass", true, number(&P::mass)},
      {"mass.displacement", true, number(&P::displacement)},
      {"mass.gravity", false, number(&P::gravity)},
      {"mass.ix", true, number(&P::ix)},
      {"mass.iy", true, number(&P::iy)},
      {"mass.iz", true, number(&P::iz)},
      {"mass.x_udot", true, number(&P::x_udot)},
      {"mass.y_vdot", true, number(&P::y_vdot)},
      {"mass.z_wdot", true, number(&P::z_wdot)},
      {"mass.k_pdot", true, number(&P::k_pdot)},
      {"mass.m_qdot", true, number(&P::m_qdot)},
      {"mass.n_rdot", true, number(&P::n_rdot)},
      {"damping.x_uu", true, number(&P::x_uu)},
      {"damping.y_vv", true, number(&P::y_vv)},
      {"damping.z_ww", true, number(&P::z_ww)},
      {"damping.k_pp", true, number(&P::k_pp)},
      {"damping.m_qq", true, number(&P::m_qq)},
      {"damping.n_rr", true, number(&P::n_rr)},
      {"thrusters.thrust_max", true, number(&P::thrust_max)},
      {"power.model", true,
       [](P& p, Text k, Text v) {
         if (v == "power-law") {
           p.power.kind = PowerModel::Kind::PowerLaw;
         } else if (v == "polynomial") {
           p.power.kind = PowerModel::Kind::Polynomial;
         } else {
           throw ConfigError(k, "unknown power model '" + v + "' (power-law, polynomial)");
         }
       }},
      // Requirement of the three below depends on power.model.
      {"power.kappa", false, [](P& p, Text k, Text v) { p.power.kappa = to_number(k, v); }},
      {"power.exponent", false, [](P& p, Text k, Text v) { p.power.exponent = to_number(k, v); }},
      {"power.coefficients", false,
       [](P& p, Text k, Text v) { p.power.coefficients = to_list(k, v); }},
  };
  return fields;
}

// Per-run keys; stored as "scenario.<name>" or "run.<id>.<name>".
const std::vector<Field<sim::Scenario>>& run_fields() {
  using S = sim::Scenario;
  static const std::vector<Field<S>> fields = {
      {"group", false, [](S& s, Text, Text v) { s.group = v; }},
      {"controller", true,
       [](S& s, Text k, Text v) {
         try {
           s.controller = sim::parse_controller(v);
         } catch (const ConfigError& e) {
           throw ConfigError(k, detail(e));
         }
       }},
      {"x0", true, number(&S::x0)},
      {"y0", true, number(&S::y0)},
      {"psi0", false, number(&S::psi0)},
      {"u0", false,
       [](S& s, Text k, Text v) {
         if (v == "optimal-cruise") {
           s.u0.reset();
         } else {
           s.u0 = to_number(k, v);
         }
       }},
      {"plan_x0", false, [](S& s, Text k, Text v) { s.plan_x0 = to_number(k, v); }},
      {"plan_y0", false, [](S& s, Text k, Text v) { s.plan_y0 = to_number(k, v); }},
      {"goal_x", true, [](S& s, Text k, Text v) { s.goal.x = to_number(k, v); }},
      {"goal_y", true, [](S& s, Text k, Text v) { s.goal.y = to_number(k, v); }},
      {"arrival_radius", false, number(&S::arrival_radius)},
      {"max_time", false,
       [](S& s, Text k, Text v) { s.max_time = v == "auto" ? 0.0 : to_number(k, v); }},
      {"sim_dt", false, number(&S::sim_dt)},
      {"control_dt", false, number(&S::control_dt)},
  };
  return fields;
}

// Controller sections shared by all runs of a file.
const std::vector<Field<sim::Scenario>>& controller_fields() {
  using S = sim::Scenario;
  static const std::vector<Field<S>> fields = {
      {"empc.horizon", false, [](S& s, Text k, Text v) { s.empc.horizon = to_int(k, v); }},
      {"empc.dt", false, [](S& s, Text k, Text v) { s.empc.dt = to_number(k, v); }},
      {"empc.substeps", false, [](S& s, Text k, Text v) { s.empc.substeps = to_int(k, v); }},
      {"empc.td_min", false, [](S& s, Text k, Text v) { s.empc.terminal.td_min = to_number(k, v); }},
      {"empc.td_max", false, [](S& s, Text k, Text v) { s.empc.terminal.td_max = to_number(k, v); }},
      {"empc.td_grid_points", false,
       [](S& s, Text k, Text v) { s.empc.terminal.grid_points = to_int(k, v); }},
      {"empc.td_tolerance", false,
       [](S& s, Text k, Text v) { s.empc.terminal.tolerance = to_number(k, v); }},
      {"empc.min_speed", false,
       [](S& s, Text k, Text v) { s.empc.terminal.min_speed = to_number(k, v); }},
      {"empc.warm_start", false, [](S& s, Text k, Text v) { s.empc.warm_start = to_bool(k, v); }},
      {"empc.gradient_tolerance", false,
       [](S& s, Text k, Text v) { s.empc.solver.gradient_tolerance = to_number(k, v); }},
      {"empc.max_iterations", false,
       [](S& s, Text k, Text v) { s.empc.solver.max_iterations = to_int(k, v); }},

      {"los.lookahead", false, [](S& s, Text k, Text v) { s.los.lookahead = to_number(k, v); }},
      {"los.u_ref", false,
       [](S& s, Text k, Text v) {
         if (v == "initial-surge") {
           s.los_u_ref.reset();
         } else {
           s.los_u_ref = to_number(k, v);
         }
       }},
      {"los.w_u", false, [](S& s, Text k, Text v) { s.los.w_u = to_number(k, v); }},
      {"los.w_psi", false, [](S& s, Text k, Text v) { s.los.w_psi = to_number(k, v); }},
      {"los.w_thrust", false, [](S& s, Text k, Text v) { s.los.w_thrust = to_number(k, v); }},
      {"los.horizon", false, [](S& s, Text k, Text v) { s.los.horizon = to_int(k, v); }},
      {"los.dt", false, [](S& s, Text k, Text v) { s.los.dt = to_number(k, v); }},
      {"los.substeps", false, [](S& s, Text k, Text v) { s.los.substeps = to_int(k, v); }},
      {"los.gradient_tolerance", false,
       [](S& s, Text k, Text v) { s.los.solver.gradient_tolerance = to_number(k, v); }},
      {"los.max_iterations", false,
       [](S& s, Text k, Text v) { s.los.solver.max_iterations = to_int(k, v); }},

      {"pid.depth_kp", false, [](S& s, Text k, Text v) { s.pid.depth.kp = to_number(k, v); }},
      {"pid.depth_ki", false, [](S& s, Text k, Text v) { s.pid.depth.ki = to_number(k, v); }},
      {"pid.depth_kd", false, [](S& s, Text k, Text v) { s.pid.depth.kd = to_number(k, v); }},
      {"pid.depth_integral_limit", false,
       [](S& s, Text k, Text v) { s.pid.depth.integral_limit = to_number(k, v); }},
      {"pid.pitch_kp", false, [](S& s, Text k, Text v) { s.pid.pitch.kp = to_number(k, v); }},
      {"pid.pitch_ki", false, [](S& s, Text k, Text v) { s.pid.pitch.ki = to_number(k, v); }},
      {"pid.pitch_kd", false, [](S& s, Text k, Text v) { s.pid.pitch.kd = to_number(k, v); }},
      {"pid.pitch_integral_limit", false,
       [](S& s, Text k, Text v) { s.pid.pitch.integral_limit = to_number(k, v); }},
      {"pid.depth_setpoint", false,
       [](S& s, Text k, Text v) { s.pid.depth_setpoint = to_number(k, v); }},
      {"pid.pitch_setpoint", false,
       [](S& s, Text k, Text v) { s.pid.pitch_setpoint = to_number(k, v); }},
      {"pid.output_limit", false, [](S& s, Text k, Text v) { s.pid.output_limit = to_number(k, v); }},

      {"dc.intervals", false, [](S& s, Text k, Text v) { s.dc_intervals = to_int(k, v); }},
      {"dc.multistarts", false, [](S& s, Text k, Text v) { s.dc.multistarts = to_int(k, v); }},
      {"dc.speed_spread", false, [](S& s, Text k, Text v) { s.dc.speed_spread = to_number(k, v); }},
      {"dc.cruise_speed", false, [](S& s, Text k, Text v) { s.dc.cruise_speed = to_number(k, v); }},
      {"dc.tolerance", false, [](S& s, Text k, Text v) { s.dc.ipm.tolerance = to_number(k, v); }},
      {"dc.max_iterations", false,
       [](S& s, Text k, Text v) { s.dc.ipm.max_iterations = to_int(k, v); }},
  };
  return fields;
}

template <typename T>
const Field<T>* find_field(const std::vector<Field<T>>& fields, const std::string& key) {
  const auto it = std::find_if(fields.begin(), fields.end(), [&](const Field<T>& f) { return f.key == key; });
  return it == fields.end() ? nullptr : &*it;
}

constexpr const char* kRunPrefix = "run.";

bool is_run_key(const std::string& key) { return key.rfind(kRunPrefix, 0) == 0; }

// "run.<id>.<name>" -> {id, name}; ids may contain dots, names may not.
std::pair<std::string, std::string> split_run_key(const std::string& key) {
  const std::size_t dot = key.rfind('.');
  const std::size_t start = std::char_traits<char>::length(kRunPrefix);
  if (dot == std::string::npos || dot < start + 1 || dot + 1 == key.size()) {
    throw ConfigError(key, "run keys take the form run.<id>.<key>");
  }
  return {key.substr(start, dot - start), key.substr(dot + 1)};
}

std::set<std::string> run_ids(const Values& values) {
  std::set<std::string> ids;
  for (const auto& [key, value] : values) {
    if (is_run_key(key)) ids.insert(split_run_key(key).first);
  }
  return ids;
}

void check_known_keys(const Values& values) {
  const bool suite = is_suite(values);
  for (const auto& [key, value] : values) {
    if (is_run_key(key)) {
      const std::string name = split_run_key(key).second;
      if (!find_field(run_fields(), name)) throw ConfigError(key, "unknown key");
      continue;
    }
    if (key == "scenario.id") {
      if (suite) throw ConfigError(key, "not used in a suite file; runs are named by [run.<id>] sections");
      continue;
    }
    if (find_field(vehicle_fields(), key) || find_field(controller_fields(), key)) continue;
    if (key.rfind("scenario.", 0) == 0 && find_field(run_fields(), key.substr(9))) continue;
    throw ConfigError(key, "unknown key");
  }
}

void check_required(const Values& values) {
  for (const std::string& key : required_keys(values)) {
    if (!values.count(key)) throw ConfigError(key, "required key missing");
  }
}

void flatten(const boost::property_tree::ptree& tree, Values& out) {
  for (const auto& [section, node] : tree) {
    if (node.empty()) {
      out[section] = node.data();
      continue;
    }
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty()) throw ConfigError(section + "." + key, "nested sections are not supported");
      out[section + "." + key] = leaf.data();
    }
  }
}

}  // namespace

Override parse_override(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set", "expected key=value, got '" + text + "'");
  }
  Override o{text.substr(0, eq), text.substr(eq + 1)};
  if (o.key.find('.') == std::string::npos) {
    throw ConfigError(o.key, "override keys take the form section.key");
  }
  return o;
}

Values read_string(const std::string& text, const std::filesystem::path& base_dir) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("", "line " + std::to_string(e.line()) + ": " + e.message());
  }
  Values own;
  flatten(tree, own);
  Values out;
  if (const auto it = own.find("vehicle"); it != own.end()) {
    out = read_file(base_dir / it->second);
    own.erase(it);
  }
  for (auto& [key, value] : own) out[key] = std::move(value);
  return out;
}

Values read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return read_string(buffer.str(), path.parent_path());
  } catch (const ConfigError& e) {
    if (!e.key().empty()) throw;
    throw ConfigError("", path.string() + ": " + detail(e));
  }
}

void apply_overrides(Values& values, const std::vector<Override>& overrides) {
  for (const Override& o : overrides) values[o.key] = o.value;
}

std::vector<std::string> required_keys(const Values& values) {
  std::vector<std::string> keys;
  for (const auto& f : vehicle_fields()) {
    if (f.required) keys.push_back(f.key);
  }
  const auto model = values.find("power.model");
  if (model != values.end() && model->second == "polynomial") {
    keys.push_back("power.coefficients");
  } else {
    keys.push_back("power.kappa");
    keys.push_back("power.exponent");
  }
  const bool suite = is_suite(values);
  if (!suite) keys.push_back("scenario.id");
  for (const auto& f : run_fields()) {
    if (!f.required) continue;
    if (f.key == "controller" && suite) {
      // Per run unless [scenario] supplies a shared controller.
      if (values.count("scenario.controller")) continue;
      for (const std::string& id : run_ids(values)) keys.push_back("run." + id + ".controller");
      continue;
    }
    keys.push_back("scenario." + f.key);
  }
  return keys;
}

VehicleParams vehicle_params(const Values& values) {
  VehicleParams p;
  for (const auto& f : vehicle_fields()) {
    if (const auto it = values.find(f.key); it != values.end()) f.set(p, f.key, it->second);
  }
  return p;
}

bool is_suite(const Values& values) {
  return std::any_of(values.begin(), values.end(), [](const auto& kv) { return is_run_key(kv.first); });
}

std::vector<sim::Scenario> scenarios(const Values& values) {
  check_known_keys(values);
  check_required(values);

  sim::Scenario base;
  base.params = vehicle_params(values);
  for (const auto& f : run_fields()) {
    const std::string key = "scenario." + f.key;
    if (const auto it = values.find(key); it != values.end()) f.set(base, key, it->second);
  }
  for (const auto& f : controller_fields()) {
    if (const auto it = values.find(f.key); it != values.end()) f.set(base, f.key, it->second);
  }

  auto finish = [&](sim::Scenario& s) {
    // Controller samples follow the scenario's control period unless set.
    if (!values.count("empc.dt")) s.empc.dt = s.control_dt;
    if (!values.count("los.dt")) s.los.dt = s.control_dt;
    try {
      s.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), "scenario '" + s.id + "': " + detail(e));
    }
  };

  std::vector<sim::Scenario> out;
  if (!is_suite(values)) {
    base.id = values.at("scenario.id");
    finish(base);
    out.push_back(std::move(base));
    return out;
  }
  for (const std::string& id : run_ids(values)) {
    sim::Scenario s = base;
    s.id = id;
    const std::string prefix = kRunPrefix + id + ".";
    for (const auto& f : run_fields()) {
      const std::string key = prefix + f.key;
      if (const auto it = values.find(key); it != values.end()) f.set(s, key, it->second);
    }
    finish(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::filesystem::path resolve_path(const std::string& name) {
  const std::filesystem::path path(name);
  if (std::filesystem::exists(path)) return path;
  if (const char* dir = std::getenv(kConfigDirVariable); dir && *dir && path.is_relative()) {
    const std::filesystem::path candidate = std::filesystem::path(dir) / path;
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return path;
}

}  // namespace ecoauv::config
