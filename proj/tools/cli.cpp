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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ecoauv/config/config.hpp"
#include "ecoauv/dc/ocp.hpp"
#include "ecoauv/error.hpp"
#include "ecoauv/sim/plot_data.hpp"
#include "ecoauv/sim/suite.hpp"
#include "ecoauv/vehicle/energy.hpp"

namespace ecoauv::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config = "default.ini";
  std::string out_dir = "ecoauv-out";
  std::vector<std::string> sets;
  int jobs = 0;
  bool force = false;
  bool verbose = false;
  bool no_timing = false;
  std::string scenario;  // run id within a suite file
  bool full = false;     // dc-solve: 6-DOF problem
  int intervals = 0;     // dc-solve: mesh override
};

// Raised for argument and output-path problems; exits like a config error.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Loaded {
  fs::path path;
  std::vector<config::Override> overrides;
  config::Values values;
  std::vector<sim::Scenario> scenarios;
};

Loaded load(const Options& o) {
  Loaded l;
  l.path = config::resolve_path(o.config);
#ifdef ECOAUV_BUILTIN_CONFIG_DIR
  // Last resort for bare names: the config directory of the source tree.
  if (!fs::exists(l.path) && l.path.is_relative() && fs::exists(fs::path(ECOAUV_BUILTIN_CONFIG_DIR) / l.path)) {
    l.path = fs::path(ECOAUV_BUILTIN_CONFIG_DIR) / l.path;
  }
#endif
  for (const std::string& s : o.sets) l.overrides.push_back(config::parse_override(s));
  l.values = config::read_file(l.path);
  config::apply_overrides(l.values, l.overrides);
  l.scenarios = config::scenarios(l.values);
  return l;
}

const sim::Scenario& pick(const Loaded& l, const std::string& id) {
  if (id.empty()) {
    if (l.scenarios.size() == 1) return l.scenarios.front();
    throw UsageError("the config defines " + std::to_string(l.scenarios.size()) +
                     " scenarios; choose one with --scenario");
  }
  for (const auto& s : l.scenarios) {
    if (s.id == id) return s;
  }
  throw ConfigError("--scenario", "unknown scenario id '" + id + "'");
}

// Collects output paths and refuses to clobber existing files unless forced.
class Outputs {
 public:
  Outputs(const Options& o) : dir_(o.out_dir), force_(o.force) {}

  fs::path add(const std::string& name) {
    paths_.push_back(dir_ / name);
    return paths_.back();
  }
  void add(const std::vector<fs::path>& paths) { paths_.insert(paths_.end(), paths.begin(), paths.end()); }

  const fs::path& dir() const { return dir_; }

  void prepare() const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw UsageError("cannot create output directory '" + dir_.string() + "'");
    }
    if (force_) return;
    for (const auto& p : paths_) {
      if (fs::exists(p)) throw UsageError("output file exists (use --force to overwrite): " + p.string());
    }
  }

 private:
  fs::path dir_;
  bool force_;
  std::vector<fs::path> paths_;
};

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  writer(out);
}

void provenance(std::ostream& out, const std::string& title, const Loaded& l) {
  out << "# " << title << "\n\n";
  out << "- config: `" << l.path.string() << "`\n";
  if (l.overrides.empty()) out << "- overrides: none\n";
  for (const auto& o : l.overrides) out << "- override: `" << o.key << "=" << o.value << "`\n";
  out << '\n';
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Trajectory, diagnostics and plot files of one run.
void run_files(const sim::Scenario& sc, Outputs& outputs) {
  outputs.add(sc.id + ".trajectory.csv");
  if (sc.controller == sim::ControllerKind::EoEmpc) outputs.add(sc.id + ".diagnostics.csv");
  outputs.add(sim::plot_paths(sc.id, outputs.dir()));
}

void write_run(const sim::ScenarioResult& r, const sim::Scenario& sc, const Options& o) {
  const fs::path dir(o.out_dir);
  write_file(dir / (r.id + ".trajectory.csv"), [&](std::ostream& f) { write_csv(r.trajectory, f); });
  if (r.controller == sim::ControllerKind::EoEmpc) {
    write_file(dir / (r.id + ".diagnostics.csv"),
               [&](std::ostream& f) { sim::write_diagnostics_csv(r.diagnostics, f, !o.no_timing); });
  }
  sim::emit_plot_data(r, sc, dir);
}

void print_result(std::ostream& out, const sim::ScenarioResult& r) {
  out << r.id << ": " << (r.failed ? "FAILED" : r.goal_reached ? "goal reached" : "goal missed")
      << ", travel time " << fixed(r.travel_time, 2) << " s, energy " << fixed(r.energy, 3) << " J, compute "
      << fixed(r.compute_time, 3) << " s";
  if (!r.goal_reached && !r.message.empty()) out << " (" << r.message << ")";
  out << '\n';
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const sim::Scenario& sc = pick(l, o.scenario);
  Outputs outputs(o);
  run_files(sc, outputs);
  const fs::path summary = outputs.add(sc.id + ".summary.md");
  outputs.prepare();

  const sim::ScenarioResult r = sim::run(sc);
  write_run(r, sc, o);
  const std::vector<sim::SuiteRow> rows = sim::comparison_rows({r});
  write_file(summary, [&](std::ostream& f) {
    provenance(f, "Scenario " + sc.id, l);
    sim::write_summary_markdown(rows, f);
    sim::write_breakdown_markdown({r}, f);
  });
  print_result(out, r);
  if (o.verbose) sim::write_breakdown_markdown({r}, out);
  return r.failed ? kExitFailure : kExitOk;
}

int cmd_suite(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  Outputs outputs(o);
  for (const auto& sc : l.scenarios) run_files(sc, outputs);
  const fs::path csv = outputs.add("summary.csv");
  const fs::path md = outputs.add("summary.md");
  outputs.prepare();

  const sim::SuiteReport report = sim::run_suite(l.scenarios, o.jobs);
  for (const auto& r : report.results) {
    const auto it = std::find_if(l.scenarios.begin(), l.scenarios.end(),
                                 [&](const sim::Scenario& s) { return s.id == r.id; });
    write_run(r, *it, o);
  }
  write_file(csv, [&](std::ostream& f) { sim::write_summary_csv(report.rows, f, !o.no_timing); });
  std::ostringstream table;
  sim::write_summary_markdown(report.rows, table);
  write_file(md, [&](std::ostream& f) {
    provenance(f, "Suite summary", l);
    f << table.str() << "### Energy breakdown\n\n";
    sim::write_breakdown_markdown(report.results, f);
  });
  out << table.str();
  if (o.verbose) sim::write_breakdown_markdown(report.results, out);
  const bool failed = std::any_of(report.results.begin(), report.results.end(),
                                  [](const sim::ScenarioResult& r) { return r.failed; });
  return failed ? kExitFailure : kExitOk;
}

int cmd_dc_solve(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const sim::Scenario& sc = pick(l, o.scenario);
  const std::string stem = sc.id + (o.full ? ".dc-full" : ".dc");
  Outputs outputs(o);
  const fs::path csv = outputs.add(stem + ".csv");
  const fs::path md = outputs.add(stem + ".md");
  outputs.prepare();

  dc::OcpSpec spec;
  spec.initial.nu[0] = sc.initial_surge();
  spec.initial.eta << sc.x0, sc.y0, 0.0, 0.0, 0.0, sc.psi0;
  spec.goal_x = sc.goal.x;
  spec.goal_y = sc.goal.y;
  spec.goal_radius = sc.arrival_radius;
  spec.thrust_max = sc.params.thrust_max;
  // The 6-DOF transcription is meant for coarse validation meshes.
  spec.intervals = o.intervals > 0 ? o.intervals : o.full ? std::min(sc.dc_intervals, 40) : sc.dc_intervals;
  spec.validate();
  const dc::DcResult r = o.full ? dc::solve_full(sc.params, spec, sc.dc) : dc::solve_horizontal(sc.params, spec, sc.dc);

  write_file(csv, [&](std::ostream& f) { write_csv(r.trajectory, f); });
  std::ostringstream report;
  report << "| Problem | Intervals | Status | Iterations | Travel time (s) | Energy (J) | Solve time (s) |\n"
         << "|---|---:|---|---:|---:|---:|---:|\n"
         << "| " << (o.full ? "6-DOF" : "horizontal") << " | " << spec.intervals << " | "
         << optim::to_string(r.solution.status) << " | " << r.solution.iterations << " | "
         << fixed(r.final_time, 2) << " | " << fixed(r.energy, 3) << " | " << fixed(r.total_solve_time, 3)
         << " |\n\n";
  if (o.full) {
    const auto s = sim::axis_energy(sc.params, r.trajectory).shares();
    report << "| Surge (%) | Heave (%) | Yaw (%) | Pitch (%) |\n|---:|---:|---:|---:|\n| " << fixed(s[0], 2)
           << " | " << fixed(s[1], 2) << " | " << fixed(s[2], 2) << " | " << fixed(s[3], 2) << " |\n";
  }
  write_file(md, [&](std::ostream& f) {
    provenance(f, "DC solution for " + sc.id, l);
    f << report.str();
  });
  out << report.str();
  return r.solution.converged ? kExitOk : kExitFailure;
}

int cmd_cruise_speed(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  const VehicleParams& p = l.scenarios.front().params;
  const double u = optimal_cruise_speed(p);
  out << "optimal cruise speed u* = " << fixed(u, 4) << " m/s\n"
      << "buoyancy-holding power  = " << fixed(buoyancy_holding_power(p), 4) << " W\n"
      << "energy per metre at u*  = " << fixed(cruise_energy_per_distance(p, u), 4) << " J/m\n";
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Loaded l = load(o);
  out << "ok: " << l.path.string() << " defines " << l.scenarios.size() << " scenario(s)\n";
  if (o.verbose) {
    for (const auto& s : l.scenarios) out << "  " << s.id << " (" << sim::to_string(s.controller) << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Energy-optimal AUV transit: direct collocation, EO-EMPC and baselines"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config,
                 std::string("Config file; bare names are also looked up in $") + config::kConfigDirVariable)
      ->capture_default_str();
  app.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  app.add_option("--set", o.sets, "Override a config key, e.g. --set empc.td_max=8 (repeatable)");
  app.add_option("--jobs", o.jobs, "Parallel scenarios (0: one per core, capped at the scenario count)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--force", o.force, "Overwrite existing output files");
  app.add_flag("--verbose", o.verbose, "Print per-run breakdowns");
  app.add_flag("--no-timing", o.no_timing, "Omit wall-clock columns so CSV outputs are reproducible");

  CLI::App* simulate = app.add_subcommand("simulate", "Run one closed-loop scenario");
  simulate->add_option("--scenario", o.scenario, "Run id within a suite file");
  CLI::App* dc_solve = app.add_subcommand("dc-solve", "Solve the direct-collocation problem from the scenario start");
  dc_solve->add_option("--scenario", o.scenario, "Run id within a suite file");
  dc_solve->add_flag("--full", o.full, "Solve the 6-DOF problem (default mesh: at most 40 intervals)");
  dc_solve->add_option("--intervals", o.intervals, "Mesh intervals (default: dc.intervals)")->check(CLI::PositiveNumber);
  CLI::App* suite = app.add_subcommand("suite", "Run every scenario of a suite file and tabulate");
  CLI::App* cruise = app.add_subcommand("cruise-speed", "Print the optimal cruise speed of the configured vehicle");
  CLI::App* validate = app.add_subcommand("validate-config", "Load and validate a config");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (dc_solve->parsed()) return cmd_dc_solve(o, out);
    if (suite->parsed()) return cmd_suite(o, out);
    if (cruise->parsed()) return cmd_cruise_speed(o, out);
    if (validate->parsed()) return cmd_validate(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitConfigError;
}

}  // namespace ecoauv::cli
