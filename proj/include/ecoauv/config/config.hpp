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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ecoauv/sim/scenario.hpp"
#include "ecoauv/vehicle/params.hpp"

namespace ecoauv::config {

/// Flat view of a config file: "section.key" -> raw text. Suite runs live in
/// sections named "run.<id>", so their keys read "run.<id>.<key>".
using Values = std::map<std::string, std::string>;

/// Name of the environment variable holding the default config directory.
inline constexpr const char* kConfigDirVariable = "ECOAUV_CONFIG_DIR";

struct Override {
  std::string key;
  std::string value;
};

/// Parses "section.key=value". Throws ConfigError on malformed text.
Override parse_override(const std::string& text);

/// Reads an INI file. A top-level "vehicle = <path>" line loads that file
/// first (relative to the including file); keys of the including file win.
/// Throws ConfigError on I/O or syntax errors.
Values read_file(const std::filesystem::path& path);

/// Parses INI text; "vehicle" includes are resolved against base_dir.
Values read_string(const std::string& text, const std::filesystem::path& base_dir = {});

/// Sets each override, in order. Keys are checked later, by the builders.
void apply_overrides(Values& values, const std::vector<Override>& overrides);

/// Keys whose removal makes the config invalid.
std::vector<std::string> required_keys(const Values& values);

/// Vehicle parameters from the geometry/mass/damping/thrusters/power keys.
VehicleParams vehicle_params(const Values& values);

/// True when the config defines [run.<id>] sections.
bool is_suite(const Values& values);

/// All scenarios of the config: one for a single-scenario file, one per run
/// section (in id order) for a suite. Unknown keys, missing required keys and
/// unparsable values throw ConfigError naming the key; every scenario is
/// validated.
std::vector<sim::Scenario> scenarios(const Values& values);

/// Resolves a --config argument: existing paths are used as given, bare
/// names are looked up in $ECOAUV_CONFIG_DIR.
std::filesystem::path resolve_path(const std::string& name);

}  // namespace ecoauv::config
