// Copyright 2026 The liegroup-index Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Experiment configuration, orchestration and report export for the
// liegroup-index command line tool.

#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liegroup/index.hpp"
#include "liegroup/operators.hpp"

namespace liegroup::harness {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCacheEnv = "LIEGROUP_INDEX_CACHE";

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUnstable = 2 };

struct CheckParams {
  std::optional<int> band;
  std::optional<double> order;
  int samples = 3;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  nlohmann::json source;
  GroupSpec group = GroupSpec::torus(1);
  std::optional<Operator> op;
  std::vector<int> cutoffs;
  std::vector<double> gammas;
  std::optional<int> quadrature_level;
  std::filesystem::path output_dir = "out";
  std::optional<std::filesystem::path> cache_dir;
  double rel_tol = kDefaultRelTol;
  std::optional<bool> order_reduction;
  CheckParams check;
  /// SHA-256 of the canonical config document.
  std::string hash;
};

/// Syntax errors report line and column; semantic errors report the JSON
/// pointer of the offending value. Both throw ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Pretty JSON with sorted keys and floats as 17 significant digits in
/// lowercase scientific notation. Non-finite floats become null.
std::string deterministic_dump(const nlohmann::json& j);

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::string tool_version = kToolVersion;
  std::vector<std::pair<std::string, double>> stage_seconds;
  CacheStats cache;
  /// (relative path, sha256) of every output written before the manifest.
  std::vector<std::pair<std::string, std::string>> outputs;

  nlohmann::json to_json() const;
};

/// Cache directory: the environment variable wins over the config.
std::optional<std::filesystem::path> effective_cache_dir(const std::optional<std::filesystem::path>& configured);

int cmd_index(const ExperimentConfig& cfg, const std::optional<std::filesystem::path>& out, std::ostream& log);
int cmd_check(const ExperimentConfig& cfg, const std::string& which, const std::optional<std::filesystem::path>& out,
              std::ostream& log);
int cmd_cache(const std::filesystem::path& dir, const std::string& action, std::ostream& out);

}  // namespace liegroup::harness
