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


#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "harness.hpp"
#include "liegroup/errors.hpp"

namespace fs = std::filesystem;
using namespace liegroup::harness;

int main(int argc, char** argv) {
  CLI::App app{"Fredholm index experiments on compact Lie groups", "liegroup-index"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* index = app.add_subcommand("index", "Run a stabilization sweep and write report.json, tables/ and manifest.json");
  index->add_option("--config", config_path, "Experiment config (JSON)")->required();
  index->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  std::string which;
  auto* check = app.add_subcommand("check", "Run one invariant suite");
  check->add_option("--config", config_path, "Experiment config (JSON)")->required();
  check->add_option("--which", which, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"plancherel", "schur", "ellipticity", "trace", "quadrature"}));
  check->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  std::string cache_dir;
  std::string action;
  auto* cache = app.add_subcommand("cache", "Inspect the Galerkin matrix cache");
  cache->add_option("--dir", cache_dir, std::string("Cache directory (default: $") + kCacheEnv + ")");
  cache->add_option("--action", action, "Action")->required()->check(CLI::IsMember({"list", "purge", "verify"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  const std::optional<fs::path> out = out_dir.empty() ? std::nullopt : std::optional<fs::path>(out_dir);
  try {
    if (*index) return cmd_index(load_config(config_path), out, std::cout);
    if (*check) return cmd_check(load_config(config_path), which, out, std::cout);
    if (*cache) {
      std::optional<fs::path> dir;
      if (!cache_dir.empty()) {
        dir = cache_dir;
      } else {
        dir = effective_cache_dir(std::nullopt);
      }
      if (!dir) {
        std::cerr << "error: cache needs --dir or " << kCacheEnv << '\n';
        return kExitError;
      }
      return cmd_cache(*dir, action, std::cout);
    }
  } catch (const liegroup::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
