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


#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "harness.hpp"
#include "liegroup/errors.hpp"

using namespace liegroup;
using namespace liegroup::harness;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("liegroup_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

constexpr const char* kWinding = R"({
  "group": {"kind": "torus", "n": 1},
  "operator": {"type": "winding", "k": 1},
  "cutoffs": [4, 8],
  "gammas": [0.5, 2.0]
})";

}  // namespace

TEST_CASE("config validation") {
  const ExperimentConfig cfg = parse_config(kWinding);
  CHECK(cfg.cutoffs == std::vector<int>{4, 8});
  CHECK(cfg.hash.size() == 64);
  CHECK(cfg.op->description() == "winding(k=1)");
  // Key order and whitespace do not change the hash.
  CHECK(parse_config(R"({"gammas": [0.5, 2.0], "cutoffs": [4, 8], "operator": {"k": 1, "type": "winding"},
                         "group": {"n": 1, "kind": "torus"}})")
            .hash == cfg.hash);

  CHECK(config_error("{\n  \"group\": {\"kind\": \"torus\", \"n\": 1},\n  \"gammas\": [1,]\n}").rfind("line 3, column 16:", 0) ==
        0);
  CHECK(config_error(R"({"group": {"kind": "su5"}})").rfind("/group: unknown group kind", 0) == 0);
  CHECK(config_error(R"({"group": {"kind": "su2"}, "gammas": [1, -2]})") == "/gammas/1: gamma must be positive and finite");
  CHECK(config_error(R"({"group": {"kind": "su2"}, "cutoffs": [3, 3]})") == "/cutoffs/1: cutoffs must be strictly increasing");
  CHECK(config_error(R"({"group": {"kind": "su2"}, "rel_tol": 2})") == "/rel_tol: rel_tol must lie in (0, 1)");
  CHECK(config_error(R"({"group": {"kind": "su2"}, "colour": 2})") == "/colour: unknown member");
  CHECK(config_error(R"({"group": {"kind": "su2"}, "check": {"band": -1}})") == "/check/band: expected an integer >= 0");
  CHECK(config_error(R"({"group": {"kind": "su2"}, "operator": {"type": "product", "factors": [{"type": "x"}]}})") ==
        "/operator/factors/0/type: unknown operator type \"x\"");
  CHECK(config_error(R"({"operator": {"type": "identity"}})") == "/group: missing member");
}

TEST_CASE("deterministic JSON") {
  const nlohmann::json j = {{"b", 0.1}, {"a", {1, 2.5, "x"}}, {"c", nullptr}, {"d", std::nan("")}, {"e", {}}};
  CHECK(deterministic_dump(j) ==
        "{\n  \"a\": [\n    1,\n    2.5000000000000000e+00,\n    \"x\"\n  ],\n  \"b\": 1.0000000000000001e-01,\n"
        "  \"c\": null,\n  \"d\": null,\n  \"e\": null\n}");
}

TEST_CASE("index command") {
  const fs::path out = fresh_dir("index");
  std::ostringstream log;
  const ExperimentConfig cfg = parse_config(kWinding);
  CHECK(cmd_index(cfg, out / "a", log) == kExitOk);
  CHECK(cmd_index(cfg, out / "b", log) == kExitOk);
  for (const char* f : {"report.json", "manifest.json", "tables/index.csv", "tables/margins.csv", "tables/density.csv"}) {
    CHECK(fs::exists(out / "a" / f));
  }
  CHECK(read(out / "a" / "report.json") == read(out / "b" / "report.json"));
  CHECK(read(out / "a" / "tables/index.csv") == read(out / "b" / "tables/index.csv"));

  const auto report = nlohmann::json::parse(read(out / "a" / "report.json"));
  CHECK(report["verdict"] == "stable");
  CHECK(report["density_discrepancy"] == true);
  CHECK(report["manifest"]["config_sha256"] == cfg.hash);
  for (const auto& row : report["rows"]) CHECK(row["kernel_count"] == -1);
  const auto manifest = nlohmann::json::parse(read(out / "a" / "manifest.json"));
  CHECK(manifest["config_sha256"] == cfg.hash);
  CHECK(manifest["outputs"].size() == 4);
  CHECK(read(out / "a" / "tables/index.csv").rfind("# config_sha256=" + cfg.hash, 0) == 0);

  // Missing operator is a configuration error.
  CHECK_THROWS_AS(cmd_index(parse_config(R"({"group": {"kind": "torus", "n": 1}, "cutoffs": [2], "gammas": [1]})"),
                            out / "c", log),
                  ConfigError);
  CHECK_THROWS_AS(cmd_index(parse_config(R"({"group": {"kind": "su3"}, "operator": {"type": "identity"},
                                             "cutoffs": [2], "gammas": [1]})"),
                            out / "c", log),
                  ConfigError);
}

TEST_CASE("check command") {
  const fs::path out = fresh_dir("check");
  std::ostringstream log;
  CHECK(cmd_check(parse_config(R"({"group": {"kind": "torus", "n": 2}, "check": {"band": 4}})"), "plancherel", out,
                  log) == kExitOk);
  CHECK(cmd_check(parse_config(R"({"group": {"kind": "su2"}})"), "schur", out, log) == kExitOk);
  CHECK(cmd_check(parse_config(R"({"group": {"kind": "su2"}, "quadrature_level": 5})"), "quadrature", out, log) ==
        kExitOk);
  CHECK(cmd_check(parse_config(R"({"group": {"kind": "torus", "n": 1},
      "operator": {"type": "multiplier", "formula": "weight_power", "s": -3}, "check": {"band": 10}})"),
                  "trace", out, log) == kExitOk);
  const ExperimentConfig sin = parse_config(R"({"group": {"kind": "torus", "n": 1},
      "operator": {"type": "multiply", "terms": [{"label": [1], "value": [0, -0.5]}, {"label": [-1], "value": [0, 0.5]}]}})");
  CHECK(cmd_check(sin, "ellipticity", out, log) == kExitUnstable);
  const auto report = nlohmann::json::parse(read(out / "check_ellipticity.json"));
  CHECK(report["pass"] == false);
  CHECK(report["rows"][0]["detail"].get<std::string>().find("node 0 x=(0)") != std::string::npos);
  CHECK(fs::exists(out / "tables/ellipticity_sites.csv"));
  CHECK_THROWS_AS(cmd_check(sin, "nonsense", out, log), ConfigError);
}

TEST_CASE("cache command") {
  const fs::path dir = fresh_dir("cache");
  std::ostringstream list;
  CHECK(cmd_cache(dir, "list", list) == kExitOk);
  CHECK(list.str() == "key,group,domain_band,codomain_band,quadrature_level,symbol\n");

  ExperimentConfig cfg = parse_config(kWinding);
  cfg.cache_dir = dir;
  std::ostringstream log;
  CHECK(cmd_index(cfg, dir.parent_path() / "liegroup_harness_cache_out", log) == kExitOk);
  std::ostringstream verify;
  CHECK(cmd_cache(dir, "verify", verify) == kExitOk);

  fs::path bin;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".bin") bin = e.path();
  }
  REQUIRE_FALSE(bin.empty());
  {
    std::fstream f(bin, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(3);
    f.put('\x7f');
  }
  std::ostringstream corrupt;
  CHECK(cmd_cache(dir, "verify", corrupt) == kExitUnstable);
  CHECK(corrupt.str().find("CORRUPT") != std::string::npos);

  std::ostringstream purge, after;
  CHECK(cmd_cache(dir, "purge", purge) == kExitOk);
  CHECK(cmd_cache(dir, "list", after) == kExitOk);
  CHECK(after.str() == list.str());
  CHECK_THROWS_AS(cmd_cache(dir / "missing", "list", after), ConfigError);
}
