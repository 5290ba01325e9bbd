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


#include "harness.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "liegroup/digest.hpp"
#include "liegroup/errors.hpp"
#include "liegroup/fourier.hpp"
#include "liegroup/galerkin.hpp"
#include "liegroup/symbol_calculus.hpp"

namespace liegroup::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw ConfigError(fmt::format("{}: {}", pointer, what));
}

int integer_at(const json& j, const std::string& p, int min) {
  if (!j.is_number_integer()) fail(p, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min || v > std::numeric_limits<int>::max()) fail(p, fmt::format("expected an integer >= {}", min));
  return static_cast<int>(v);
}

double number_at(const json& j, const std::string& p) {
  if (!j.is_number()) fail(p, "expected a number");
  return j.get<double>();
}

std::string string_at(const json& j, const std::string& p) {
  if (!j.is_string()) fail(p, "expected a string");
  return j.get<std::string>();
}

void check_keys(const json& j, const std::string& p, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(p + "/" + key, "unknown member");
  }
}

void dump_value(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? fmt::format("{:.16e}", v) : "null";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump_value(j[i], out, indent + 2);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "]";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        out += pad + json(key).dump() + ": ";
        dump_value(value, out, indent + 2);
        out += ++i < j.size() ? ",\n" : "\n";
      }
      out += close + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string csv_preamble(const ExperimentConfig& cfg) {
  return fmt::format("# config_sha256={} tool_version={}\n", cfg.hash, kToolVersion);
}

void write_output(const fs::path& root, const std::string& rel, const std::string& content, RunManifest& manifest) {
  const fs::path p = root / rel;
  fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", p.string()));
  f << content;
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", p.string()));
  manifest.outputs.emplace_back(rel, sha256_hex(content));
}

void write_manifest(const fs::path& root, const RunManifest& manifest) {
  const fs::path p = root / "manifest.json";
  std::ofstream f(p, std::ios::binary);
  f << deterministic_dump(manifest.to_json()) << '\n';
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", p.string()));
}

json stamp(const ExperimentConfig& cfg) { return {{"config_sha256", cfg.hash}, {"tool_version", kToolVersion}}; }

fs::path output_root(const ExperimentConfig& cfg, const std::optional<fs::path>& out) {
  const fs::path root = out.value_or(cfg.output_dir);
  fs::create_directories(root);
  return root;
}

}  // namespace

std::string deterministic_dump(const json& j) {
  std::string out;
  dump_value(j, out, 0);
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ConfigError(fmt::format("line {}, column {}: invalid JSON ({})", line, column, what));
  }
  if (!doc.is_object()) fail("/", "config must be a JSON object");
  check_keys(doc, "",
             {"group", "operator", "cutoffs", "gammas", "quadrature_level", "output_dir", "cache_dir", "rel_tol",
              "order_reduction", "check"});
  cfg.source = doc;
  cfg.hash = sha256_hex(doc.dump());

  if (!doc.contains("group")) fail("/group", "missing member");
  try {
    cfg.group = group_from_json(doc["group"]);
  } catch (const ConfigError& e) {
    fail("/group", e.what());
  }
  if (doc.contains("operator")) cfg.op = operator_from_json(cfg.group, doc["operator"], "/operator");

  if (doc.contains("cutoffs")) {
    const json& c = doc["cutoffs"];
    if (!c.is_array() || c.empty()) fail("/cutoffs", "expected a nonempty array of bands");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string p = fmt::format("/cutoffs/{}", i);
      const int b = integer_at(c[i], p, 0);
      if (!cfg.cutoffs.empty() && b <= cfg.cutoffs.back()) fail(p, "cutoffs must be strictly increasing");
      cfg.cutoffs.push_back(b);
    }
  }
  if (doc.contains("gammas")) {
    const json& g = doc["gammas"];
    if (!g.is_array() || g.empty()) fail("/gammas", "expected a nonempty array of positive numbers");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string p = fmt::format("/gammas/{}", i);
      const double v = number_at(g[i], p);
      if (!(v > 0.0) || !std::isfinite(v)) fail(p, "gamma must be positive and finite");
      cfg.gammas.push_back(v);
    }
  }
  if (doc.contains("quadrature_level")) cfg.quadrature_level = integer_at(doc["quadrature_level"], "/quadrature_level", 1);
  if (doc.contains("output_dir")) cfg.output_dir = string_at(doc["output_dir"], "/output_dir");
  if (doc.contains("cache_dir")) cfg.cache_dir = fs::path(string_at(doc["cache_dir"], "/cache_dir"));
  if (doc.contains("rel_tol")) {
    cfg.rel_tol = number_at(doc["rel_tol"], "/rel_tol");
    if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) fail("/rel_tol", "rel_tol must lie in (0, 1)");
  }
  if (doc.contains("order_reduction")) {
    if (!doc["order_reduction"].is_boolean()) fail("/order_reduction", "expected a boolean");
    cfg.order_reduction = doc["order_reduction"].get<bool>();
  }
  if (doc.contains("check")) {
    const json& c = doc["check"];
    if (!c.is_object()) fail("/check", "expected an object");
    check_keys(c, "/check", {"band", "order", "samples", "seed"});
    if (c.contains("band")) cfg.check.band = integer_at(c["band"], "/check/band", 0);
    if (c.contains("order")) cfg.check.order = number_at(c["order"], "/check/order");
    if (c.contains("samples")) cfg.check.samples = integer_at(c["samples"], "/check/samples", 1);
    if (c.contains("seed")) cfg.check.seed = static_cast<std::uint64_t>(integer_at(c["seed"], "/check/seed", 0));
  }
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(fmt::format("{}: cannot open config", path.string()));
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

json RunManifest::to_json() const {
  json stages = json::array();
  for (const auto& [name, s] : stage_seconds) stages.push_back({{"stage", name}, {"seconds", s}});
  json files = json::array();
  for (const auto& [path, hash] : outputs) files.push_back({{"path", path}, {"sha256", hash}});
  return {{"command", command},
          {"config_sha256", config_hash},
          {"tool_version", tool_version},
          {"stages", stages},
          {"cache", {{"hits", cache.hits}, {"misses", cache.misses}}},
          {"outputs", files}};
}

std::optional<fs::path> effective_cache_dir(const std::optional<fs::path>& configured) {
  if (const char* env = std::getenv(kCacheEnv); env && *env) return fs::path(env);
  return configured;
}

int cmd_index(const ExperimentConfig& cfg, const std::optional<fs::path>& out, std::ostream& log) {
  if (!cfg.op) fail("/operator", "the index command needs an operator");
  if (cfg.cutoffs.empty()) fail("/cutoffs", "the index command needs cutoffs");
  if (cfg.gammas.empty()) fail("/gammas", "the index command needs gammas");
  if (cfg.group.kind() == GroupKind::SU3) fail("/group", "operators on SU(3) are not supported");

  RunManifest manifest;
  manifest.command = "index";
  manifest.config_hash = cfg.hash;
  const fs::path root = output_root(cfg, out);

  SweepOptions opts;
  opts.rel_tol = cfg.rel_tol;
  opts.order_reduction = cfg.order_reduction;
  opts.assembly.level = cfg.quadrature_level;
  opts.assembly.cache_dir = effective_cache_dir(cfg.cache_dir);
  opts.assembly.stats = &manifest.cache;
  if (opts.assembly.cache_dir) fs::create_directories(*opts.assembly.cache_dir);

  Stopwatch sweep_clock;
  const IndexReport report = stabilization_sweep(*cfg.op, cfg.cutoffs, cfg.gammas, opts);
  manifest.stage_seconds.emplace_back("sweep", sweep_clock.seconds());

  json j = report.to_json();
  j["manifest"] = stamp(cfg);
  j["group"] = group_to_json(cfg.group);
  write_output(root, "report.json", deterministic_dump(j) + "\n", manifest);

  std::ostringstream rows, margins;
  report.write_csv(rows);
  report.write_margins_csv(margins);
  write_output(root, "tables/index.csv", csv_preamble(cfg) + rows.str(), manifest);
  write_output(root, "tables/margins.csv", csv_preamble(cfg) + margins.str(), manifest);

  Stopwatch density_clock;
  try {
    const Operator& a = *cfg.op;
    const int band = cfg.cutoffs.back();
    const int w = report.bandwidth;
    const auto grid = make_rule(cfg.group, resolving_level(cfg.group, 2 * (band + w)));
    const auto density = density_route_index(a.symbol(band), a.adjoint().symbol(band), cfg.gammas.front(), band,
                                             grid, report.order_reduced ? a.order() : 0.0);
    std::ostringstream csv;
    density.second.write_csv(csv);
    write_output(root, "tables/density.csv", csv_preamble(cfg) + csv.str(), manifest);
  } catch (const std::exception& e) {
    log << "density table skipped: " << e.what() << '\n';
  }
  manifest.stage_seconds.emplace_back("density_table", density_clock.seconds());
  write_manifest(root, manifest);

  log << fmt::format("operator: {}\n", report.description);
  log << fmt::format("{:>6} {:>10} {:>14} {:>6} {:>14}\n", "band", "gamma", "heat_trace", "count", "density");
  for (const auto& c : report.cells) {
    log << fmt::format("{:>6} {:>10.4g} {:>14.8f} {:>6} {:>14.8f}{}\n", c.band, c.gamma, c.heat_trace,
                       c.kernel_count, c.density_route, c.error.empty() ? "" : "  error: " + c.error);
  }
  log << fmt::format("verdict: {}{}{}\n", report.verdict(), report.marginal ? " (marginal)" : "",
                     report.density_discrepancy ? ", density route differs from kernel count" : "");
  return report.stable ? kExitOk : kExitUnstable;
}

namespace {

struct CheckRow {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

int default_band(const GroupSpec& g, int torus_band, int su2_band) {
  return g.is_torus() ? torus_band : su2_band;
}

std::vector<CheckRow> check_plancherel(const ExperimentConfig& cfg) {
  const GroupSpec& g = cfg.group;
  const int band = cfg.check.band.value_or(default_band(g, 4, 6));
  const auto rule = make_rule(g, cfg.quadrature_level.value_or(resolving_level(g, 2 * band)));
  const auto dual = enumerate_band(g, band);
  std::mt19937_64 gen(cfg.check.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double round_trip = 0.0, plancherel = 0.0;
  for (int s = 0; s < cfg.check.samples; ++s) {
    FourierCoefficients c(g, dual_cutoff(dual));
    for (const auto& xi : dual) {
      CMatrix b(xi.dim, xi.dim);
      for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = Complex(normal(gen), normal(gen));
      c.push(xi, b);
    }
    const SampledFunction f = fourier_inverse_on(c, rule);
    const FourierCoefficients back = fourier_forward(f, dual);
    for (std::size_t i = 0; i < c.size(); ++i) {
      round_trip = std::max(round_trip, (back.block(i) - c.block(i)).cwiseAbs().maxCoeff());
    }
    plancherel = std::max(plancherel, std::abs(plancherel_norm(c) - f.l2_norm()));
  }
  return {{"round_trip_max_error", round_trip, 1e-8, round_trip <= 1e-8, fmt::format("band {}", band)},
          {"plancherel_norm_difference", plancherel, 1e-8, plancherel <= 1e-8, fmt::format("level {}", rule->level())}};
}

std::vector<CheckRow> check_schur(const ExperimentConfig& cfg) {
  const GroupSpec& g = cfg.group;
  const int band = cfg.check.band.value_or(default_band(g, 4, 6));
  const PeterWeylBasis basis(g, band);
  const auto rule = make_rule(g, cfg.quadrature_level.value_or(resolving_level(g, 2 * band)));
  const CMatrix gram = gram_matrix(basis, *rule);
  const double err = (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  return {{"gram_identity_max_error", err, 1e-8, err <= 1e-8,
           fmt::format("{} basis functions, level {}", basis.size(), rule->level())}};
}

std::vector<CheckRow> check_ellipticity(const ExperimentConfig& cfg, json& extra, std::string& table) {
  if (!cfg.op) fail("/operator", "the ellipticity check needs an operator");
  const GroupSpec& g = cfg.group;
  const int band = cfg.check.band.value_or(default_band(g, 8, 6));
  const double m = cfg.check.order.value_or(cfg.op->order());
  if (!std::isfinite(m)) fail("/check/order", "a finite order is required for this operator");
  const auto grid = make_rule(g, cfg.quadrature_level.value_or(resolving_level(g, 2 * band)));
  const EllipticityReport r = ellipticity_check(cfg.op->symbol(band), m, band, grid);
  extra = r.to_json();
  std::ostringstream csv;
  r.write_csv(csv);
  table = csv.str();
  std::string detail;
  if (!r.non_invertible.empty()) {
    const EllipticSite& s = r.non_invertible.front();
    std::string chart;
    for (double v : s.chart) chart += fmt::format("{}{:.6g}", chart.empty() ? "" : ",", v);
    detail = fmt::format("first non-invertible site: node {} x=({}) label {}", s.node, chart, s.label.to_string());
  }
  return {{"non_invertible_sites", static_cast<double>(r.non_invertible.size()), 0.0, r.elliptic, detail},
          {"ellipticity_constant", r.constant, std::numeric_limits<double>::infinity(), r.elliptic,
           fmt::format("order {}", m)}};
}

std::vector<CheckRow> check_trace(const ExperimentConfig& cfg, json& extra) {
  if (!cfg.op) fail("/operator", "the trace check needs an operator");
  const GroupSpec& g = cfg.group;
  const Operator& a = *cfg.op;
  const int band = cfg.check.band.value_or(10);
  const int w = a.bandwidth();
  const auto grid = make_rule(g, cfg.quadrature_level.value_or(resolving_level(g, 2 * (band + w))));
  const MatrixSymbol sigma = a.symbol(band);
  const SymbolTrace t = trace_via_symbol(sigma, band, grid);
  const Complex galerkin = restrict_codomain(a.assemble(band, band + w), band).matrix.trace();
  const double scale = std::max(1.0, std::abs(galerkin));
  std::vector<CheckRow> rows;
  const double d = std::abs(t.value - galerkin);
  rows.push_back({"symbol_vs_matrix_trace", d, 1e-8 * scale, d <= 1e-8 * scale,
                  fmt::format("band {}, symbol trace {:.16e}", band, t.value.real())});
  if (sigma.is_invariant()) {
    Complex partial(0.0);
    for (const auto& xi : enumerate_band(g, band)) {
      partial += static_cast<double>(xi.dim) * sigma(identity(g), xi).trace();
    }
    const double dp = std::abs(t.value - partial);
    rows.push_back({"symbol_vs_partial_sum", dp, 1e-8 * scale, dp <= 1e-8 * scale, ""});
  }
  extra = {{"symbol_trace", {t.value.real(), t.value.imag()}},
           {"matrix_trace", {galerkin.real(), galerkin.imag()}},
           {"warning", t.warning ? json(*t.warning) : json(nullptr)}};
  return rows;
}

std::vector<CheckRow> check_quadrature(const ExperimentConfig& cfg) {
  const GroupSpec& g = cfg.group;
  const auto rule = make_rule(g, cfg.quadrature_level.value_or(6));
  double mass = 0.0;
  Complex first(0.0);
  double second = 0.0;
  for (std::size_t k = 0; k < rule->size(); ++k) {
    const double w = rule->weight(k);
    mass += w;
    const GroupPoint x = rule->point(k);
    const Complex v = g.is_torus() ? std::exp(kI * kTwoPi * x.coords()[0]) : x.matrix()(0, 0);
    first += w * v;
    second += w * std::norm(v);
  }
  const double expected_raw = g.kind() == GroupKind::SU2 ? 4.0 * kPi * kPi : 1.0;
  const double raw = std::abs(rule->raw_mass() - expected_raw) / expected_raw;
  const double expected_second = g.is_torus() ? 1.0 : 1.0 / g.matrix_size();
  const std::string level = fmt::format("level {}, {} nodes", rule->level(), rule->size());
  return {{"total_mass", std::abs(mass - 1.0), 1e-6, std::abs(mass - 1.0) <= 1e-6, level},
          {"raw_mass_relative_error", raw, 1e-6, raw <= 1e-6, fmt::format("raw mass {:.16e}", rule->raw_mass())},
          {"first_moment", std::abs(first), 1e-6, std::abs(first) <= 1e-6, "integral of a nontrivial entry"},
          {"second_moment", std::abs(second - expected_second), 1e-6, std::abs(second - expected_second) <= 1e-6,
           "integral of its squared modulus"}};
}

}  // namespace

int cmd_check(const ExperimentConfig& cfg, const std::string& which, const std::optional<fs::path>& out,
              std::ostream& log) {
  RunManifest manifest;
  manifest.command = "check " + which;
  manifest.config_hash = cfg.hash;
  const fs::path root = output_root(cfg, out);

  Stopwatch clock;
  std::vector<CheckRow> rows;
  json extra;
  std::string table;
  if (which == "plancherel") {
    rows = check_plancherel(cfg);
  } else if (which == "schur") {
    rows = check_schur(cfg);
  } else if (which == "ellipticity") {
    rows = check_ellipticity(cfg, extra, table);
  } else if (which == "trace") {
    rows = check_trace(cfg, extra);
  } else if (which == "quadrature") {
    rows = check_quadrature(cfg);
  } else {
    throw ConfigError(fmt::format("unknown check \"{}\" (expected plancherel, schur, ellipticity, trace, quadrature)",
                                  which));
  }
  manifest.stage_seconds.emplace_back(which, clock.seconds());

  bool pass = true;
  json jrows = json::array();
  std::string csv = csv_preamble(cfg) + "check,measured,tolerance,pass,detail\n";
  for (const auto& r : rows) {
    pass = pass && r.pass;
    jrows.push_back({{"check", r.name},
                     {"measured", r.measured},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass},
                     {"detail", r.detail}});
    csv += fmt::format("{},{:.16e},{:.16e},{},\"{}\"\n", r.name, r.measured, r.tolerance, r.pass ? "pass" : "fail",
                       r.detail);
    log << fmt::format("{:<28} {:>12.4e} {:>12.4e}  {}  {}\n", r.name, r.measured, r.tolerance,
                       r.pass ? "pass" : "FAIL", r.detail);
  }
  json report{{"check", which},
              {"group", group_to_json(cfg.group)},
              {"rows", jrows},
              {"pass", pass},
              {"manifest", stamp(cfg)}};
  if (!extra.is_null()) report["details"] = extra;
  write_output(root, fmt::format("check_{}.json", which), deterministic_dump(report) + "\n", manifest);
  write_output(root, fmt::format("tables/check_{}.csv", which), csv, manifest);
  if (!table.empty()) write_output(root, fmt::format("tables/{}_sites.csv", which), csv_preamble(cfg) + table, manifest);
  write_manifest(root, manifest);
  log << (pass ? "pass\n" : "fail\n");
  return pass ? kExitOk : kExitUnstable;
}

int cmd_cache(const fs::path& dir, const std::string& action, std::ostream& out) {
  if (!fs::is_directory(dir)) throw ConfigError(fmt::format("cache directory {} does not exist", dir.string()));
  if (action == "list") {
    out << "key,group,domain_band,codomain_band,quadrature_level,symbol\n";
    for (const auto& e : cache_list(dir)) {
      out << fmt::format("{},{},{},{},{},\"{}\"\n", e.key, e.header.value("group", json()).dump(),
                         e.header.value("domain_band", -1), e.header.value("codomain_band", -1),
                         e.header.value("quadrature_level", -1), e.header.value("symbol", std::string()));
    }
    return kExitOk;
  }
  if (action == "verify") {
    int corrupt = 0;
    for (const auto& e : cache_verify(dir)) {
      if (e.problem.empty()) {
        out << e.key << " ok\n";
      } else {
        ++corrupt;
        out << e.key << " CORRUPT: " << e.problem << '\n';
      }
    }
    out << fmt::format("{} corrupt entr{}\n", corrupt, corrupt == 1 ? "y" : "ies");
    return corrupt ? kExitUnstable : kExitOk;
  }
  if (action == "purge") {
    const int n = cache_purge(dir);
    out << fmt::format("removed {} entr{}\n", n, n == 1 ? "y" : "ies");
    return kExitOk;
  }
  throw ConfigError(fmt::format("unknown cache action \"{}\" (expected list, purge, verify)", action));
}

}  // namespace liegroup::harness
