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

#include "liegroup/galerkin.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "liegroup/digest.hpp"
#include "liegroup/errors.hpp"
#include "liegroup/parallel.hpp"

namespace liegroup {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kSlices = 16;
constexpr int kCacheFormat = 1;

std::vector<CMatrix> reps_at(const std::vector<IrrepLabel>& labels, const GroupPoint& x) {
  std::vector<CMatrix> out;
  out.reserve(labels.size());
  for (const auto& xi : labels) out.push_back(rep_matrix(xi, x));
  return out;
}

}  // namespace

PeterWeylBasis::PeterWeylBasis(const GroupSpec& group, int band)
    : group_(group), band_(band), labels_(enumerate_band(group, band)) {
  for (const auto& xi : labels_) {
    offsets_.push_back(entries_.size());
    for (int i = 0; i < xi.dim; ++i) {
      for (int j = 0; j < xi.dim; ++j) entries_.push_back({xi, i, j});
    }
  }
}

std::size_t PeterWeylBasis::index_of(const IrrepLabel& xi, int row, int col) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == xi) {
      if (row < 0 || col < 0 || row >= xi.dim || col >= xi.dim) return entries_.size();
      return offsets_[i] + static_cast<std::size_t>(row * xi.dim + col);
    }
  }
  return entries_.size();
}

CVector PeterWeylBasis::evaluate(const GroupPoint& x) const {
  CVector v(static_cast<Eigen::Index>(entries_.size()));
  const auto reps = reps_at(labels_, x);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int d = labels_[i].dim;
    const double s = std::sqrt(static_cast<double>(d));
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) v(static_cast<Eigen::Index>(offsets_[i] + r * d + c)) = s * reps[i](r, c);
    }
  }
  return v;
}

CVector PeterWeylBasis::coordinates(const FourierCoefficients& f) const {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const CMatrix* block = f.find(labels_[i]);
    if (!block) continue;
    const int d = labels_[i].dim;
    const double s = std::sqrt(static_cast<double>(d));
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) v(static_cast<Eigen::Index>(offsets_[i] + r * d + c)) = s * (*block)(c, r);
    }
  }
  return v;
}

FourierCoefficients PeterWeylBasis::to_coefficients(const CVector& v) const {
  if (v.size() != static_cast<Eigen::Index>(entries_.size())) {
    throw MismatchError("coordinate vector length differs from basis size");
  }
  FourierCoefficients f(group_, cutoff());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int d = labels_[i].dim;
    const double s = std::sqrt(static_cast<double>(d));
    CMatrix b(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) b(c, r) = v(static_cast<Eigen::Index>(offsets_[i] + r * d + c)) / s;
    }
    f.push(labels_[i], std::move(b));
  }
  return f;
}

nlohmann::json PeterWeylBasis::ordering_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : entries_) j.push_back({e.label.label, e.row, e.col});
  return j;
}

CMatrix gram_matrix(const PeterWeylBasis& basis, const QuadratureRule& rule) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  std::vector<CMatrix> partial(kSlices, CMatrix::Zero(n, n));
  for_each_slice(rule.size(), kSlices, [&](std::size_t s, std::size_t b, std::size_t e) {
    CMatrix vals(n, static_cast<Eigen::Index>(e - b));
    for (std::size_t k = b; k < e; ++k) {
      vals.col(static_cast<Eigen::Index>(k - b)) = std::sqrt(rule.weight(k)) * basis.evaluate(rule.point(k));
    }
    partial[s].noalias() = vals.conjugate() * vals.transpose();
  });
  CMatrix g = CMatrix::Zero(n, n);
  for (const auto& p : partial) g += p;
  return g;
}

int assembly_level(const GroupSpec& group, int dom_band, int cod_band, int x_bandwidth) {
  return resolving_level(group, dom_band + x_bandwidth + cod_band);
}

GalerkinOperator assemble(const MatrixSymbol& sigma, int dom_band, int cod_band, std::optional<int> level) {
  const GroupSpec g = sigma.group();
  const int w = sigma.x_bandwidth();
  if (cod_band < dom_band + w) {
    throw BandError(fmt::format("assembling {} from band {} needs codomain band >= {}, got {}",
                                sigma.fingerprint(), dom_band, dom_band + w, cod_band),
                    dom_band + w);
  }
  PeterWeylBasis dom(g, dom_band), cod(g, cod_band);
  const int lvl = level.value_or(assembly_level(g, dom_band, cod_band, w));
  const RulePtr rule = make_rule(g, lvl);
  const Eigen::Index nd = static_cast<Eigen::Index>(dom.size());
  const Eigen::Index nc = static_cast<Eigen::Index>(cod.size());
  const std::size_t slices = std::min<std::size_t>(kSlices, rule->size());
  std::vector<CMatrix> partial(slices);
  for_each_slice(rule->size(), slices, [&](std::size_t s, std::size_t b, std::size_t e) {
    const Eigen::Index len = static_cast<Eigen::Index>(e - b);
    CMatrix u(nc, len), v(nd, len);
    for (std::size_t k = b; k < e; ++k) {
      const Eigen::Index col = static_cast<Eigen::Index>(k - b);
      const GroupPoint x = rule->point(k);
      u.col(col) = rule->weight(k) * cod.evaluate(x).conjugate();
      const auto reps = reps_at(dom.labels(), x);
      for (std::size_t i = 0; i < dom.labels().size(); ++i) {
        const IrrepLabel& xi = dom.labels()[i];
        const int d = xi.dim;
        const CMatrix p = std::sqrt(static_cast<double>(d)) * (reps[i] * sigma(x, xi));
        for (int r = 0; r < d; ++r) {
          for (int c = 0; c < d; ++c) v(static_cast<Eigen::Index>(dom.offset(i) + r * d + c), col) = p(r, c);
        }
      }
    }
    partial[s].noalias() = u * v.transpose();
  });
  CMatrix m = CMatrix::Zero(nc, nd);
  for (const auto& p : partial) m += p;
  return GalerkinOperator{std::move(dom), std::move(cod), std::move(m), lvl, sigma.fingerprint(), std::nullopt};
}

CVector galerkin_diagonal(const MatrixSymbol& sigma, int band, std::optional<int> level) {
  const GroupSpec g = sigma.group();
  const PeterWeylBasis basis(g, band);
  const int lvl = level.value_or(assembly_level(g, band, band, sigma.x_bandwidth()));
  const RulePtr rule = make_rule(g, lvl);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  const std::size_t slices = std::min<std::size_t>(kSlices, rule->size());
  std::vector<CVector> partial(slices, CVector::Zero(n));
  for_each_slice(rule->size(), slices, [&](std::size_t s, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const GroupPoint x = rule->point(k);
      const double w = rule->weight(k);
      const auto reps = reps_at(basis.labels(), x);
      for (std::size_t i = 0; i < basis.labels().size(); ++i) {
        const IrrepLabel& xi = basis.labels()[i];
        const int d = xi.dim;
        // <A b, b> with b = sqrt(d) xi_rc and A b = sqrt(d) (xi sigma)_rc.
        const CMatrix p = static_cast<double>(d) * (reps[i] * sigma(x, xi));
        for (int r = 0; r < d; ++r) {
          for (int c = 0; c < d; ++c) {
            partial[s](static_cast<Eigen::Index>(basis.offset(i) + r * d + c)) += w * p(r, c) * std::conj(reps[i](r, c));
          }
        }
      }
    }
  });
  CVector out = CVector::Zero(n);
  for (const auto& p : partial) out += p;
  return out;
}

GalerkinOperator adjoint(const GalerkinOperator& g) {
  if (g.frame) throw UnsupportedError("adjoint of a framed operator");
  return GalerkinOperator{g.codomain, g.domain, g.matrix.adjoint(), g.level,
                          fmt::format("adjoint({})", g.fingerprint), std::nullopt};
}

GalerkinOperator compose(const GalerkinOperator& g1, const GalerkinOperator& g2) {
  if (g1.frame || g2.frame) throw UnsupportedError("composition of framed operators");
  if (!(g2.codomain == g1.domain)) {
    throw MismatchError(fmt::format("compose: inner codomain band {} differs from outer domain band {}",
                                    g2.codomain.band(), g1.domain.band()));
  }
  return GalerkinOperator{g2.domain, g1.codomain, g1.matrix * g2.matrix, std::max(g1.level, g2.level),
                          fmt::format("compose({},{})", g1.fingerprint, g2.fingerprint), std::nullopt};
}

GalerkinOperator galerkin_sum(const GalerkinOperator& a, const GalerkinOperator& b) {
  if (a.frame || b.frame) throw UnsupportedError("sum of framed operators");
  if (!(a.domain == b.domain) || !(a.codomain == b.codomain)) {
    throw MismatchError("sum of Galerkin operators on different bases");
  }
  return GalerkinOperator{a.domain, a.codomain, a.matrix + b.matrix, std::max(a.level, b.level),
                          fmt::format("sum({},{})", a.fingerprint, b.fingerprint), std::nullopt};
}

GalerkinOperator galerkin_scale(const GalerkinOperator& a, Complex factor) {
  GalerkinOperator out = a;
  out.matrix *= factor;
  out.fingerprint = fmt::format("scale(({:.17g},{:.17g}),{})", factor.real(), factor.imag(), a.fingerprint);
  return out;
}

namespace {

std::vector<Eigen::Index> positions_up_to(const PeterWeylBasis& big, const PeterWeylBasis& small) {
  std::vector<Eigen::Index> pos;
  for (const auto& e : small.entries()) {
    const std::size_t i = big.index_of(e.label, e.row, e.col);
    if (i == big.size()) throw BandError("restriction to a band above the basis band", small.band());
    pos.push_back(static_cast<Eigen::Index>(i));
  }
  return pos;
}

}  // namespace

GalerkinOperator restrict_domain(const GalerkinOperator& g, int band) {
  PeterWeylBasis dom(g.domain.group(), band);
  const auto pos = positions_up_to(g.domain, dom);
  CMatrix m(g.matrix.rows(), static_cast<Eigen::Index>(pos.size()));
  for (std::size_t c = 0; c < pos.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = g.matrix.col(pos[c]);
  return GalerkinOperator{std::move(dom), g.codomain, std::move(m), g.level, g.fingerprint, g.frame};
}

GalerkinOperator restrict_codomain(const GalerkinOperator& g, int band) {
  if (g.frame) throw UnsupportedError("codomain restriction of a framed operator");
  PeterWeylBasis cod(g.codomain.group(), band);
  const auto pos = positions_up_to(g.codomain, cod);
  CMatrix m(static_cast<Eigen::Index>(pos.size()), g.matrix.cols());
  for (std::size_t r = 0; r < pos.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = g.matrix.row(pos[r]);
  return GalerkinOperator{g.domain, std::move(cod), std::move(m), g.level, g.fingerprint, std::nullopt};
}

MatrixSymbol frozen_symbol_product(const MatrixSymbol& a, const MatrixSymbol& b) {
  if (!(a.group() == b.group())) {
    throw MismatchError(fmt::format("frozen product of symbols on {} and {}", a.group().name(),
                                    b.group().name()));
  }
  return MatrixSymbol(
      a.group(), a.order() + b.order(), a.x_bandwidth() + b.x_bandwidth(),
      a.is_invariant() && b.is_invariant(),
      [a, b](const GroupPoint& x, const IrrepLabel& xi) {
        const CMatrix l = a(x, xi), r = b(x, xi);
        if (l.cols() != r.rows()) throw MismatchError("frozen product shape mismatch");
        return CMatrix(l * r);
      },
      fmt::format("frozen_product({},{})", a.fingerprint(), b.fingerprint()));
}

namespace {

nlohmann::json make_identity(const GroupSpec& g, int dom, int cod, const std::string& fingerprint, int level,
                             Eigen::Index rows, Eigen::Index cols) {
  PeterWeylBasis d(g, dom), c(g, cod);
  return {{"format", kCacheFormat},
          {"group", group_to_json(g)},
          {"domain_band", dom},
          {"codomain_band", cod},
          {"domain_ordering", d.ordering_json()},
          {"codomain_ordering", c.ordering_json()},
          {"symbol", fingerprint},
          {"quadrature_level", level},
          {"rows", rows},
          {"cols", cols}};
}

std::vector<char> payload_bytes(const CMatrix& m) {
  std::vector<char> bytes(static_cast<std::size_t>(m.size()) * 2 * sizeof(double));
  const double* src = reinterpret_cast<const double*>(m.data());
  for (std::size_t i = 0; i < static_cast<std::size_t>(m.size()) * 2; ++i) {
    std::uint64_t u;
    std::memcpy(&u, src + i, sizeof u);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + static_cast<std::size_t>(b)] = static_cast<char>((u >> (8 * b)) & 0xff);
  }
  return bytes;
}

CMatrix matrix_from_bytes(const std::vector<char>& bytes, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  double* dst = reinterpret_cast<double*>(m.data());
  for (std::size_t i = 0; i < static_cast<std::size_t>(m.size()) * 2; ++i) {
    std::uint64_t u = 0;
    for (int b = 0; b < 8; ++b) {
      u |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + static_cast<std::size_t>(b)])) << (8 * b);
    }
    std::memcpy(dst + i, &u, sizeof u);
  }
  return m;
}

std::vector<char> read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  return std::vector<char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_atomic(const fs::path& target, const char* data, std::size_t size) {
  static thread_local std::mt19937_64 gen(std::random_device{}());
  const fs::path tmp = target.string() + fmt::format(".tmp{:016x}", gen());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
    out.write(data, static_cast<std::streamsize>(size));
    if (!out) throw std::runtime_error(fmt::format("short write to {}", tmp.string()));
  }
  fs::rename(tmp, target);
}

}  // namespace

nlohmann::json identity_header(const GalerkinOperator& g) {
  return make_identity(g.domain.group(), g.domain.band(), g.codomain.band(), g.fingerprint, g.level,
                       g.matrix.rows(), g.matrix.cols());
}

std::string cache_key(const nlohmann::json& identity) { return sha256_hex(identity.dump()); }

void save_cached(const fs::path& dir, const GalerkinOperator& g) {
  if (g.frame) return;
  fs::create_directories(dir);
  const nlohmann::json id = identity_header(g);
  const std::string key = cache_key(id);
  const auto bytes = payload_bytes(g.matrix);
  nlohmann::json header = id;
  header["key"] = key;
  header["payload_sha256"] = sha256_hex(bytes.data(), bytes.size());
  write_atomic(dir / (key + ".bin"), bytes.data(), bytes.size());
  const std::string text = header.dump(2) + "\n";
  write_atomic(dir / (key + ".json"), text.data(), text.size());
}

std::optional<GalerkinOperator> load_cached(const fs::path& dir, const nlohmann::json& identity) {
  const std::string key = cache_key(identity);
  const auto header_bytes = read_all(dir / (key + ".json"));
  if (header_bytes.empty()) return std::nullopt;
  nlohmann::json header = nlohmann::json::parse(header_bytes.begin(), header_bytes.end(), nullptr, false);
  if (header.is_discarded()) return std::nullopt;
  for (const auto& [k, v] : identity.items()) {
    if (!header.contains(k) || header[k] != v) return std::nullopt;
  }
  const auto bytes = read_all(dir / (key + ".bin"));
  const Eigen::Index rows = identity["rows"], cols = identity["cols"];
  if (bytes.size() != static_cast<std::size_t>(rows * cols) * 2 * sizeof(double)) return std::nullopt;
  if (header.value("payload_sha256", std::string()) != sha256_hex(bytes.data(), bytes.size())) return std::nullopt;
  const GroupSpec g = group_from_json(identity["group"]);
  return GalerkinOperator{PeterWeylBasis(g, identity["domain_band"]), PeterWeylBasis(g, identity["codomain_band"]),
                          matrix_from_bytes(bytes, rows, cols), identity["quadrature_level"],
                          identity["symbol"], std::nullopt};
}

GalerkinOperator assemble_cached(const MatrixSymbol& sigma, int dom_band, int cod_band,
                                 const std::optional<fs::path>& dir, CacheStats* stats,
                                 std::optional<int> level_override) {
  if (!dir) return assemble(sigma, dom_band, cod_band, level_override);
  if (cod_band < dom_band + sigma.x_bandwidth()) return assemble(sigma, dom_band, cod_band, level_override);
  const GroupSpec g = sigma.group();
  const int level = level_override.value_or(assembly_level(g, dom_band, cod_band, sigma.x_bandwidth()));
  PeterWeylBasis d(g, dom_band), c(g, cod_band);
  const auto id = make_identity(g, dom_band, cod_band, sigma.fingerprint(), level,
                                static_cast<Eigen::Index>(c.size()), static_cast<Eigen::Index>(d.size()));
  if (auto hit = load_cached(*dir, id)) {
    if (stats) ++stats->hits;
    return *hit;
  }
  if (stats) ++stats->misses;
  GalerkinOperator out = assemble(sigma, dom_band, cod_band, level);
  save_cached(*dir, out);
  return out;
}

namespace {

bool is_key(const std::string& s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

std::vector<fs::path> header_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error(fmt::format("cache directory {} does not exist", dir.string()));
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json" && is_key(e.path().stem().string())) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CacheEntry read_entry(const fs::path& header_path) {
  CacheEntry entry;
  entry.key = header_path.stem().string();
  const auto bytes = read_all(header_path);
  entry.header = nlohmann::json::parse(bytes.begin(), bytes.end(), nullptr, false);
  if (entry.header.is_discarded()) {
    entry.header = nlohmann::json::object();
    entry.problem = "unreadable header";
  }
  return entry;
}

}  // namespace

std::vector<CacheEntry> cache_list(const fs::path& dir) {
  std::vector<CacheEntry> out;
  for (const auto& p : header_files(dir)) out.push_back(read_entry(p));
  return out;
}

std::vector<CacheEntry> cache_verify(const fs::path& dir) {
  std::vector<CacheEntry> out;
  for (const auto& p : header_files(dir)) {
    CacheEntry entry = read_entry(p);
    if (entry.problem.empty()) {
      const fs::path bin = dir / (entry.key + ".bin");
      if (!fs::exists(bin)) {
        entry.problem = "missing payload";
      } else {
        const auto bytes = read_all(bin);
        const std::string expected = entry.header.value("payload_sha256", std::string());
        const std::int64_t rows = entry.header.value("rows", std::int64_t{-1});
        const std::int64_t cols = entry.header.value("cols", std::int64_t{-1});
        if (rows < 0 || cols < 0 || bytes.size() != static_cast<std::size_t>(rows * cols) * 16) {
          entry.problem = "payload size does not match header";
        } else if (sha256_hex(bytes.data(), bytes.size()) != expected) {
          entry.problem = "payload hash mismatch";
        }
      }
      if (entry.problem.empty()) {
        nlohmann::json id = entry.header;
        id.erase("key");
        id.erase("payload_sha256");
        if (cache_key(id) != entry.key) entry.problem = "header does not hash to its key";
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

int cache_purge(const fs::path& dir) {
  const auto headers = header_files(dir);
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto name = e.path().filename().string();
    if (name.size() >= 64 && is_key(name.substr(0, 64))) fs::remove(e.path());
  }
  return static_cast<int>(headers.size());
}

}  // namespace liegroup
