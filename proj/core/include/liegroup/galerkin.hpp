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

// Peter-Weyl bases and Galerkin matrices of symbols.
//
// Basis functions are b = sqrt(d_xi) xi_ij, ordered by (weight, label, i, j).
// Matrix entries are <A b_dom, b_cod> computed by quadrature, with A b_dom
// evaluated through the quantization formula.

#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "liegroup/fourier.hpp"
#include "liegroup/matrix_symbol.hpp"

namespace liegroup {

struct BasisEntry {
  IrrepLabel label;
  int row = 0;
  int col = 0;
};

class PeterWeylBasis {
 public:
  PeterWeylBasis(const GroupSpec& group, int band);

  const GroupSpec& group() const noexcept { return group_; }
  int band() const noexcept { return band_; }
  double cutoff() const { return band_cutoff(group_, band_); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<BasisEntry>& entries() const noexcept { return entries_; }
  const std::vector<IrrepLabel>& labels() const noexcept { return labels_; }
  /// Position of the first entry of labels()[i].
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  /// Position of (label, row, col), or size() when absent.
  std::size_t index_of(const IrrepLabel& xi, int row, int col) const;

  /// Values sqrt(d) xi(x)_ij at one point, in basis order.
  CVector evaluate(const GroupPoint& x) const;
  /// Coefficient vector of a function given by its Fourier coefficients.
  CVector coordinates(const FourierCoefficients& f) const;
  FourierCoefficients to_coefficients(const CVector& v) const;

  /// [[label, row, col], ...] in basis order.
  nlohmann::json ordering_json() const;

  friend bool operator==(const PeterWeylBasis& a, const PeterWeylBasis& b) {
    return a.group_ == b.group_ && a.band_ == b.band_;
  }

 private:
  GroupSpec group_;
  int band_;
  std::vector<IrrepLabel> labels_;
  std::vector<std::size_t> offsets_;
  std::vector<BasisEntry> entries_;
};

/// Gram matrix <b_j, b_i> under a quadrature rule.
CMatrix gram_matrix(const PeterWeylBasis& basis, const QuadratureRule& rule);

struct GalerkinOperator {
  PeterWeylBasis domain;
  PeterWeylBasis codomain;
  /// codomain.size() x domain.size(), or frame.cols() x domain.size() when a
  /// frame is present.
  CMatrix matrix;
  /// Quadrature level used for assembly (0 when derived algebraically).
  int level = 0;
  std::string fingerprint;
  /// Orthonormal columns in codomain coordinates. When present, rows of
  /// `matrix` are coordinates in this frame instead of the codomain basis.
  std::optional<CMatrix> frame;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

/// Quadrature level used by assemble: exact for the products appearing in
/// the entries.
int assembly_level(const GroupSpec& group, int dom_band, int cod_band, int x_bandwidth);

/// Throws BandError when cod_band < dom_band + sigma.x_bandwidth(), reporting
/// the required band. `level` overrides the automatic quadrature level.
GalerkinOperator assemble(const MatrixSymbol& sigma, int dom_band, int cod_band,
                          std::optional<int> level = std::nullopt);

/// Diagonal of the square assembly at `band`, without forming the matrix.
CVector galerkin_diagonal(const MatrixSymbol& sigma, int band, std::optional<int> level = std::nullopt);

GalerkinOperator adjoint(const GalerkinOperator& g);
/// g1 * g2; requires g2.codomain == g1.domain.
GalerkinOperator compose(const GalerkinOperator& g1, const GalerkinOperator& g2);
GalerkinOperator galerkin_sum(const GalerkinOperator& a, const GalerkinOperator& b);
GalerkinOperator galerkin_scale(const GalerkinOperator& a, Complex factor);
/// Keeps the domain columns with band <= `band`.
GalerkinOperator restrict_domain(const GalerkinOperator& g, int band);
/// Keeps the codomain rows with band <= `band`.
GalerkinOperator restrict_codomain(const GalerkinOperator& g, int band);

/// Pointwise product sigma_a(x, xi) sigma_b(x, xi).
MatrixSymbol frozen_symbol_product(const MatrixSymbol& a, const MatrixSymbol& b);

// Cache: <key>.json header and <key>.bin payload (little-endian interleaved
// real/imag doubles, column-major). The key is the SHA-256 of the canonical
// identity header (group, bands, ordering, fingerprint, level, shape).

nlohmann::json identity_header(const GalerkinOperator& g);
std::string cache_key(const nlohmann::json& identity);

struct CacheStats {
  int hits = 0;
  int misses = 0;
};

/// Writes atomically (temporary file then rename). Framed operators are not
/// cached.
void save_cached(const std::filesystem::path& dir, const GalerkinOperator& g);
std::optional<GalerkinOperator> load_cached(const std::filesystem::path& dir,
                                            const nlohmann::json& identity);

/// assemble() through the cache when `dir` is set.
GalerkinOperator assemble_cached(const MatrixSymbol& sigma, int dom_band, int cod_band,
                                 const std::optional<std::filesystem::path>& dir,
                                 CacheStats* stats = nullptr,
                                 std::optional<int> level = std::nullopt);

struct CacheEntry {
  std::string key;
  nlohmann::json header;
  /// Empty when intact.
  std::string problem;
};

std::vector<CacheEntry> cache_list(const std::filesystem::path& dir);
/// Re-hashes every payload; entries with a non-empty problem are corrupt.
std::vector<CacheEntry> cache_verify(const std::filesystem::path& dir);
/// Returns the number of entries removed.
int cache_purge(const std::filesystem::path& dir);

}  // namespace liegroup
