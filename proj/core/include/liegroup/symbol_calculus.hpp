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

// Symbols of operators: extraction, quantization, kernels, difference
// operators and ellipticity diagnostics.
//
//   sigma_A(x, xi) = xi(x)^* (A xi)(x)
//   A f(x)         = sum_xi d_xi Tr(xi(x) sigma_A(x, xi) f^(xi))
//   R(x, y)        = sum_xi d_xi Tr(xi(y) sigma_A(x, xi))

#pragma once

#include <nlohmann/json.hpp>

#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "liegroup/fourier.hpp"
#include "liegroup/matrix_symbol.hpp"

namespace liegroup {

/// Linear map on functions sampled at the nodes of one rule.
using OperatorAction = std::function<SampledFunction(const SampledFunction&)>;

/// Largest band whose functions a rule expands exactly (forward transform of
/// a band-b function onto the band-b dual).
int expansion_band(const QuadratureRule& rule);

/// Tabulates sigma(x_k, xi) = xi(x_k)^* (A xi)(x_k) on the grid for every xi
/// in `dual`, applying A to each sampled entry function xi_ij. Off-grid
/// points are evaluated through the exact x-expansion of the table. When all
/// nodes agree to 1e-9 the symbol is flagged invariant and one matrix per
/// label is kept, so evaluation is independent of x bitwise. Labels outside
/// `dual` raise BandError.
MatrixSymbol symbol_of_operator(const OperatorAction& apply, RulePtr grid,
                                const std::vector<IrrepLabel>& dual, double order = 0.0);

/// sum_xi d_xi Tr(xi(x) sigma(x, xi) f^(xi)) over the labels stored in f.
Complex quantize(const MatrixSymbol& sigma, const FourierCoefficients& f, const GroupPoint& x);
SampledFunction quantize_on(const MatrixSymbol& sigma, const FourierCoefficients& f, RulePtr rule);

/// f -> quantize(sigma, fourier_forward(f, dual)). The caller's rule must
/// resolve the band of `dual` twice over and the output band.
OperatorAction symbol_action(MatrixSymbol sigma, std::vector<IrrepLabel> dual);
/// Fourier multiplier f^(xi) -> g(xi) f^(xi) on the labels of `dual`.
OperatorAction multiplier_action(std::function<Complex(const IrrepLabel&)> g,
                                 std::vector<IrrepLabel> dual);
/// Pointwise multiplication by c(x) = sum value * xi(x)_{row,col}.
OperatorAction multiplication_action(std::vector<CoefficientTerm> terms);
OperatorAction compose_actions(OperatorAction outer, OperatorAction inner);

/// Band-limited right-convolution kernel at frozen x.
Complex kernel_from_symbol(const MatrixSymbol& sigma, const std::vector<IrrepLabel>& dual,
                           const GroupPoint& x, const GroupPoint& y);

struct KernelTable {
  RulePtr x_grid;
  RulePtr y_grid;
  /// values(k, k') = R(x_k, y_k').
  CMatrix values;
};

KernelTable kernel_table(const MatrixSymbol& sigma, const std::vector<IrrepLabel>& dual,
                         RulePtr x_grid, RulePtr y_grid);

enum class DifferenceRoute { Automatic, Kernel };

/// Difference operator D_{xi0, (row, col)} with q(y) = xi0(y)_{row,col} -
/// delta_{row,col}. `band` is the band on which sigma is trusted; the result
/// is defined on labels with band <= band - xi0.band() and raises BandError
/// beyond. Automatic uses the torus shift rule
///   (D sigma)(x, m) = sigma(x, m - l0) - sigma(x, m)
/// and the kernel route elsewhere: q(y) R(x, y) transformed back in y.
MatrixSymbol difference_apply(const MatrixSymbol& sigma, const IrrepLabel& xi0, int row, int col,
                              int band, DifferenceRoute route = DifferenceRoute::Automatic);

struct EllipticSite {
  std::size_t node = 0;
  std::vector<double> chart;
  IrrepLabel label;
  double s_min = 0.0;
  double s_max = 0.0;
};

struct EllipticityReport {
  std::string symbol;
  double order = 0.0;
  int band = 0;
  int level = 0;
  /// 1e-10 times the largest singular value over grid x band.
  double threshold = 0.0;
  double max_singular = 0.0;
  std::vector<EllipticSite> sites;
  std::vector<EllipticSite> non_invertible;
  std::vector<IrrepLabel> non_invertible_labels;
  /// Same set recomputed at twice the band.
  std::vector<IrrepLabel> non_invertible_labels_doubled;
  /// max over invertible sites of ||sigma^{-1}|| <xi>^m; infinity when no
  /// site is invertible.
  double constant = std::numeric_limits<double>::infinity();
  bool elliptic = false;

  nlohmann::json to_json() const;
  /// One row per (node, label).
  void write_csv(std::ostream& os) const;
};

EllipticityReport ellipticity_check(const MatrixSymbol& sigma, double m, int band, RulePtr grid);

struct ClassConstant {
  std::vector<int> alpha;
  std::vector<int> beta;
  double constant = 0.0;
};

/// sup over grid x band of ||d^alpha D^beta sigma||_op <xi>^{|beta| - m} for
/// every multi-index pair with |alpha| <= alpha_max and |beta| <= beta_max.
/// d is left_invariant_derivative along the Lie basis; D_j is the torus
/// difference for e^{2 pi i y_j} - 1. Differences need a torus.
std::vector<ClassConstant> symbol_class_diagnostic(const MatrixSymbol& sigma, double m, int alpha_max,
                                                   int beta_max, RulePtr grid, int band);

nlohmann::json class_table_to_json(const std::vector<ClassConstant>& table);
void write_class_csv(std::ostream& os, const std::vector<ClassConstant>& table);

}  // namespace liegroup
