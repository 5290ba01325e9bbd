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

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "liegroup/dual.hpp"

namespace liegroup {

/// Matrix-valued symbol sigma(x, xi) in C^{d_xi x d_xi}.
///
/// The evaluator must be pure. `x_bandwidth` bounds the band of the
/// x-dependence (the operator maps band L into band L + x_bandwidth), and
/// `is_invariant` promises that the evaluator ignores x. The fingerprint is a
/// stable textual description used for cache keys and reports.
class MatrixSymbol {
 public:
  using Evaluator = std::function<CMatrix(const GroupPoint&, const IrrepLabel&)>;

  MatrixSymbol(GroupSpec group, double order, int x_bandwidth, bool is_invariant,
               Evaluator evaluator, std::string fingerprint);

  const GroupSpec& group() const noexcept { return group_; }
  double order() const noexcept { return order_; }
  int x_bandwidth() const noexcept { return x_bandwidth_; }
  bool is_invariant() const noexcept { return invariant_; }
  const std::string& fingerprint() const noexcept { return fingerprint_; }

  /// Evaluates and checks the d_xi x d_xi shape.
  CMatrix operator()(const GroupPoint& x, const IrrepLabel& xi) const;

  MatrixSymbol with_order(double m) const;
  MatrixSymbol with_fingerprint(std::string fp) const;

 private:
  GroupSpec group_;
  double order_;
  int x_bandwidth_;
  bool invariant_;
  std::shared_ptr<const Evaluator> eval_;
  std::string fingerprint_;
};

/// sigma = I.
MatrixSymbol identity_symbol(const GroupSpec& group);

/// Invariant multiplier g(xi) I.
MatrixSymbol invariant_multiplier(const GroupSpec& group, std::function<Complex(const IrrepLabel&)> g,
                                  double order, std::string fingerprint);

/// <xi>^s I, order s.
MatrixSymbol weight_power_symbol(const GroupSpec& group, double s);

/// e^{-lambda_xi} I (smoothing; declared order -infinity).
MatrixSymbol exp_neg_casimir_symbol(const GroupSpec& group);

/// A term a * xi(x)_{ij} of a band-limited coefficient function.
struct CoefficientTerm {
  IrrepLabel label;
  int row = 0;
  int col = 0;
  Complex value{0.0};
};

/// c(x) = sum_k a_k xi_k(x)_{ij}.
Complex evaluate_coefficient(const std::vector<CoefficientTerm>& terms, const GroupPoint& x);

/// Pointwise multiplication by c: sigma(x, xi) = c(x) I, order 0, bandwidth =
/// largest band among the terms.
MatrixSymbol multiplication_symbol(const GroupSpec& group, std::vector<CoefficientTerm> terms);

/// Circle winding operator: sigma(x, l) = e^{2 pi i k x} for l >= 0 and 1 for
/// l < 0. Order 0, bandwidth |k|. T^1 only.
MatrixSymbol winding_symbol(int k);

/// Symbol of the adjoint of winding(k), derived from its action on modes:
/// k > 0: e^{-2 pi i k x} for l >= k, 0 for 0 <= l < k, 1 for l < 0.
/// k < 0: e^{2 pi i |k| x} for l >= 0, e^{2 pi i |k| x} + 1 for -|k| <= l < 0,
///        1 for l < -|k|.
MatrixSymbol winding_adjoint_symbol(int k);

MatrixSymbol symbol_sum(const MatrixSymbol& a, const MatrixSymbol& b);
MatrixSymbol symbol_scale(const MatrixSymbol& a, Complex factor);
/// sigma^*(x, xi) pointwise (the symbol of the adjoint only for invariant or
/// multiplication symbols).
MatrixSymbol symbol_pointwise_adjoint(const MatrixSymbol& a);

}  // namespace liegroup
