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

// Group Fourier transform on sampled functions.
//
//   forward:  f^(xi) = sum_k w_k f(x_k) xi(x_k)^*
//   inverse:  f(x)   = sum_xi d_xi Tr(xi(x) f^(xi))
//
// Resolvability: the forward transform is exact for band-limited f when the
// rule integrates every product f * conj(xi_ij) exactly, i.e. when the rule
// level is at least resolving_level(group, band(f) + band(dual)).

#pragma once

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <vector>

#include "liegroup/dual.hpp"
#include "liegroup/matrix_symbol.hpp"

namespace liegroup {

struct SampledFunction {
  RulePtr rule;
  std::vector<Complex> values;

  static SampledFunction sample(RulePtr rule, const std::function<Complex(const GroupPoint&)>& f);
  /// Quadrature inner product <f, g> = sum w_k f_k conj(g_k).
  Complex inner(const SampledFunction& other) const;
  double l2_norm() const;
};

class FourierCoefficients {
 public:
  FourierCoefficients(GroupSpec group, double cutoff) : group_(group), cutoff_(cutoff) {}

  const GroupSpec& group() const noexcept { return group_; }
  double cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<IrrepLabel>& labels() const noexcept { return labels_; }
  const CMatrix& block(std::size_t i) const { return blocks_.at(i); }
  CMatrix& block(std::size_t i) { return blocks_.at(i); }
  /// nullptr when the label is not stored.
  const CMatrix* find(const IrrepLabel& xi) const;

  /// Labels must satisfy <xi> <= cutoff and arrive in canonical order.
  void push(IrrepLabel xi, CMatrix block);

 private:
  GroupSpec group_;
  double cutoff_;
  std::vector<IrrepLabel> labels_;
  std::vector<CMatrix> blocks_;
};

/// Cutoff recorded for a dual list: its largest weight (1 for an empty list).
double dual_cutoff(const std::vector<IrrepLabel>& dual);

FourierCoefficients fourier_forward(const SampledFunction& f, const std::vector<IrrepLabel>& dual);
Complex fourier_inverse(const FourierCoefficients& c, const GroupPoint& x);
/// Inverse transform at every node of a rule.
SampledFunction fourier_inverse_on(const FourierCoefficients& c, RulePtr rule);

double plancherel_norm(const FourierCoefficients& c);
double sobolev_norm(const FourierCoefficients& c, double s);

/// x-independent symbol <xi>^s I (the multiplier Lambda_s).
MatrixSymbol lambda_multiplier(const GroupSpec& group, double s);

nlohmann::json group_to_json(const GroupSpec& g);
GroupSpec group_from_json(const nlohmann::json& j);

/// {"group", "cutoff", "entries": [{"label", "dim", "re", "im"}]} with
/// row-major nested arrays.
nlohmann::json to_json(const FourierCoefficients& c);
FourierCoefficients coefficients_from_json(const nlohmann::json& j);

}  // namespace liegroup
