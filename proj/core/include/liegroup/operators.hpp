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


// Operator trees: invariant multipliers, multiplication by band-limited
// coefficients and circle windings, closed under sums, products and scalar
// multiples. Each tree knows its adjoint tree, its symbol and its Galerkin
// assembly.

#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liegroup/galerkin.hpp"
#include "liegroup/symbol_calculus.hpp"

namespace liegroup {

struct AssemblyOptions {
  std::optional<int> level;
  std::optional<std::filesystem::path> cache_dir;
  CacheStats* stats = nullptr;
};

class Operator {
 public:
  enum class Kind { Multiplier, Multiply, Winding, WindingAdjoint, Sum, Product, Scale };

  /// Left-invariant operator with an invariant symbol.
  static Operator multiplier(MatrixSymbol sigma);
  static Operator identity(const GroupSpec& group);
  static Operator multiply(const GroupSpec& group, std::vector<CoefficientTerm> terms);
  static Operator winding(int k);
  static Operator sum(Operator a, Operator b);
  /// outer * inner.
  static Operator product(Operator outer, Operator inner);
  static Operator scale(Operator a, Complex factor);

  Kind kind() const;
  const GroupSpec& group() const;
  double order() const;
  /// Band shift: the operator maps band L into band L + bandwidth().
  int bandwidth() const;
  bool is_invariant() const;
  const std::string& description() const;

  Operator adjoint() const;

  /// Symbol valid for labels of band <= `band`. Leaves, sums and products
  /// with an invariant right factor are analytic and valid everywhere; other
  /// products are extracted from the composed action.
  MatrixSymbol symbol(int band) const;
  /// Action on sampled functions of band <= `band`. The rule must expand
  /// band + bandwidth() exactly.
  OperatorAction action(int band) const;

  /// P_cod A P_dom; throws BandError when cod_band < dom_band + bandwidth().
  GalerkinOperator assemble(int dom_band, int cod_band, const AssemblyOptions& opts = {}) const;

 private:
  struct Node;
  explicit Operator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Builds a tree from its JSON description. Errors are ConfigErrors whose
/// message starts with the JSON pointer of the offending node, prefixed by
/// `pointer`.
Operator operator_from_json(const GroupSpec& group, const nlohmann::json& j, const std::string& pointer = "");

}  // namespace liegroup
