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


#include "liegroup/operators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "liegroup/errors.hpp"

namespace liegroup {

struct Operator::Node {
  Node(Kind k, GroupSpec g) : kind(k), group(g) {}

  Kind kind;
  GroupSpec group;
  double order = 0.0;
  int bandwidth = 0;
  bool invariant = false;
  std::string description;
  std::optional<MatrixSymbol> sigma;
  std::vector<CoefficientTerm> terms;
  int k = 0;
  std::vector<Operator> children;
  Complex factor{1.0};
};

namespace {

std::string fmt_complex(Complex z) { return fmt::format("({:.17g},{:.17g})", z.real(), z.imag()); }

// conj(c) as a list of terms, through a forward transform on a resolving grid.
std::vector<CoefficientTerm> conjugate_terms(const GroupSpec& g, const std::vector<CoefficientTerm>& terms) {
  int band = 0;
  double scale = 0.0;
  for (const auto& t : terms) {
    band = std::max(band, t.label.band());
    scale = std::max(scale, std::abs(t.value));
  }
  if (g.is_torus()) {
    std::vector<CoefficientTerm> out;
    for (const auto& t : terms) {
      std::vector<int> neg = t.label.label;
      for (int& v : neg) v = -v;
      out.push_back({make_label(g, neg), 0, 0, std::conj(t.value)});
    }
    return out;
  }
  const RulePtr rule = make_rule(g, resolving_level(g, 2 * band));
  const auto f = SampledFunction::sample(rule, [&](const GroupPoint& x) {
    return std::conj(evaluate_coefficient(terms, x));
  });
  const FourierCoefficients c = fourier_forward(f, enumerate_band(g, band));
  std::vector<CoefficientTerm> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const IrrepLabel& xi = c.labels()[i];
    for (int a = 0; a < xi.dim; ++a) {
      for (int b = 0; b < xi.dim; ++b) {
        // c(x) = sum d Tr(xi(x) c^) = sum d xi_ab c^_ba.
        const Complex v = static_cast<double>(xi.dim) * c.block(i)(b, a);
        if (std::abs(v) > 1e-13 * std::max(1.0, scale)) out.push_back({xi, a, b, v});
      }
    }
  }
  return out;
}

}  // namespace

Operator Operator::multiplier(MatrixSymbol sigma) {
  if (!sigma.is_invariant()) throw DomainError("multiplier needs an invariant symbol");
  Node n(Kind::Multiplier, sigma.group());
  n.order = sigma.order();
  n.invariant = true;
  n.description = sigma.fingerprint();
  n.sigma = std::move(sigma);
  return Operator(std::make_shared<const Node>(std::move(n)));
}

Operator Operator::identity(const GroupSpec& group) { return multiplier(identity_symbol(group)); }

Operator Operator::multiply(const GroupSpec& group, std::vector<CoefficientTerm> terms) {
  const MatrixSymbol s = multiplication_symbol(group, terms);
  Node n(Kind::Multiply, group);
  n.bandwidth = s.x_bandwidth();
  n.invariant = n.bandwidth == 0;
  n.description = s.fingerprint();
  n.sigma = s;
  n.terms = std::move(terms);
  return Operator(std::make_shared<const Node>(std::move(n)));
}

Operator Operator::winding(int k) {
  Node n(Kind::Winding, GroupSpec::torus(1));
  n.k = k;
  n.bandwidth = std::abs(k);
  n.invariant = k == 0;
  n.sigma = winding_symbol(k);
  n.description = n.sigma->fingerprint();
  return Operator(std::make_shared<const Node>(std::move(n)));
}

Operator Operator::sum(Operator a, Operator b) {
  if (!(a.group() == b.group())) throw MismatchError("sum of operators on different groups");
  Node n(Kind::Sum, a.group());
  n.order = std::max(a.order(), b.order());
  n.bandwidth = std::max(a.bandwidth(), b.bandwidth());
  n.invariant = a.is_invariant() && b.is_invariant();
  n.description = fmt::format("sum({},{})", a.description(), b.description());
  n.children = {std::move(a), std::move(b)};
  return Operator(std::make_shared<const Node>(std::move(n)));
}

Operator Operator::product(Operator outer, Operator inner) {
  if (!(outer.group() == inner.group())) throw MismatchError("product of operators on different groups");
  Node n(Kind::Product, outer.group());
  n.order = outer.order() + inner.order();
  n.bandwidth = outer.bandwidth() + inner.bandwidth();
  n.invariant = outer.is_invariant() && inner.is_invariant();
  n.description = fmt::format("product({},{})", outer.description(), inner.description());
  n.children = {std::move(outer), std::move(inner)};
  return Operator(std::make_shared<const Node>(std::move(n)));
}

Operator Operator::scale(Operator a, Complex factor) {
  Node n(Kind::Scale, a.group());
  n.order = a.order();
  n.bandwidth = a.bandwidth();
  n.invariant = a.is_invariant();
  n.factor = factor;
  n.description = fmt::format("scale({},{})", fmt_complex(factor), a.description());
  n.children = {std::move(a)};
  return Operator(std::make_shared<const Node>(std::move(n)));
}

Operator::Kind Operator::kind() const { return node_->kind; }
const GroupSpec& Operator::group() const { return node_->group; }
double Operator::order() const { return node_->order; }
int Operator::bandwidth() const { return node_->bandwidth; }
bool Operator::is_invariant() const { return node_->invariant; }
const std::string& Operator::description() const { return node_->description; }

Operator Operator::adjoint() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Multiplier:
      return multiplier(symbol_pointwise_adjoint(*n.sigma));
    case Kind::Multiply:
      return multiply(n.group, conjugate_terms(n.group, n.terms));
    case Kind::Winding: {
      Node a(Kind::WindingAdjoint, n.group);
      a.k = n.k;
      a.bandwidth = n.bandwidth;
      a.invariant = n.invariant;
      a.sigma = winding_adjoint_symbol(n.k);
      a.description = a.sigma->fingerprint();
      return Operator(std::make_shared<const Node>(std::move(a)));
    }
    case Kind::WindingAdjoint:
      return winding(n.k);
    case Kind::Sum:
      return sum(n.children[0].adjoint(), n.children[1].adjoint());
    case Kind::Product:
      return product(n.children[1].adjoint(), n.children[0].adjoint());
    case Kind::Scale:
      return scale(n.children[0].adjoint(), std::conj(n.factor));
  }
  throw UnsupportedError("unknown operator kind");
}

MatrixSymbol Operator::symbol(int band) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Multiplier:
    case Kind::Multiply:
    case Kind::Winding:
    case Kind::WindingAdjoint:
      return *n.sigma;
    case Kind::Sum:
      return symbol_sum(n.children[0].symbol(band), n.children[1].symbol(band));
    case Kind::Scale:
      return symbol_scale(n.children[0].symbol(band), n.factor);
    case Kind::Product: {
      const Operator& outer = n.children[0];
      const Operator& inner = n.children[1];
      if (inner.is_invariant()) {
        return frozen_symbol_product(outer.symbol(band), inner.symbol(band)).with_order(n.order);
      }
      const RulePtr grid = make_rule(n.group, resolving_level(n.group, 2 * (2 * band + n.bandwidth)));
      return symbol_of_operator(action(band), grid, enumerate_band(n.group, band), n.order);
    }
  }
  throw UnsupportedError("unknown operator kind");
}

OperatorAction Operator::action(int band) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Multiply:
      return multiplication_action(n.terms);
    case Kind::Multiplier:
    case Kind::Winding:
    case Kind::WindingAdjoint:
      return symbol_action(*n.sigma, enumerate_band(n.group, band));
    case Kind::Sum: {
      OperatorAction a = n.children[0].action(band);
      OperatorAction b = n.children[1].action(band);
      return [a = std::move(a), b = std::move(b)](const SampledFunction& f) {
        SampledFunction out = a(f);
        const SampledFunction other = b(f);
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += other.values[i];
        return out;
      };
    }
    case Kind::Scale: {
      OperatorAction a = n.children[0].action(band);
      return [a = std::move(a), z = n.factor](const SampledFunction& f) {
        SampledFunction out = a(f);
        for (auto& v : out.values) v *= z;
        return out;
      };
    }
    case Kind::Product: {
      const Operator& inner = n.children[1];
      return compose_actions(n.children[0].action(band + inner.bandwidth()), inner.action(band));
    }
  }
  throw UnsupportedError("unknown operator kind");
}

GalerkinOperator Operator::assemble(int dom_band, int cod_band, const AssemblyOptions& opts) const {
  const Node& n = *node_;
  if (cod_band < dom_band + n.bandwidth) {
    throw BandError(fmt::format("assembling {} from band {} needs codomain band >= {}, got {}", n.description,
                                dom_band, dom_band + n.bandwidth, cod_band),
                    dom_band + n.bandwidth);
  }
  switch (n.kind) {
    case Kind::Multiplier:
    case Kind::Multiply:
    case Kind::Winding:
    case Kind::WindingAdjoint:
      return assemble_cached(*n.sigma, dom_band, cod_band, opts.cache_dir, opts.stats, opts.level);
    case Kind::Sum:
      return galerkin_sum(n.children[0].assemble(dom_band, cod_band, opts),
                          n.children[1].assemble(dom_band, cod_band, opts));
    case Kind::Scale:
      return galerkin_scale(n.children[0].assemble(dom_band, cod_band, opts), n.factor);
    case Kind::Product: {
      const int mid = dom_band + n.children[1].bandwidth();
      return compose(n.children[0].assemble(mid, cod_band, opts), n.children[1].assemble(dom_band, mid, opts));
    }
  }
  throw UnsupportedError("unknown operator kind");
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw ConfigError(fmt::format("{}: {}", pointer.empty() ? "/" : pointer, what));
}

const json& member(const json& j, const std::string& key, const std::string& pointer) {
  if (!j.contains(key)) fail(pointer, fmt::format("missing member \"{}\"", key));
  return j.at(key);
}

double number(const json& j, const std::string& pointer) {
  if (!j.is_number()) fail(pointer, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& pointer) {
  if (!j.is_number_integer()) fail(pointer, "expected an integer");
  return j.get<int>();
}

Complex complex_value(const json& j, const std::string& pointer) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(pointer, "expected a number or [re, im]");
}

IrrepLabel label_value(const GroupSpec& g, const json& j, const std::string& pointer) {
  if (!j.is_array() || !std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_number_integer(); })) {
    fail(pointer, "expected an array of integers");
  }
  try {
    return make_label(g, j.get<std::vector<int>>());
  } catch (const std::exception& e) {
    fail(pointer, e.what());
  }
}

const std::vector<json>& operand_list(const json& j, const std::string& key, const std::string& pointer) {
  const json& list = member(j, key, pointer);
  if (!list.is_array() || list.empty()) fail(pointer + "/" + key, "expected a nonempty array");
  return list.get_ref<const json::array_t&>();
}

Operator multiplier_from_json(const GroupSpec& g, const json& j, const std::string& p) {
  const json& f = member(j, "formula", p);
  if (!f.is_string()) fail(p + "/formula", "expected a string");
  const std::string formula = f.get<std::string>();
  if (formula == "weight_power") return Operator::multiplier(weight_power_symbol(g, number(member(j, "s", p), p + "/s")));
  if (formula == "exp_neg_casimir") return Operator::multiplier(exp_neg_casimir_symbol(g));
  if (formula == "casimir_plus_one") {
    return Operator::multiplier(invariant_multiplier(
        g, [](const IrrepLabel& xi) { return Complex(xi.casimir + 1.0); }, 2.0, "casimir_plus_one"));
  }
  if (formula == "identity") return Operator::identity(g);
  if (formula == "table") {
    const Complex fallback = j.contains("default") ? complex_value(j["default"], p + "/default") : Complex(0.0);
    const double order = j.contains("order") ? number(j["order"], p + "/order") : 0.0;
    std::vector<std::pair<std::vector<int>, Complex>> values;
    std::string fp = "table(";
    const auto& list = operand_list(j, "values", p);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string q = fmt::format("{}/values/{}", p, i);
      const IrrepLabel xi = label_value(g, member(list[i], "label", q), q + "/label");
      const Complex v = complex_value(member(list[i], "value", q), q + "/value");
      values.emplace_back(xi.label, v);
      fp += fmt::format("{}:{};", xi.to_string(), fmt_complex(v));
    }
    fp += fmt::format("default:{})", fmt_complex(fallback));
    return Operator::multiplier(invariant_multiplier(
        g,
        [values, fallback](const IrrepLabel& xi) {
          for (const auto& [l, v] : values) {
            if (l == xi.label) return v;
          }
          return fallback;
        },
        order, fp));
  }
  fail(p + "/formula", fmt::format("unknown multiplier formula \"{}\"", formula));
}

}  // namespace

Operator operator_from_json(const GroupSpec& g, const json& j, const std::string& p) {
  if (!j.is_object()) fail(p, "operator must be an object");
  const json& t = member(j, "type", p);
  if (!t.is_string()) fail(p + "/type", "expected a string");
  const std::string type = t.get<std::string>();
  if (type == "identity") return Operator::identity(g);
  if (type == "multiplier") return multiplier_from_json(g, j, p);
  if (type == "multiply") {
    std::vector<CoefficientTerm> terms;
    const auto& list = operand_list(j, "terms", p);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string q = fmt::format("{}/terms/{}", p, i);
      CoefficientTerm term{label_value(g, member(list[i], "label", q), q + "/label")};
      term.row = list[i].contains("row") ? integer(list[i]["row"], q + "/row") : 0;
      term.col = list[i].contains("col") ? integer(list[i]["col"], q + "/col") : 0;
      if (term.row < 0 || term.row >= term.label.dim || term.col < 0 || term.col >= term.label.dim) {
        fail(q, fmt::format("entry ({},{}) outside dimension {}", term.row, term.col, term.label.dim));
      }
      term.value = complex_value(member(list[i], "value", q), q + "/value");
      terms.push_back(term);
    }
    return Operator::multiply(g, std::move(terms));
  }
  if (type == "winding") {
    if (!(g == GroupSpec::torus(1))) fail(p, "winding operators live on T^1");
    return Operator::winding(integer(member(j, "k", p), p + "/k"));
  }
  if (type == "sum") {
    const auto& list = operand_list(j, "terms", p);
    Operator acc = operator_from_json(g, list[0], p + "/terms/0");
    for (std::size_t i = 1; i < list.size(); ++i) {
      acc = Operator::sum(acc, operator_from_json(g, list[i], fmt::format("{}/terms/{}", p, i)));
    }
    return acc;
  }
  if (type == "product") {
    const auto& list = operand_list(j, "factors", p);
    const std::size_t last = list.size() - 1;
    Operator acc = operator_from_json(g, list[last], fmt::format("{}/factors/{}", p, last));
    for (std::size_t i = last; i-- > 0;) {
      acc = Operator::product(operator_from_json(g, list[i], fmt::format("{}/factors/{}", p, i)), acc);
    }
    return acc;
  }
  if (type == "scale") {
    return Operator::scale(operator_from_json(g, member(j, "operand", p), p + "/operand"),
                           complex_value(member(j, "factor", p), p + "/factor"));
  }
  fail(p + "/type", fmt::format("unknown operator type \"{}\"", type));
}

}  // namespace liegroup
