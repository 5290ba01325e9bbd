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

#include "liegroup/matrix_symbol.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "liegroup/errors.hpp"

namespace liegroup {

namespace {

void require_same_group(const MatrixSymbol& a, const MatrixSymbol& b) {
  if (!(a.group() == b.group())) {
    throw MismatchError(fmt::format("symbols on {} and {}", a.group().name(), b.group().name()));
  }
}

std::string fmt_complex(Complex z) { return fmt::format("({:.17g},{:.17g})", z.real(), z.imag()); }

}  // namespace

MatrixSymbol::MatrixSymbol(GroupSpec group, double order, int x_bandwidth, bool is_invariant,
                           Evaluator evaluator, std::string fingerprint)
    : group_(group),
      order_(order),
      x_bandwidth_(x_bandwidth),
      invariant_(is_invariant),
      eval_(std::make_shared<const Evaluator>(std::move(evaluator))),
      fingerprint_(std::move(fingerprint)) {
  if (x_bandwidth_ < 0) throw DomainError("x_bandwidth must be >= 0");
}

CMatrix MatrixSymbol::operator()(const GroupPoint& x, const IrrepLabel& xi) const {
  if (!(x.group() == group_) || !(xi.group == group_)) {
    throw MismatchError(fmt::format("symbol on {} evaluated on {}", group_.name(), x.group().name()));
  }
  CMatrix m = (*eval_)(x, xi);
  if (m.rows() != xi.dim || m.cols() != xi.dim) {
    throw MismatchError(fmt::format("symbol {} returned {}x{} at {} (d = {})", fingerprint_,
                                    m.rows(), m.cols(), xi.to_string(), xi.dim));
  }
  return m;
}

MatrixSymbol MatrixSymbol::with_order(double m) const {
  MatrixSymbol s = *this;
  s.order_ = m;
  return s;
}

MatrixSymbol MatrixSymbol::with_fingerprint(std::string fp) const {
  MatrixSymbol s = *this;
  s.fingerprint_ = std::move(fp);
  return s;
}

MatrixSymbol identity_symbol(const GroupSpec& group) {
  return MatrixSymbol(
      group, 0.0, 0, true,
      [](const GroupPoint&, const IrrepLabel& xi) { return CMatrix::Identity(xi.dim, xi.dim); },
      "identity");
}

MatrixSymbol invariant_multiplier(const GroupSpec& group, std::function<Complex(const IrrepLabel&)> g,
                                  double order, std::string fingerprint) {
  return MatrixSymbol(
      group, order, 0, true,
      [g = std::move(g)](const GroupPoint&, const IrrepLabel& xi) {
        return CMatrix(g(xi) * CMatrix::Identity(xi.dim, xi.dim));
      },
      std::move(fingerprint));
}

MatrixSymbol weight_power_symbol(const GroupSpec& group, double s) {
  return invariant_multiplier(
      group, [s](const IrrepLabel& xi) { return Complex(std::pow(xi.weight, s)); }, s,
      fmt::format("weight_power(s={:.17g})", s));
}

MatrixSymbol exp_neg_casimir_symbol(const GroupSpec& group) {
  return invariant_multiplier(
      group, [](const IrrepLabel& xi) { return Complex(std::exp(-xi.casimir)); },
      -std::numeric_limits<double>::infinity(), "exp_neg_casimir");
}

Complex evaluate_coefficient(const std::vector<CoefficientTerm>& terms, const GroupPoint& x) {
  Complex c(0.0);
  for (const auto& t : terms) c += t.value * rep_matrix(t.label, x)(t.row, t.col);
  return c;
}

MatrixSymbol multiplication_symbol(const GroupSpec& group, std::vector<CoefficientTerm> terms) {
  int band = 0;
  std::string fp = "multiply(";
  for (const auto& t : terms) {
    if (!(t.label.group == group)) throw MismatchError("coefficient term on another group");
    if (t.row < 0 || t.col < 0 || t.row >= t.label.dim || t.col >= t.label.dim) {
      throw DomainError(fmt::format("coefficient entry ({},{}) outside d = {}", t.row, t.col,
                                    t.label.dim));
    }
    band = std::max(band, t.label.band());
    fp += fmt::format("{}[{},{}]*{};", t.label.to_string(), t.row, t.col, fmt_complex(t.value));
  }
  fp += ")";
  return MatrixSymbol(
      group, 0.0, band, false,
      [terms = std::move(terms)](const GroupPoint& x, const IrrepLabel& xi) {
        return CMatrix(evaluate_coefficient(terms, x) * CMatrix::Identity(xi.dim, xi.dim));
      },
      std::move(fp));
}

MatrixSymbol winding_symbol(int k) {
  return MatrixSymbol(
      GroupSpec::torus(1), 0.0, std::abs(k), false,
      [k](const GroupPoint& x, const IrrepLabel& xi) {
        CMatrix m(1, 1);
        m(0, 0) = xi.label[0] >= 0 ? std::polar(1.0, kTwoPi * k * x.coords()[0]) : Complex(1.0);
        return m;
      },
      fmt::format("winding(k={})", k));
}

MatrixSymbol winding_adjoint_symbol(int k) {
  return MatrixSymbol(
      GroupSpec::torus(1), 0.0, std::abs(k), false,
      [k](const GroupPoint& x, const IrrepLabel& xi) {
        const int l = xi.label[0];
        const Complex back = std::polar(1.0, -kTwoPi * k * x.coords()[0]);
        CMatrix m(1, 1);
        if (k >= 0) {
          m(0, 0) = l >= k ? back : (l < 0 ? Complex(1.0) : Complex(0.0));
        } else {
          if (l >= 0) {
            m(0, 0) = back;
          } else if (l >= k) {
            m(0, 0) = back + 1.0;
          } else {
            m(0, 0) = 1.0;
          }
        }
        return m;
      },
      fmt::format("winding_adjoint(k={})", k));
}

MatrixSymbol symbol_sum(const MatrixSymbol& a, const MatrixSymbol& b) {
  require_same_group(a, b);
  return MatrixSymbol(
      a.group(), std::max(a.order(), b.order()), std::max(a.x_bandwidth(), b.x_bandwidth()),
      a.is_invariant() && b.is_invariant(),
      [a, b](const GroupPoint& x, const IrrepLabel& xi) { return CMatrix(a(x, xi) + b(x, xi)); },
      fmt::format("sum({},{})", a.fingerprint(), b.fingerprint()));
}

MatrixSymbol symbol_scale(const MatrixSymbol& a, Complex factor) {
  return MatrixSymbol(
      a.group(), a.order(), a.x_bandwidth(), a.is_invariant(),
      [a, factor](const GroupPoint& x, const IrrepLabel& xi) { return CMatrix(factor * a(x, xi)); },
      fmt::format("scale({},{})", fmt_complex(factor), a.fingerprint()));
}

MatrixSymbol symbol_pointwise_adjoint(const MatrixSymbol& a) {
  return MatrixSymbol(
      a.group(), a.order(), a.x_bandwidth(), a.is_invariant(),
      [a](const GroupPoint& x, const IrrepLabel& xi) { return CMatrix(a(x, xi).adjoint()); },
      fmt::format("pointwise_adjoint({})", a.fingerprint()));
}

}  // namespace liegroup
