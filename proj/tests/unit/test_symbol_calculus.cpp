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

#include <sstream>

#include "doctest.h"
#include "liegroup/errors.hpp"
#include "liegroup/symbol_calculus.hpp"
#include "test_support.hpp"

using namespace liegroup;

namespace {

std::vector<CoefficientTerm> torus_coefficient() {
  // c(x) = 2 + 0.5 e^{2 pi i x} - 0.25i e^{-4 pi i x}
  const GroupSpec g = GroupSpec::torus(1);
  return {{make_label(g, {0}), 0, 0, 2.0},
          {make_label(g, {1}), 0, 0, 0.5},
          {make_label(g, {-2}), 0, 0, Complex(0.0, -0.25)}};
}

std::vector<CoefficientTerm> su2_coefficient() {
  const GroupSpec g = GroupSpec::su2();
  return {{make_label(g, {0}), 0, 0, 1.5}, {make_label(g, {1}), 0, 1, Complex(0.3, 0.2)}};
}

double max_symbol_error(const MatrixSymbol& a, const MatrixSymbol& b,
                        const std::vector<GroupPoint>& xs, const std::vector<IrrepLabel>& dual) {
  double e = 0.0;
  for (const auto& x : xs) {
    for (const auto& xi : dual) e = std::max(e, (a(x, xi) - b(x, xi)).norm());
  }
  return e;
}

std::vector<GroupPoint> sample_points(const GroupSpec& g, int n) {
  std::vector<GroupPoint> xs;
  for (int i = 0; i < n; ++i) xs.push_back(testing::random_point(g));
  return xs;
}

}  // namespace

TEST_CASE("symbol of the identity map is the identity") {
  for (const GroupSpec& g : {GroupSpec::torus(1), GroupSpec::su2()}) {
    const auto dual = enumerate_band(g, 3);
    const auto grid = make_rule(g, resolving_level(g, 6));
    const auto s = symbol_of_operator([](const SampledFunction& f) { return f; }, grid, dual);
    CHECK(s.is_invariant());
    CHECK(s.x_bandwidth() == 0);
    CHECK(max_symbol_error(s, identity_symbol(g), sample_points(g, 5), dual) < 1e-12);
  }
}

TEST_CASE("symbol of a Fourier multiplier") {
  for (const GroupSpec& g : {GroupSpec::torus(2), GroupSpec::su2()}) {
    const int band = 4;
    const auto dual = enumerate_band(g, band);
    const auto grid = make_rule(g, resolving_level(g, 2 * band));
    auto decay = [](const IrrepLabel& xi) { return Complex(std::exp(-xi.casimir)); };
    const auto s = symbol_of_operator(multiplier_action(decay, dual), grid, dual);
    CHECK(s.is_invariant());
    // Bitwise invariance of the tabulated form.
    const auto xi = dual.back();
    CHECK((s(testing::random_point(g), xi) - s(testing::random_point(g), xi)).norm() == 0.0);
    CHECK(max_symbol_error(s, exp_neg_casimir_symbol(g), sample_points(g, 5), dual) <= 1e-8);
  }
}

TEST_CASE("symbol of pointwise multiplication is c(x) I") {
  struct Case {
    GroupSpec g;
    std::vector<CoefficientTerm> terms;
  };
  for (const Case& c : {Case{GroupSpec::torus(1), torus_coefficient()},
                        Case{GroupSpec::su2(), su2_coefficient()}}) {
    const int band = 3;
    const auto dual = enumerate_band(c.g, band);
    const auto grid = make_rule(c.g, resolving_level(c.g, 2 * band + 2));
    const auto s = symbol_of_operator(multiplication_action(c.terms), grid, dual);
    CHECK_FALSE(s.is_invariant());
    CHECK(s.x_bandwidth() == (c.g.is_torus() ? 2 : 1));
    double e = 0.0;
    // On the grid and off it.
    for (std::size_t k = 0; k < grid->size(); k += 7) {
      const GroupPoint x = grid->point(k);
      for (const auto& xi : dual) {
        const CMatrix expected = evaluate_coefficient(c.terms, x) * CMatrix::Identity(xi.dim, xi.dim);
        e = std::max(e, (s(x, xi) - expected).norm());
      }
    }
    for (const auto& x : sample_points(c.g, 10)) {
      for (const auto& xi : dual) {
        const CMatrix expected = evaluate_coefficient(c.terms, x) * CMatrix::Identity(xi.dim, xi.dim);
        e = std::max(e, (s(x, xi) - expected).norm());
      }
    }
    CHECK(e <= 1e-8);
    CHECK_THROWS_AS(s(grid->point(0), make_label(c.g, {9})), BandError);
  }
}

TEST_CASE("quantize") {
  const GroupSpec g = GroupSpec::torus(1);
  FourierCoefficients f(g, band_cutoff(g, 2));
  for (const auto& xi : enumerate_band(g, 2)) {
    CMatrix b = CMatrix::Zero(1, 1);
    if (xi.label[0] == 1) b(0, 0) = 1.0;
    f.push(xi, b);
  }
  for (int i = 0; i < 10; ++i) {
    const auto x = testing::random_point(g);
    const Complex e1 = std::polar(1.0, kTwoPi * x.coords()[0]);
    CHECK(std::abs(quantize(identity_symbol(g), f, x) - fourier_inverse(f, x)) < 1e-14);
    CHECK(std::abs(quantize(weight_power_symbol(g, 2.0), f, x) - (1.0 + 4.0 * kPi * kPi) * e1) < 1e-12);
  }
}

TEST_CASE("quantization of an extracted symbol reproduces the action") {
  struct Case {
    GroupSpec g;
    OperatorAction action;
    int out_band;
  };
  const int band = 3;
  const auto t_dual = enumerate_band(GroupSpec::torus(1), band);
  const auto s_dual = enumerate_band(GroupSpec::su2(), band);
  auto lap = [](const IrrepLabel& xi) { return Complex(xi.casimir + 1.0); };
  for (const Case& c :
       {Case{GroupSpec::torus(1), multiplication_action(torus_coefficient()), band + 2},
        Case{GroupSpec::torus(1), multiplier_action(lap, t_dual), band},
        Case{GroupSpec::su2(), multiplication_action(su2_coefficient()), band + 1},
        Case{GroupSpec::su2(), multiplier_action(lap, s_dual), band},
        Case{GroupSpec::su2(),
             compose_actions(multiplication_action(su2_coefficient()), multiplier_action(lap, s_dual)),
             band + 1}}) {
    const auto dual = enumerate_band(c.g, band);
    const auto grid = make_rule(c.g, resolving_level(c.g, 2 * c.out_band));
    const auto s = symbol_of_operator(c.action, grid, dual);
    const auto coeffs = testing::random_coefficients(c.g, band);
    const auto f = fourier_inverse_on(coeffs, grid);
    const auto direct = c.action(f);
    const auto via_symbol = quantize_on(s, coeffs, grid);
    double e = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k) {
      e = std::max(e, std::abs(direct.values[k] - via_symbol.values[k]));
    }
    CHECK(e <= 1e-8 * plancherel_norm(coeffs));
  }
}

TEST_CASE("kernel from symbol") {
  const GroupSpec su2 = GroupSpec::su2();
  const auto dual = enumerate_band(su2, 4);
  double dsq = 0.0;
  for (const auto& xi : dual) dsq += xi.dim * xi.dim;
  CHECK(std::abs(kernel_from_symbol(identity_symbol(su2), dual, identity(su2), identity(su2)) - dsq) < 1e-10);

  // Torus multiplier against its inverse DFT written with explicit cosines/sines.
  const GroupSpec t1 = GroupSpec::torus(1);
  const auto tdual = enumerate_band(t1, 6);
  const auto mult = weight_power_symbol(t1, -2.0);
  for (int q = 0; q < 8; ++q) {
    const double y = q / 8.0;
    double re = 0.0, im = 0.0;
    for (int l = -6; l <= 6; ++l) {
      const double g = 1.0 / (1.0 + 4.0 * kPi * kPi * l * l);
      re += g * std::cos(kTwoPi * l * y);
      im += g * std::sin(kTwoPi * l * y);
    }
    const Complex r = kernel_from_symbol(mult, tdual, identity(t1), GroupPoint::torus(t1, {y}));
    CHECK(std::abs(r - Complex(re, im)) < 1e-12);
  }

  // Multiplication symbol: c(x) times the Dirichlet kernel.
  const auto terms = torus_coefficient();
  const auto grid = make_rule(t1, 32);
  const auto s = symbol_of_operator(multiplication_action(terms), grid, tdual);
  for (int i = 0; i < 10; ++i) {
    const auto x = testing::random_point(t1), y = testing::random_point(t1);
    const Complex expected = evaluate_coefficient(terms, x) *
                             kernel_from_symbol(identity_symbol(t1), tdual, x, y);
    CHECK(std::abs(kernel_from_symbol(s, tdual, x, y) - expected) <= 1e-8);
  }

  // Kernel then forward transform in y recovers sigma(x, .).
  const auto sg = make_rule(su2, resolving_level(su2, 8));
  const auto sym = symbol_sum(weight_power_symbol(su2, 1.0),
                              multiplication_symbol(su2, su2_coefficient()));
  const auto x = testing::random_su2();
  const auto table = kernel_table(sym, dual, std::make_shared<QuadratureRule>(haar_quadrature(su2, 1)), sg);
  const auto kx = SampledFunction::sample(
      sg, [&](const GroupPoint& y) { return kernel_from_symbol(sym, dual, x, y); });
  const auto back = fourier_forward(kx, dual);
  double e = 0.0;
  for (std::size_t i = 0; i < dual.size(); ++i) e = std::max(e, (back.block(i) - sym(x, dual[i])).norm());
  CHECK(e <= 1e-8);
  CHECK(table.values.rows() == 2);
  CHECK(table.values.cols() == static_cast<Eigen::Index>(sg->size()));
}

TEST_CASE("torus difference operators") {
  const GroupSpec t1 = GroupSpec::torus(1);
  const auto e1 = make_label(t1, {1});
  const auto x = testing::random_point(t1);

  const auto d_id = difference_apply(identity_symbol(t1), e1, 0, 0, 8);
  for (const auto& m : enumerate_band(t1, 7)) CHECK(d_id(x, m).norm() == 0.0);
  CHECK(d_id.is_invariant());
  CHECK_THROWS_AS(d_id(x, make_label(t1, {8})), BandError);
  CHECK_THROWS_AS(difference_apply(identity_symbol(t1), make_label(t1, {3}), 0, 0, 2), BandError);

  // delta_{l,0}: shift rule against the kernel route.
  const auto delta = invariant_multiplier(
      t1, [](const IrrepLabel& xi) { return Complex(xi.label[0] == 0 ? 1.0 : 0.0); }, 0.0, "delta0");
  const auto shift = difference_apply(delta, e1, 0, 0, 8);
  const auto kernel = difference_apply(delta, e1, 0, 0, 8, DifferenceRoute::Kernel);
  int support = 0;
  for (const auto& m : enumerate_band(t1, 7)) {
    const Complex v = shift(x, m)(0, 0);
    if (std::abs(v) > 1e-12) {
      ++support;
      CHECK(std::abs(v - Complex(m.label[0] == 1 ? 1.0 : -1.0)) < 1e-14);
    }
    CHECK(std::abs(kernel(x, m)(0, 0) - v) <= 1e-10);
  }
  CHECK(support == 2);

  // <l>^m: first differences decay one order faster.
  for (double m : {-1.0, 1.0, 2.0}) {
    double worst = 0.0;
    for (int band : {16, 32, 64}) {
      const auto d = difference_apply(weight_power_symbol(t1, m), e1, 0, 0, band);
      double sup = 0.0;
      for (const auto& l : enumerate_band(t1, band - 1)) {
        sup = std::max(sup, std::abs(d(x, l)(0, 0)) * std::pow(l.weight, 1.0 - m));
      }
      if (band > 16) CHECK(sup <= 1.01 * worst);
      worst = std::max(worst, sup);
    }
    CHECK(std::isfinite(worst));
  }
}

TEST_CASE("SU(2) difference through the kernel route") {
  const GroupSpec g = GroupSpec::su2();
  const auto half = make_label(g, {1});
  const auto x = testing::random_su2();
  const auto d = difference_apply(identity_symbol(g), half, 0, 0, 4);
  CHECK(d.is_invariant());
  for (const auto& eta : enumerate_band(g, 3)) CHECK(d(x, eta).norm() <= 1e-10);

  // Invariant multipliers stay invariant after differencing.
  const auto dm = difference_apply(weight_power_symbol(g, 1.0), half, 0, 1, 4);
  CHECK(dm.is_invariant());
  const auto y = testing::random_su2();
  for (const auto& eta : enumerate_band(g, 3)) CHECK((dm(x, eta) - dm(y, eta)).norm() <= 1e-10);
}

TEST_CASE("ellipticity check") {
  const GroupSpec t1 = GroupSpec::torus(1);
  const auto grid = make_rule(t1, 16);
  for (int m = -2; m <= 2; ++m) {
    for (const GroupSpec& g : {t1, GroupSpec::su2()}) {
      const auto r = ellipticity_check(weight_power_symbol(g, m), m, 6, make_rule(g, 3));
      CHECK(r.elliptic);
      CHECK(r.constant == 1.0);
      CHECK(r.non_invertible.empty());
    }
  }

  const auto w = ellipticity_check(winding_symbol(1), 0.0, 8, grid);
  CHECK(w.elliptic);
  CHECK(std::abs(w.constant - 1.0) <= 1e-12);

  const auto sine = multiplication_symbol(
      t1, {{make_label(t1, {1}), 0, 0, Complex(0.0, -0.5)}, {make_label(t1, {-1}), 0, 0, Complex(0.0, 0.5)}});
  const auto bad = ellipticity_check(sine, 0.0, 4, grid);
  CHECK_FALSE(bad.elliptic);
  REQUIRE_FALSE(bad.non_invertible.empty());
  bool names_origin = false;
  for (const auto& site : bad.non_invertible) {
    if (site.node == 0 && site.chart[0] == 0.0) names_origin = true;
  }
  CHECK(names_origin);
  CHECK(bad.non_invertible_labels_doubled.size() > bad.non_invertible_labels.size());

  std::ostringstream os;
  bad.write_csv(os);
  CHECK(os.str().rfind("node,label,s_min,s_max,invertible,scaled_inverse_norm\n", 0) == 0);
  CHECK(bad.to_json()["elliptic"] == false);
  CHECK(bad.to_json()["non_invertible_sites"][0]["chart"][0] == 0.0);
}

TEST_CASE("symbol class diagnostic") {
  const GroupSpec t1 = GroupSpec::torus(1);
  const auto grid = make_rule(t1, 8);

  const auto id = symbol_class_diagnostic(identity_symbol(t1), 0.0, 2, 2, grid, 8);
  REQUIRE(id.size() == 9);
  for (const auto& row : id) {
    if (row.alpha[0] == 0 && row.beta[0] == 0) {
      CHECK(row.constant == 1.0);
    } else {
      CHECK(row.constant <= 1e-8);
    }
  }

  double previous = 0.0;
  for (int band : {8, 16, 32}) {
    const auto t = symbol_class_diagnostic(weight_power_symbol(t1, 1.0), 1.0, 0, 1, grid, band);
    REQUIRE(t.size() == 2);
    CHECK(std::isfinite(t[1].constant));
    if (previous > 0.0) CHECK(std::abs(t[1].constant - previous) <= 0.05 * previous);
    previous = t[1].constant;
  }

  const auto osc = MatrixSymbol(
      t1, 1.0, 1, false,
      [](const GroupPoint& x, const IrrepLabel& xi) {
        CMatrix m(1, 1);
        m(0, 0) = std::polar(xi.weight, kTwoPi * x.coords()[0]);
        return m;
      },
      "oscillating");
  const auto t = symbol_class_diagnostic(osc, 1.0, 1, 0, grid, 8);
  REQUIRE(t.size() == 2);
  CHECK(std::abs(t[1].constant / t[0].constant - kTwoPi) <= 0.05 * kTwoPi);

  CHECK_THROWS_AS(symbol_class_diagnostic(identity_symbol(GroupSpec::su2()), 0.0, 0, 1,
                                          make_rule(GroupSpec::su2(), 2), 4),
                  UnsupportedError);
  std::ostringstream os;
  write_class_csv(os, t);
  CHECK(os.str().rfind("alpha,beta,constant\n\"0\",\"0\",", 0) == 0);
}
