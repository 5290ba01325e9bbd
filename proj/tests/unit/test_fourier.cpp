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

#include "doctest.h"
#include "liegroup/errors.hpp"
#include "liegroup/fourier.hpp"
#include "test_support.hpp"

using namespace liegroup;

namespace {

double max_block_error(const FourierCoefficients& a, const FourierCoefficients& b) {
  REQUIRE(a.size() == b.size());
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, (a.block(i) - b.block(i)).norm());
  return e;
}

}  // namespace

TEST_CASE("constant function transforms to a delta at the trivial label") {
  for (const GroupSpec& g : {GroupSpec::torus(1), GroupSpec::su2()}) {
    const auto rule = make_rule(g, resolving_level(g, 4));
    const auto f = SampledFunction::sample(rule, [](const GroupPoint&) { return Complex(3.0, 1.0); });
    const auto c = fourier_forward(f, enumerate_band(g, 2));
    CHECK(std::abs(c.block(0)(0, 0) - Complex(3.0, 1.0)) < 1e-12);
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(c.block(i).norm() < 1e-12);
  }
}

TEST_CASE("round trip on band-limited functions") {
  for (const GroupSpec& g : {GroupSpec::torus(1), GroupSpec::torus(2), GroupSpec::su2()}) {
    const int band = g.is_torus() ? 5 : 6;
    const auto c = testing::random_coefficients(g, band);
    const auto rule = make_rule(g, resolving_level(g, 2 * band));
    const auto f = fourier_inverse_on(c, rule);
    const auto back = fourier_forward(f, enumerate_band(g, band));
    CHECK(max_block_error(c, back) <= 1e-10 * plancherel_norm(c));

    const auto f2 = fourier_inverse_on(back, rule);
    double e = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k) e = std::max(e, std::abs(f.values[k] - f2.values[k]));
    CHECK(e <= 1e-9 * plancherel_norm(c));
  }
}

TEST_CASE("plancherel identity") {
  for (const GroupSpec& g : {GroupSpec::torus(2), GroupSpec::su2()}) {
    const int band = 5;
    const auto c = testing::random_coefficients(g, band);
    const auto rule = make_rule(g, resolving_level(g, 2 * band));
    const double l2 = fourier_inverse_on(c, rule).l2_norm();
    CHECK(std::abs(l2 - plancherel_norm(c)) <= 1e-10 * l2);
  }
}

TEST_CASE("schur orthogonality of SU(2) matrix entries") {
  // <xi_ij, eta_kl> = delta / d_xi for every pair with 2l <= 12.
  const GroupSpec g = GroupSpec::su2();
  const int band = 12;
  const auto rule = make_rule(g, resolving_level(g, 2 * band));
  const auto dual = enumerate_band(g, band);
  double worst = 0.0;
  for (const auto& xi : dual) {
    const auto f = SampledFunction::sample(rule, [&](const GroupPoint& x) { return rep_matrix(xi, x)(0, xi.dim - 1); });
    const auto c = fourier_forward(f, dual);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CMatrix expected = CMatrix::Zero(c.labels()[i].dim, c.labels()[i].dim);
      // f^(eta)_{kl} = <xi_{0,d-1}, eta_{lk}>.
      if (c.labels()[i] == xi) expected(xi.dim - 1, 0) = 1.0 / xi.dim;
      worst = std::max(worst, (c.block(i) - expected).cwiseAbs().maxCoeff());
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("sobolev norm") {
  const GroupSpec g = GroupSpec::su2();
  FourierCoefficients c(g, 10.0);
  for (const auto& xi : enumerate_band(g, 3)) {
    CMatrix b = CMatrix::Zero(xi.dim, xi.dim);
    if (xi.label[0] == 2) b(0, 0) = 1.0;
    c.push(xi, b);
  }
  // Only l = 1 carries mass: d = 3, <xi>^2 = 3.
  CHECK(plancherel_norm(c) == doctest::Approx(std::sqrt(3.0)));
  CHECK(sobolev_norm(c, 1.0) == doctest::Approx(std::sqrt(9.0)));
  CHECK(sobolev_norm(c, -1.0) == doctest::Approx(1.0));

  const auto sym = lambda_multiplier(g, 2.0);
  const auto xi = make_label(g, {2});
  CHECK((sym(identity(g), xi) - 3.0 * CMatrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("mismatched dual is rejected") {
  const auto rule = make_rule(GroupSpec::torus(1), 4);
  const auto f = SampledFunction::sample(rule, [](const GroupPoint&) { return Complex(1.0); });
  CHECK_THROWS_AS(fourier_forward(f, enumerate_band(GroupSpec::su2(), 1)), MismatchError);
  FourierCoefficients c(GroupSpec::su2(), 2.0);
  CHECK_THROWS_AS(c.push(make_label(GroupSpec::su2(), {1}), CMatrix::Zero(3, 3)), MismatchError);
}

TEST_CASE("coefficient json round trip") {
  const auto c = testing::random_coefficients(GroupSpec::su2(), 3);
  const auto back = coefficients_from_json(nlohmann::json::parse(to_json(c).dump()));
  CHECK(max_block_error(c, back) == 0.0);
  CHECK(back.cutoff() == c.cutoff());
  CHECK_THROWS_AS(group_from_json(nlohmann::json{{"kind", "so3"}}), ConfigError);
  CHECK(group_from_json(group_to_json(GroupSpec::torus(3))) == GroupSpec::torus(3));
}
