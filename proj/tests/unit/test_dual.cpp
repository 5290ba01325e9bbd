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
#include "liegroup/dual.hpp"
#include "liegroup/errors.hpp"
#include "test_support.hpp"

using namespace liegroup;

TEST_CASE("enumerate_dual examples") {
  const auto t1 = enumerate_dual(GroupSpec::torus(1), 1.0);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].label == std::vector<int>{0});

  // <l> = 1, 1.3229, 1.7321 for l = 0, 1/2, 1; l = 3/2 gives 2.1794 > 2.
  const auto su2 = enumerate_dual(GroupSpec::su2(), 2.0);
  REQUIRE(su2.size() == 3);
  CHECK(su2[0].label[0] == 0);
  CHECK(su2[1].label[0] == 1);
  CHECK(su2[2].label[0] == 2);
  CHECK(su2[1].weight == doctest::Approx(std::sqrt(1.75)));
  CHECK(make_label(GroupSpec::su2(), {3}).weight == doctest::Approx(std::sqrt(1.0 + 3.75)));

  CHECK(make_label(GroupSpec::su3(), {0, 0}).dim == 1);
  CHECK(make_label(GroupSpec::su3(), {1, 0}).dim == 3);
  CHECK(make_label(GroupSpec::su3(), {0, 1}).dim == 3);
  CHECK(make_label(GroupSpec::su3(), {1, 1}).dim == 8);
  CHECK(make_label(GroupSpec::su3(), {2, 0}).dim == 6);
  CHECK(make_label(GroupSpec::su3(), {3, 0}).dim == 10);
  CHECK(make_label(GroupSpec::su3(), {1, 1}).casimir == doctest::Approx(3.0));

  CHECK_THROWS_AS(enumerate_dual(GroupSpec::su2(), 0.5), DomainError);
  CHECK_THROWS_AS(make_label(GroupSpec::su2(), {-1}), DomainError);
}

TEST_CASE("dual ordering and invariants") {
  for (const GroupSpec& g : {GroupSpec::torus(1), GroupSpec::torus(2), GroupSpec::su2(),
                             GroupSpec::su3()}) {
    const auto dual = enumerate_dual(g, 30.0);
    REQUIRE(!dual.empty());
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const auto& xi = dual[i];
      CHECK(xi.dim >= 1);
      CHECK(xi.weight >= 1.0);
      CHECK(xi.weight <= 30.0);
      CHECK(xi.weight * xi.weight - 1.0 - xi.casimir == 0.0);
      if (i > 0) CHECK(label_less(dual[i - 1], xi));
    }
  }
  // Torus casimir convention.
  CHECK(make_label(GroupSpec::torus(2), {1, 0}).casimir == doctest::Approx(4 * kPi * kPi));
  // enumerate_band agrees with the weight cutoff on SU(2) and the torus.
  for (int band : {0, 1, 4, 7}) {
    CHECK(enumerate_band(GroupSpec::su2(), band).size() ==
          enumerate_dual(GroupSpec::su2(), band_cutoff(GroupSpec::su2(), band)).size());
    CHECK(enumerate_band(GroupSpec::torus(2), band).size() ==
          enumerate_dual(GroupSpec::torus(2), band_cutoff(GroupSpec::torus(2), band)).size());
  }
}

TEST_CASE("rep_matrix basics") {
  const auto e = identity(GroupSpec::su2());
  for (int n = 0; n <= 8; ++n) {
    const auto t = rep_matrix(make_label(GroupSpec::su2(), {n}), e);
    CHECK(distance_to_identity(t) < 1e-15);
    CHECK(t.trace().real() == doctest::Approx(n + 1));
  }
  const auto g = testing::random_su2();
  CHECK((rep_matrix(make_label(GroupSpec::su2(), {1}), g) - g.matrix()).norm() == 0.0);
  const auto t = rep_matrix(make_label(GroupSpec::torus(2), {0, 0}), identity(GroupSpec::torus(2)));
  CHECK(t(0, 0) == Complex(1.0));
  CHECK_THROWS_AS(rep_matrix(make_label(GroupSpec::su3(), {1, 0}), identity(GroupSpec::su3())),
                  UnsupportedError);
  CHECK_THROWS_AS(rep_matrix(make_label(GroupSpec::su2(), {1}), identity(GroupSpec::torus(1))),
                  MismatchError);
}

TEST_CASE("rep_matrix unitarity and homomorphism") {
  for (int n = 0; n <= 8; ++n) {
    const auto xi = make_label(GroupSpec::su2(), {n});
    for (int k = 0; k < 100; ++k) {
      const auto x = testing::random_su2(), y = testing::random_su2();
      const CMatrix tx = rep_matrix(xi, x), ty = rep_matrix(xi, y);
      CHECK(distance_to_identity(tx * tx.adjoint()) <= 1e-10);
      CHECK((rep_matrix(xi, group_mul(x, y)) - tx * ty).norm() <= 1e-9);
    }
  }
  const GroupSpec t2 = GroupSpec::torus(2);
  for (int a = -8; a <= 8; a += 4) {
    for (int b = -8; b <= 8; b += 3) {
      const auto xi = make_label(t2, {a, b});
      for (int k = 0; k < 20; ++k) {
        const auto x = testing::random_point(t2), y = testing::random_point(t2);
        CHECK(std::abs(std::abs(rep_matrix(xi, x)(0, 0)) - 1.0) <= 1e-12);
        CHECK(std::abs(rep_matrix(xi, group_mul(x, y))(0, 0) -
                       rep_matrix(xi, x)(0, 0) * rep_matrix(xi, y)(0, 0)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("lie basis is anti-hermitian and traceless") {
  for (const GroupSpec& g : {GroupSpec::su2(), GroupSpec::su3()}) {
    const auto basis = lie_basis(g);
    CHECK(static_cast<int>(basis.generators.size()) == g.dimension());
    for (const auto& y : basis.generators) {
      CHECK((y + y.adjoint()).norm() < 1e-15);
      CHECK(std::abs(y.trace()) < 1e-15);
    }
  }
  // Flow stays on the group.
  const auto x = testing::random_su3();
  for (int j = 0; j < 8; ++j) {
    const auto y = flow(x, j, 0.37);
    CHECK(distance_to_identity(y.matrix() * y.matrix().adjoint()) < 1e-12);
    CHECK(std::abs(y.matrix().determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("left-invariant derivatives") {
  const GroupSpec t2 = GroupSpec::torus(2);
  const auto x = testing::random_point(t2);
  auto constant = [](const GroupPoint&) { return Complex(2.5, -1.0); };
  CHECK(std::abs(left_invariant_derivative(constant, 0, x)) < 1e-10);

  const auto xi = make_label(t2, {3, -2});
  auto chi = [&](const GroupPoint& p) { return rep_matrix(xi, p)(0, 0); };
  for (int j = 0; j < 2; ++j) {
    const Complex expected = kTwoPi * kI * static_cast<double>(xi.label[j]) * chi(x);
    CHECK(std::abs(left_invariant_derivative(chi, j, x) - expected) <= 1e-6);
  }

  // Casimir convention: sum_j d_j^2 t_l = -l(l+1) t_l.
  const auto g = testing::random_su2();
  for (int n = 0; n <= 4; ++n) {
    const auto lab = make_label(GroupSpec::su2(), {n});
    auto t = [&](const GroupPoint& p) { return rep_matrix(lab, p); };
    CMatrix lap = CMatrix::Zero(n + 1, n + 1);
    for (int j = 0; j < 3; ++j) lap += left_invariant_second_derivative(t, j, g);
    CHECK((lap + lab.casimir * t(g)).norm() <= 1e-5);
  }
}

TEST_CASE("dual csv") {
  std::ostringstream os;
  write_dual_csv(os, enumerate_dual(GroupSpec::su2(), 2.0));
  CHECK(os.str().rfind("label,dim,casimir,weight\n\"l=0\",1,", 0) == 0);
}
