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
#include "liegroup/index.hpp"
#include "test_support.hpp"

using namespace liegroup;

namespace {

// Index of an operator truncated at one band, through the full pipeline.
KernelCount truncated_count(const Operator& a, int band) {
  const int w = a.bandwidth();
  const auto forward = a.assemble(band, band + w);
  const auto adj = restrict_domain(adjoint(a.assemble(band + w, band + 2 * w)), band);
  return kernel_count(index_truncation(forward, adj).matrix);
}

MatrixSymbol random_invariant(const GroupSpec& g, int band) {
  auto table = std::make_shared<std::vector<std::pair<std::vector<int>, CMatrix>>>();
  for (const auto& xi : enumerate_band(g, band)) table->emplace_back(xi.label, testing::random_cmatrix(xi.dim, xi.dim));
  return MatrixSymbol(
      g, 0.0, 0, true,
      [table](const GroupPoint&, const IrrepLabel& xi) {
        for (const auto& [l, m] : *table) {
          if (l == xi.label) return m;
        }
        return CMatrix(CMatrix::Identity(xi.dim, xi.dim));
      },
      "random_invariant");
}

}  // namespace

TEST_CASE("heat trace of zero and planted matrices") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{3, 5}, {7, 2}, {4, 4}}) {
    const CMatrix z = CMatrix::Zero(p, q);
    CHECK(heat_trace_index(z, 1.0) == static_cast<double>(q - p));
    const KernelCount kc = kernel_count(z);
    CHECK(kc.index == q - p);
    CHECK(kc.rank == 0);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto pm = testing::planted_matrix(40);
    for (double gamma : {0.1, 1.0, 10.0}) {
      CHECK(std::abs(heat_trace_index(pm.m, gamma) - (pm.kernel - pm.cokernel)) <= 1e-8);
    }
    const KernelCount kc = kernel_count(pm.m);
    CHECK(kc.kernel_dim == pm.kernel);
    CHECK(kc.cokernel_dim == pm.cokernel);
    CHECK(kernel_count(pm.m.adjoint()).index == -kc.index);
    // Finite McKean-Singer identity and gamma-invariance.
    for (double gamma : {0.01, 0.5, 3.0, 100.0}) {
      CHECK(std::abs(heat_trace_index(pm.m, gamma) - kc.index) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(heat_trace_index(CMatrix::Identity(2, 2), 0.0), DomainError);
  CHECK_THROWS_AS(kernel_count(CMatrix::Identity(2, 2), 1.5), DomainError);
}

TEST_CASE("kernel count reports the spectral gap") {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-3;
  m(2, 2) = 1e-12;
  const KernelCount kc = kernel_count(m);
  CHECK(kc.rank == 2);
  CHECK(kc.gap == doctest::Approx(1e9));
  CHECK_FALSE(kc.marginal);
  m(2, 2) = 1e-11 * 0.5;
  m(1, 1) = 2e-9;
  CHECK(kernel_count(m).marginal);
  CHECK(kernel_count(CMatrix::Identity(4, 4)).gap == std::numeric_limits<double>::infinity());
}

TEST_CASE("null space") {
  const auto pm = testing::planted_matrix(12);
  const CMatrix n = null_space(pm.m);
  CHECK(n.cols() == pm.kernel);
  if (n.cols() > 0) {
    CHECK((pm.m * n).norm() <= 1e-10);
    CHECK((n.adjoint() * n - CMatrix::Identity(n.cols(), n.cols())).norm() <= 1e-10);
  }
}

TEST_CASE("winding index through the truncation") {
  for (int k = -3; k <= 3; ++k) {
    const KernelCount kc = truncated_count(Operator::winding(k), 16);
    CHECK(kc.index == -k);
    CHECK(kc.kernel_dim == std::max(-k, 0));
    CHECK(kc.cokernel_dim == std::max(k, 0));
    CHECK_FALSE(kc.marginal);
  }
  // A plain rectangular matrix only sees its shape.
  const auto rect = Operator::winding(1).assemble(16, 17);
  CHECK(kernel_count_index(rect) == -2);
  const auto framed = index_truncation(rect, restrict_domain(adjoint(Operator::winding(1).assemble(17, 18)), 16));
  REQUIRE(framed.frame.has_value());
  CHECK((framed.frame->adjoint() * *framed.frame - CMatrix::Identity(framed.rows(), framed.rows())).norm() <= 1e-12);
  CHECK(std::abs(heat_trace_index(framed, 1.0) + 1.0) <= 1e-8);
}

TEST_CASE("index is additive on winding compositions") {
  for (int j = -2; j <= 2; ++j) {
    for (int k = -2; k <= 2; ++k) {
      const Operator c = Operator::product(Operator::winding(j), Operator::winding(k));
      CHECK(truncated_count(c, 10).index == -(j + k));
    }
  }
}

TEST_CASE("invariant operators have index zero") {
  for (const GroupSpec& g : {GroupSpec::torus(1), GroupSpec::torus(2), GroupSpec::su2()}) {
    const Operator lap = Operator::multiplier(weight_power_symbol(g, 2.0));
    CHECK(truncated_count(order_reduce(lap), 4).index == 0);
    CHECK(truncated_count(Operator::multiplier(exp_neg_casimir_symbol(g)), 4).index == 0);
    CHECK(kernel_count_index(assemble(identity_symbol(g), 3, 3)) == 0);
  }
}

TEST_CASE("order reduction") {
  for (double m : {-2.0, 1.0, 2.0}) {
    for (const GroupSpec& g : {GroupSpec::torus(1), GroupSpec::su2()}) {
      const auto r = order_reduce(weight_power_symbol(g, m), 4, 4);
      CHECK((r.matrix - CMatrix::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
  const GroupSpec su2 = GroupSpec::su2();
  const MatrixSymbol lap_plus_one = invariant_multiplier(
      su2, [](const IrrepLabel& xi) { return Complex(xi.casimir + 1.0); }, 2.0, "casimir_plus_one");
  const auto r = order_reduce(lap_plus_one, 5, 5);
  CHECK((r.matrix - CMatrix::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(kernel_count_index(r) == 0);
  CHECK_THROWS_AS(order_reduce(exp_neg_casimir_symbol(su2), 2, 2), DomainError);

  // c(x) Lambda^2 with c nonvanishing on the circle.
  const GroupSpec t1 = GroupSpec::torus(1);
  const Operator c = Operator::multiply(
      t1, {{make_label(t1, {0}), 0, 0, Complex(2.0, 0.0)}, {make_label(t1, {1}), 0, 0, Complex(0.5, 0.25)}});
  const Operator a = Operator::product(c, Operator::multiplier(weight_power_symbol(t1, 2.0)));
  CHECK(a.order() == 2.0);
  const int reduced = truncated_count(order_reduce(a), 12).index;
  const int unreduced = truncated_count(a, 12).index;
  CHECK(reduced == unreduced);
  CHECK(reduced == 0);
}

TEST_CASE("density route") {
  const GroupSpec su2 = GroupSpec::su2();
  const auto grid = make_rule(su2, 4);
  const auto s = random_invariant(su2, 3);
  const auto [v, d] = density_route_index(s, symbol_pointwise_adjoint(s), 0.7, 3, grid);
  CHECK(std::abs(v) <= 1e-10);
  CHECK(d.traces.rows() == static_cast<Eigen::Index>(grid->size()));
  CHECK(d.traces.cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(d.non_hermitian == 0);
  // Swapping the arguments negates the density.
  const auto swapped = density_route_index(symbol_pointwise_adjoint(s), s, 0.7, 3, grid).second;
  CHECK((swapped.traces + d.traces).cwiseAbs().maxCoeff() <= 1e-12);

  // Self-adjoint symbol: identically zero.
  const auto h = symbol_sum(s, symbol_pointwise_adjoint(s));
  const auto zero = density_route_index(h, h, 2.0, 3, grid);
  CHECK(zero.first == 0.0);
  CHECK(zero.second.traces.cwiseAbs().maxCoeff() == 0.0);

  // Winding: the density vanishes while the kernel count is -1.
  const GroupSpec t1 = GroupSpec::torus(1);
  const auto w = density_route_index(winding_symbol(1), winding_adjoint_symbol(1), 1.0, 16, make_rule(t1, 40));
  CHECK(std::abs(w.first) <= 1e-10);
  CHECK(truncated_count(Operator::winding(1), 16).index == -1);

  std::ostringstream csv;
  w.second.write_csv(csv);
  CHECK(csv.str().rfind("node,label,weight,density\n", 0) == 0);
  CHECK_THROWS_AS(density_route_index(s, s, -1.0, 3, grid), DomainError);
}

TEST_CASE("trace via symbol") {
  const GroupSpec su2 = GroupSpec::su2();
  const int band = 10;
  const auto grid = make_rule(su2, 3);
  const auto id = trace_via_symbol(identity_symbol(su2), band, grid);
  double dims = 0.0;
  for (const auto& xi : enumerate_band(su2, band)) dims += xi.dim * xi.dim;
  CHECK(std::abs(id.value - dims) <= 1e-8 * dims);
  CHECK(id.warning.has_value());

  for (const GroupSpec& g : {GroupSpec::torus(1), su2}) {
    const double s = g.dimension() + 2;
    const auto sym = weight_power_symbol(g, -s);
    const auto t = trace_via_symbol(sym, band, make_rule(g, 3));
    CHECK_FALSE(t.warning.has_value());
    double partial = 0.0;
    for (const auto& xi : enumerate_band(g, band)) partial += xi.dim * xi.dim * std::pow(xi.weight, -s);
    CHECK(std::abs(t.value - partial) <= 1e-8);
    CHECK(std::abs(t.value - assemble(sym, band, band).matrix.trace()) <= 1e-8);
  }
}

TEST_CASE("stabilization sweep") {
  const IndexReport w = stabilization_sweep(Operator::winding(2), {8, 16, 32}, {0.1, 1.0, 10.0});
  CHECK(w.errors.empty());
  CHECK(w.stable);
  CHECK(w.verdict() == "stable");
  CHECK(w.cells.size() == 9);
  for (const auto& c : w.cells) {
    CHECK(c.kernel_count == -2);
    CHECK(std::abs(c.heat_trace + 2.0) <= 1e-8);
    CHECK(std::abs(c.density_route) <= 1e-10);
  }
  CHECK(w.density_discrepancy);
  CHECK_FALSE(w.order_reduced);

  const IndexReport inv =
      stabilization_sweep(Operator::multiplier(weight_power_symbol(GroupSpec::su2(), 2.0)), {2, 4}, {0.5, 5.0});
  CHECK(inv.stable);
  CHECK(inv.order_reduced);
  CHECK_FALSE(inv.density_discrepancy);
  for (const auto& c : inv.cells) {
    CHECK(c.kernel_count == 0);
    CHECK(std::abs(c.heat_trace) <= 1e-8);
    CHECK(std::abs(c.density_route) <= 1e-8);
  }

  const auto j = w.to_json();
  CHECK(j["verdict"] == "stable");
  CHECK(j["rows"].size() == 9);
  CHECK(j["margins"][0]["cokernel_dim"] == 2);
  std::ostringstream csv, margins;
  w.write_csv(csv);
  w.write_margins_csv(margins);
  const std::string rows = csv.str(), bands = margins.str();
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 10);
  CHECK(std::count(bands.begin(), bands.end(), '\n') == 4);

  // SU(3) has no representation matrices: cells fail, the sweep does not throw.
  const IndexReport bad =
      stabilization_sweep(Operator::multiplier(weight_power_symbol(GroupSpec::su3(), 1.0)), {1}, {1.0});
  CHECK_FALSE(bad.stable);
  CHECK_FALSE(bad.errors.empty());
  CHECK_THROWS_AS(stabilization_sweep(Operator::winding(1), {}, {1.0}), DomainError);
}
