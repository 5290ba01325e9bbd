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


// Fredholm index of Galerkin truncations: heat traces, SVD kernel counts and
// the symbol density integral, plus order reduction, symbol traces and
// stabilization sweeps.

#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liegroup/galerkin.hpp"
#include "liegroup/operators.hpp"

namespace liegroup {

inline constexpr double kDefaultRelTol = 1e-10;
/// Spectral gaps below this ratio mark a kernel count as marginal.
inline constexpr double kMarginalGap = 1e3;

/// tr e^{-gamma M^*M} - tr e^{-gamma MM^*}.
double heat_trace_index(const CMatrix& m, double gamma);
double heat_trace_index(const GalerkinOperator& m, double gamma);

struct KernelCount {
  int index = 0;
  int kernel_dim = 0;
  int cokernel_dim = 0;
  int rank = 0;
  double sigma_max = 0.0;
  double smallest_retained = 0.0;
  double largest_discarded = 0.0;
  /// smallest_retained / largest_discarded; infinite when nothing is
  /// discarded or everything is.
  double gap = 0.0;
  bool marginal = false;
};

/// dim ker M - dim ker M^* from one SVD, with singular values below
/// rel_tol * sigma_max counted as zero.
KernelCount kernel_count(const CMatrix& m, double rel_tol = kDefaultRelTol);
int kernel_count_index(const GalerkinOperator& m, double rel_tol = kDefaultRelTol);

/// Orthonormal columns spanning the numerical null space of m.
CMatrix null_space(const CMatrix& m, double rel_tol = kDefaultRelTol);

/// Index truncation of A at band L. `forward` is P_{L+W} A P_L and
/// `adjoint_forward` is P_{L+W} A^* P_L, both with domain band L. The
/// result is forward expressed in the frame [range(forward) | ker(A^* P_L)],
/// so its index is dim ker(A) - dim ker(A^*) restricted to band L.
GalerkinOperator index_truncation(const GalerkinOperator& forward, const GalerkinOperator& adjoint_forward,
                                  double rel_tol = kDefaultRelTol);

struct IndexDensity {
  double gamma = 0.0;
  double order = 0.0;
  RulePtr grid;
  std::vector<IrrepLabel> labels;
  /// traces(k, i) = d_xi Tr[e^{-gamma S^* A} - e^{-gamma A S^*}] at node k
  /// and label i, where S^* stands for the adjoint symbol (weighted by
  /// <xi>^{-2m} between the factors when order m is nonzero).
  RMatrix traces;
  /// Products that were not Hermitian and went through the general
  /// exponential.
  int non_hermitian = 0;

  /// Quadrature of the summed traces.
  double integral() const;
  void write_csv(std::ostream& os) const;
};

/// Quadrature over x of sum_{band(xi) <= band} d_xi Tr[e^{-gamma sigma_A* sigma_A}
/// - e^{-gamma sigma_A sigma_A*}]. With `order` m the products become
/// sigma_A* <xi>^{-2m} sigma_A and sigma_A <xi>^{-2m} sigma_A*.
std::pair<double, IndexDensity> density_route_index(const MatrixSymbol& sigma_a, const MatrixSymbol& sigma_astar,
                                                    double gamma, int band, RulePtr grid, double order = 0.0);

/// Lambda_{-m} A at finite rank, m the declared order of sigma.
GalerkinOperator order_reduce(const MatrixSymbol& sigma, int dom_band, int cod_band);
/// Operator form: the tree Lambda_{-m} A.
Operator order_reduce(const Operator& a);

struct SymbolTrace {
  Complex value;
  /// Set when the order is not below -dim G.
  std::optional<std::string> warning;
};

/// Quadrature over x of sum_{band(xi) <= band} d_xi Tr sigma(x, xi).
SymbolTrace trace_via_symbol(const MatrixSymbol& sigma, int band, RulePtr grid);

struct SweepOptions {
  double rel_tol = kDefaultRelTol;
  AssemblyOptions assembly;
  /// Reduce to order 0 first. Defaults to reducing when the order is finite
  /// and nonzero.
  std::optional<bool> order_reduction;
};

struct IndexCell {
  int band = 0;
  double gamma = 0.0;
  double heat_trace = 0.0;
  int kernel_count = 0;
  double density_route = 0.0;
  std::string error;
};

struct BandSummary {
  int band = 0;
  int rows = 0;
  int cols = 0;
  KernelCount count;
  std::string error;
};

struct IndexReport {
  std::string description;
  std::string group;
  double order = 0.0;
  int bandwidth = 0;
  bool order_reduced = false;
  double rel_tol = kDefaultRelTol;
  std::vector<int> bands;
  std::vector<double> gammas;
  std::vector<BandSummary> band_summaries;
  std::vector<IndexCell> cells;
  bool stable = false;
  bool marginal = false;
  /// Some cell has |density_route - kernel_count| > 1e-6.
  bool density_discrepancy = false;
  std::vector<std::string> errors;

  std::string verdict() const { return stable ? "stable" : "unstable"; }
  nlohmann::json to_json() const;
  /// Columns: band,gamma,heat_trace,kernel_count,density_route,error.
  void write_csv(std::ostream& os) const;
  /// Columns: band,rows,cols,kernel_dim,cokernel_dim,rank,sigma_max,
  /// smallest_retained,largest_discarded,gap,marginal.
  void write_margins_csv(std::ostream& os) const;
};

/// Runs every route for each (band, gamma). Cell failures are recorded, not
/// thrown.
IndexReport stabilization_sweep(const Operator& a, const std::vector<int>& bands, const std::vector<double>& gammas,
                                const SweepOptions& opts = {});

}  // namespace liegroup
