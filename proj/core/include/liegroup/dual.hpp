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

// Unitary dual: labels, representation matrices, Casimir data and
// left-invariant derivatives.
//
// Label conventions:
//   T^n   : frequency vector l in Z^n, character e^{2 pi i l.x}, lambda = 4 pi^2 |l|^2
//   SU(2) : {2l} (twice the spin), dimension 2l+1, lambda = l(l+1)
//   SU(3) : {a, b}, dimension (a+1)(b+1)(a+b+2)/2, lambda = (a^2+b^2+ab)/3 + a + b
//
// "Band" is the integer truncation parameter used by the Galerkin and index
// code: Euclidean radius |l| <= L on the torus, 2l <= L on SU(2), a+b <= L
// on SU(3). Products of band-L1 and band-L2 functions have band <= L1+L2.

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <type_traits>
#include <vector>

#include "liegroup/group.hpp"

namespace liegroup {

struct IrrepLabel {
  GroupSpec group = GroupSpec::su2();
  std::vector<int> label;
  int dim = 1;
  /// Stored as weight*weight - 1 so that the identity holds bitwise.
  double casimir = 0.0;
  /// <xi> = (1 + casimir)^{1/2}.
  double weight = 1.0;

  int band() const;
  std::string to_string() const;

  friend bool operator==(const IrrepLabel& a, const IrrepLabel& b) {
    return a.group == b.group && a.label == b.label;
  }
};

/// Canonical order: weight, then label lexicographically.
bool label_less(const IrrepLabel& a, const IrrepLabel& b);

/// Build the label with its dimension and Casimir data. Throws DomainError
/// for invalid labels (wrong length, negative SU(2)/SU(3) entries).
IrrepLabel make_label(const GroupSpec& group, std::vector<int> label);

/// All labels with <xi> <= cutoff in canonical order. cutoff >= 1.
std::vector<IrrepLabel> enumerate_dual(const GroupSpec& group, double cutoff);

/// All labels of band <= `band`, canonical order.
std::vector<IrrepLabel> enumerate_band(const GroupSpec& group, int band);

/// Smallest weight cutoff that contains enumerate_band(group, band).
double band_cutoff(const GroupSpec& group, int band);

inline double casimir_eigenvalue(const IrrepLabel& xi) { return xi.casimir; }
inline double weight(const IrrepLabel& xi) { return xi.weight; }

/// Unitary representation matrix xi(x). Torus: 1x1 character. SU(2): the
/// (2l+1)-dimensional symmetric power of the defining representation in the
/// orthonormal monomial basis; 2l = 1 returns x itself. SU(3) throws
/// UnsupportedError.
CMatrix rep_matrix(const IrrepLabel& xi, const GroupPoint& x);

/// Twice-spin n representation of an SU(2) matrix.
CMatrix su2_rep(int twice_spin, const CMatrix& g);

/// Anti-Hermitian traceless generators Y_j of the Lie algebra. SU(2):
/// i sigma_j / 2 (so sum_j Y_j^2 acts as -l(l+1) on t_l); SU(3): i lambda_a / 2
/// with the Gell-Mann matrices. Torus generators are the coordinate
/// directions and carry no matrices.
struct LieBasis {
  GroupSpec group;
  std::vector<CMatrix> generators;
  int size() const { return group.dimension(); }
};

LieBasis lie_basis(const GroupSpec& group);

/// x * exp(s Y_j).
GroupPoint flow(const GroupPoint& x, int j, double s);

inline constexpr double kDefaultStep = 1e-4;

/// d/ds f(x exp(s Y_j)) at s = 0 by central differences; with `richardson`
/// the h and h/2 estimates are combined to cancel the O(h^2) term. Works for
/// any F returning Complex or CMatrix.
template <class F>
auto left_invariant_derivative(F&& f, int j, const GroupPoint& x, double h = kDefaultStep,
                               bool richardson = true) {
  if constexpr (std::is_same_v<std::decay_t<decltype(f(x))>, Complex>) {
    auto d1 = (f(flow(x, j, h)) - f(flow(x, j, -h))) / (2.0 * h);
    if (!richardson) return d1;
    auto d2 = (f(flow(x, j, 0.5 * h)) - f(flow(x, j, -0.5 * h))) / h;
    return (4.0 * d2 - d1) / 3.0;
  } else {
    auto central = [&](double step) -> CMatrix {
      return (f(flow(x, j, step)) - f(flow(x, j, -step))) / (2.0 * step);
    };
    CMatrix d1 = central(h);
    if (!richardson) return d1;
    CMatrix d2 = central(0.5 * h);
    return CMatrix((4.0 * d2 - d1) / 3.0);
  }
}

/// d^2/ds^2 f(x exp(s Y_j)) at s = 0, Richardson-extrapolated second
/// difference.
template <class F>
auto left_invariant_second_derivative(F&& f, int j, const GroupPoint& x, double h = 1e-2) {
  if constexpr (std::is_same_v<std::decay_t<decltype(f(x))>, Complex>) {
    auto s1 = (f(flow(x, j, h)) - 2.0 * f(x) + f(flow(x, j, -h))) / (h * h);
    auto s2 = (f(flow(x, j, 0.5 * h)) - 2.0 * f(x) + f(flow(x, j, -0.5 * h))) / (0.25 * h * h);
    return (4.0 * s2 - s1) / 3.0;
  } else {
    const CMatrix f0 = f(x);
    auto second = [&](double step) -> CMatrix {
      return (f(flow(x, j, step)) - 2.0 * f0 + f(flow(x, j, -step))) / (step * step);
    };
    CMatrix s1 = second(h);
    CMatrix s2 = second(0.5 * h);
    return CMatrix((4.0 * s2 - s1) / 3.0);
  }
}

/// Columns: label, dim, casimir, weight.
void write_dual_csv(std::ostream& os, const std::vector<IrrepLabel>& dual);

}  // namespace liegroup
