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

// Group geometry for the torus T^n, SU(2) and SU(3): points in their single
// printed chart, group operations, and normalized-Haar product quadrature.

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "liegroup/linalg.hpp"

namespace liegroup {

enum class GroupKind { Torus, SU2, SU3 };

class GroupSpec {
 public:
  static GroupSpec torus(int n);
  static GroupSpec su2() { return GroupSpec(GroupKind::SU2, 0); }
  static GroupSpec su3() { return GroupSpec(GroupKind::SU3, 0); }

  GroupKind kind() const noexcept { return kind_; }
  bool is_torus() const noexcept { return kind_ == GroupKind::Torus; }
  /// n for T^n, 0 otherwise.
  int torus_rank() const noexcept { return n_; }
  /// Manifold dimension: n, 3 or 8.
  int dimension() const noexcept;
  /// Size of the defining matrix (0 for the torus).
  int matrix_size() const noexcept;
  /// Number of chart coordinates.
  int chart_size() const noexcept;
  /// "T^n", "SU(2)", "SU(3)".
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(GroupKind kind, int n) : kind_(kind), n_(n) {}
  GroupKind kind_;
  int n_;
};

/// Point of a supported group. Torus points carry their coordinates in
/// [0,1)^n. Matrix-group points always carry the defining matrix; the chart
/// is stored when the point was built from chart coordinates and recovered
/// on demand otherwise.
class GroupPoint {
 public:
  /// Coordinates are reduced mod 1.
  static GroupPoint torus(const GroupSpec& group, std::vector<double> coords);
  /// Matrix-only point; the caller guarantees unitarity and det 1.
  static GroupPoint from_matrix(const GroupSpec& group, CMatrix m);
  /// Matrix point with its chart coordinates attached.
  static GroupPoint with_chart(const GroupSpec& group, std::vector<double> chart, CMatrix m);

  const GroupSpec& group() const noexcept { return group_; }
  bool has_stored_chart() const noexcept { return !chart_.empty(); }
  /// Chart coordinates; recovered from the matrix if not stored.
  std::vector<double> chart() const;
  /// Torus coordinates (empty span on matrix groups).
  std::span<const double> coords() const noexcept;
  /// Defining matrix; empty for torus points.
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  GroupPoint(GroupSpec g, std::vector<double> chart, CMatrix m)
      : group_(g), chart_(std::move(chart)), matrix_(std::move(m)) {}
  GroupSpec group_;
  std::vector<double> chart_;
  CMatrix matrix_;
};

GroupPoint identity(const GroupSpec& group);

/// SU(2) from (t, nu, s) on D = {|nu| <= sin(t/2), 0 <= t,s <= 2 pi}.
/// Throws DomainError outside D.
GroupPoint su2_point(double t, double nu, double s);

/// SU(3) from the Bronzan angles, 0 <= theta_i <= pi/2, 0 <= phi_i <= 2 pi.
GroupPoint su3_point(const std::array<double, 3>& theta, const std::array<double, 5>& phi);

GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b);
GroupPoint group_inv(const GroupPoint& a);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Tensor-product quadrature for the normalized Haar measure.
///
/// Node layout per group (level = L):
///   T^n   : uniform grid j/L per coordinate, L^n nodes, exact for
///           trigonometric polynomials with |frequency|_inf < L.
///   SU(2) : midpoint rule in t on [0, 2 pi] (L nodes), Gauss-Legendre in
///           u on [-1, 1] with nu = sin(t/2) u (L nodes), trapezoid in s
///           (2L nodes). 2 L^3 nodes, exact for products of representation
///           entries with total band 2l + 2l' <= 2L - 3.
///   SU(3) : Gauss-Legendre with L+2 nodes per theta_i on [0, pi/2],
///           trapezoid with L nodes per phi_i. (L+2)^3 L^5 nodes.
///
/// Weights include the printed density and are divided by the raw mass, so
/// they sum to 1. raw_mass() keeps the unnormalized total (exactly 1 for the
/// torus; 4 pi^2 for the SU(2) density sin(t/2) dt dnu ds; 1 for the SU(3)
/// density with its 1/(2 pi^5) prefactor).
class QuadratureRule {
 public:
  const GroupSpec& group() const noexcept { return group_; }
  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return size_; }
  double weight(std::size_t k) const;
  std::vector<double> chart(std::size_t k) const;
  GroupPoint point(std::size_t k) const;
  double raw_mass() const noexcept { return raw_mass_; }

  /// One row per node: index, chart coordinates, weight. Column names follow
  /// the chart (x1..xn | t,nu,s | theta1..3,phi1..5).
  void write_csv(std::ostream& os) const;

 private:
  friend QuadratureRule haar_quadrature(const GroupSpec& group, int level);
  struct Axis {
    std::vector<double> nodes;
    std::vector<double> weights;
  };
  QuadratureRule(GroupSpec g, int level) : group_(g), level_(level) {}
  void decode(std::size_t k, std::array<std::size_t, 8>& idx) const;

  GroupSpec group_;
  int level_;
  std::vector<Axis> axes_;
  std::size_t size_ = 0;
  double raw_mass_ = 1.0;
};

QuadratureRule haar_quadrature(const GroupSpec& group, int level);

using RulePtr = std::shared_ptr<const QuadratureRule>;
RulePtr make_rule(const GroupSpec& group, int level);

/// Quadrature level that integrates products of representation entries whose
/// total band is `band` (torus: Euclidean frequency radius; SU(2): twice the
/// spin). Both rules are exact at this level. SU(3) has no representation band
/// and throws UnsupportedError.
int resolving_level(const GroupSpec& group, int band);

}  // namespace liegroup
