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

#include "liegroup/group.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "liegroup/errors.hpp"

namespace liegroup {

namespace {

constexpr double kChartSlack = 1e-12;

double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

void require_same_group(const GroupPoint& a, const GroupPoint& b) {
  if (!(a.group() == b.group())) {
    throw MismatchError(fmt::format("group mismatch: {} vs {}", a.group().name(), b.group().name()));
  }
}

std::vector<std::string> chart_columns(const GroupSpec& g) {
  switch (g.kind()) {
    case GroupKind::Torus: {
      std::vector<std::string> c;
      for (int i = 0; i < g.torus_rank(); ++i) c.push_back(fmt::format("x{}", i + 1));
      return c;
    }
    case GroupKind::SU2:
      return {"t", "nu", "s"};
    case GroupKind::SU3:
      return {"theta1", "theta2", "theta3", "phi1", "phi2", "phi3", "phi4", "phi5"};
  }
  return {};
}

}  // namespace

GroupSpec GroupSpec::torus(int n) {
  if (n < 1) throw DomainError(fmt::format("torus dimension must be >= 1, got {}", n));
  return GroupSpec(GroupKind::Torus, n);
}

int GroupSpec::dimension() const noexcept {
  switch (kind_) {
    case GroupKind::Torus: return n_;
    case GroupKind::SU2: return 3;
    case GroupKind::SU3: return 8;
  }
  return 0;
}

int GroupSpec::matrix_size() const noexcept {
  switch (kind_) {
    case GroupKind::Torus: return 0;
    case GroupKind::SU2: return 2;
    case GroupKind::SU3: return 3;
  }
  return 0;
}

int GroupSpec::chart_size() const noexcept { return dimension(); }

std::string GroupSpec::name() const {
  switch (kind_) {
    case GroupKind::Torus: return fmt::format("T^{}", n_);
    case GroupKind::SU2: return "SU(2)";
    case GroupKind::SU3: return "SU(3)";
  }
  return "?";
}

GroupPoint GroupPoint::torus(const GroupSpec& group, std::vector<double> coords) {
  if (!group.is_torus()) throw MismatchError("GroupPoint::torus on a non-torus group");
  if (static_cast<int>(coords.size()) != group.torus_rank()) {
    throw DomainError(fmt::format("expected {} torus coordinates, got {}", group.torus_rank(),
                                  coords.size()));
  }
  for (double& c : coords) c = wrap_unit(c);
  return GroupPoint(group, std::move(coords), CMatrix());
}

GroupPoint GroupPoint::with_chart(const GroupSpec& group, std::vector<double> chart, CMatrix m) {
  GroupPoint p = from_matrix(group, std::move(m));
  p.chart_ = std::move(chart);
  return p;
}

GroupPoint GroupPoint::from_matrix(const GroupSpec& group, CMatrix m) {
  if (group.is_torus()) throw MismatchError("GroupPoint::from_matrix on a torus");
  if (m.rows() != group.matrix_size() || m.cols() != group.matrix_size()) {
    throw DomainError("matrix size does not match group");
  }
  return GroupPoint(group, {}, std::move(m));
}

std::span<const double> GroupPoint::coords() const noexcept {
  if (!group_.is_torus()) return {};
  return chart_;
}

std::vector<double> GroupPoint::chart() const {
  if (!chart_.empty()) return chart_;
  const CMatrix& g = matrix_;
  if (group_.kind() == GroupKind::SU2) {
    const double x1 = std::clamp(g(0, 0).real(), -1.0, 1.0);
    const double x2 = g(0, 0).imag();
    const double t = 2.0 * std::acos(x1);
    const double s = wrap_angle(std::atan2(g(0, 1).imag(), g(0, 1).real()));
    return {t, x2, s};
  }
  // SU(3): first row and second column determine all eight angles.
  const double th1 = std::asin(std::clamp(std::abs(g(0, 1)), 0.0, 1.0));
  const double th2 = std::atan2(std::abs(g(0, 2)), std::abs(g(0, 0)));
  const double th3 = std::atan2(std::abs(g(2, 1)), std::abs(g(1, 1)));
  const double p1 = wrap_angle(std::arg(g(0, 0)));
  const double p2 = wrap_angle(std::arg(g(1, 1)));
  const double p3 = wrap_angle(std::arg(g(0, 1)));
  const double p4 = wrap_angle(std::arg(g(0, 2)));
  const double p5 = wrap_angle(std::arg(g(2, 1)));
  return {th1, th2, th3, p1, p2, p3, p4, p5};
}

GroupPoint identity(const GroupSpec& group) {
  switch (group.kind()) {
    case GroupKind::Torus:
      return GroupPoint::torus(group, std::vector<double>(group.torus_rank(), 0.0));
    case GroupKind::SU2:
      return su2_point(0.0, 0.0, 0.0);
    case GroupKind::SU3:
      return su3_point({0, 0, 0}, {0, 0, 0, 0, 0});
  }
  throw UnsupportedError("unknown group");
}

GroupPoint su2_point(double t, double nu, double s) {
  if (!(t >= -kChartSlack && t <= kTwoPi + kChartSlack && s >= -kChartSlack &&
        s <= kTwoPi + kChartSlack)) {
    throw DomainError(fmt::format("SU(2) chart: t={} s={} outside [0, 2 pi]", t, s));
  }
  const double half = std::sin(0.5 * t);
  if (std::abs(nu) > std::abs(half) + kChartSlack) {
    throw DomainError(fmt::format("SU(2) chart: |nu|={} exceeds sin(t/2)={}", std::abs(nu), half));
  }
  const double x1 = std::cos(0.5 * t);
  const double x2 = nu;
  const double r = std::sqrt(std::max(0.0, half * half - nu * nu));
  const double x3 = r * std::cos(s);
  const double x4 = r * std::sin(s);
  CMatrix g(2, 2);
  g << Complex(x1, x2), Complex(x3, x4), Complex(-x3, x4), Complex(x1, -x2);
  return GroupPoint::with_chart(GroupSpec::su2(), {t, nu, s}, std::move(g));
}

GroupPoint su3_point(const std::array<double, 3>& theta, const std::array<double, 5>& phi) {
  for (double th : theta) {
    if (!(th >= -kChartSlack && th <= 0.5 * kPi + kChartSlack)) {
      throw DomainError(fmt::format("SU(3) chart: theta={} outside [0, pi/2]", th));
    }
  }
  for (double ph : phi) {
    if (!(ph >= -kChartSlack && ph <= kTwoPi + kChartSlack)) {
      throw DomainError(fmt::format("SU(3) chart: phi={} outside [0, 2 pi]", ph));
    }
  }
  const double c1 = std::cos(theta[0]), s1 = std::sin(theta[0]);
  const double c2 = std::cos(theta[1]), s2 = std::sin(theta[1]);
  const double c3 = std::cos(theta[2]), s3 = std::sin(theta[2]);
  const auto e = [](double a) { return std::polar(1.0, a); };
  const double p1 = phi[0], p2 = phi[1], p3 = phi[2], p4 = phi[3], p5 = phi[4];
  CMatrix u(3, 3);
  u(0, 0) = c1 * c2 * e(p1);
  u(0, 1) = s1 * e(p3);
  u(0, 2) = c1 * s2 * e(p4);
  u(1, 0) = s2 * s3 * e(-p4 - p5) - s1 * c2 * c3 * e(p1 + p2 - p3);
  u(1, 1) = c1 * c3 * e(p2);
  u(1, 2) = -c2 * s3 * e(-p1 - p5) - s1 * s2 * c3 * e(p2 - p3 + p4);
  u(2, 0) = -s1 * c2 * s3 * e(p1 - p3 + p5) - s2 * c3 * e(-p2 - p4);
  u(2, 1) = c1 * s3 * e(p5);
  u(2, 2) = c2 * c3 * e(-p1 - p2) - s1 * s2 * s3 * e(-p3 + p4 + p5);
  std::vector<double> chart(theta.begin(), theta.end());
  chart.insert(chart.end(), phi.begin(), phi.end());
  return GroupPoint::with_chart(GroupSpec::su3(), std::move(chart), std::move(u));
}

GroupPoint group_mul(const GroupPoint& a, const GroupPoint& b) {
  require_same_group(a, b);
  if (a.group().is_torus()) {
    std::vector<double> c(a.coords().begin(), a.coords().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
    return GroupPoint::torus(a.group(), std::move(c));
  }
  return GroupPoint::from_matrix(a.group(), a.matrix() * b.matrix());
}

GroupPoint group_inv(const GroupPoint& a) {
  if (a.group().is_torus()) {
    std::vector<double> c(a.coords().begin(), a.coords().end());
    for (double& x : c) x = -x;
    return GroupPoint::torus(a.group(), std::move(c));
  }
  return GroupPoint::from_matrix(a.group(), a.matrix().adjoint());
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = mid - half * x;
    nodes[n - 1 - i] = mid + half * x;
    weights[i] = weights[n - 1 - i] = half * w;
  }
}

void QuadratureRule::decode(std::size_t k, std::array<std::size_t, 8>& idx) const {
  for (std::size_t a = axes_.size(); a-- > 0;) {
    const std::size_t n = axes_[a].nodes.size();
    idx[a] = k % n;
    k /= n;
  }
}

double QuadratureRule::weight(std::size_t k) const {
  std::array<std::size_t, 8> idx{};
  decode(k, idx);
  double w = 1.0 / raw_mass_;
  for (std::size_t a = 0; a < axes_.size(); ++a) w *= axes_[a].weights[idx[a]];
  return w;
}

std::vector<double> QuadratureRule::chart(std::size_t k) const {
  std::array<std::size_t, 8> idx{};
  decode(k, idx);
  std::vector<double> c(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) c[a] = axes_[a].nodes[idx[a]];
  if (group_.kind() == GroupKind::SU2) c[1] *= std::sin(0.5 * c[0]);  // u -> nu
  return c;
}

GroupPoint QuadratureRule::point(std::size_t k) const {
  std::vector<double> c = chart(k);
  switch (group_.kind()) {
    case GroupKind::Torus:
      return GroupPoint::torus(group_, std::move(c));
    case GroupKind::SU2:
      return su2_point(c[0], c[1], c[2]);
    case GroupKind::SU3:
      return su3_point({c[0], c[1], c[2]}, {c[3], c[4], c[5], c[6], c[7]});
  }
  throw UnsupportedError("unknown group");
}

void QuadratureRule::write_csv(std::ostream& os) const {
  os << "index";
  for (const auto& c : chart_columns(group_)) os << ',' << c;
  os << ",weight\n";
  for (std::size_t k = 0; k < size_; ++k) {
    os << k;
    for (double x : chart(k)) os << ',' << fmt::format("{:.16e}", x);
    os << ',' << fmt::format("{:.16e}", weight(k)) << '\n';
  }
}

QuadratureRule haar_quadrature(const GroupSpec& group, int level) {
  if (level < 1) throw DomainError(fmt::format("quadrature level must be >= 1, got {}", level));
  QuadratureRule rule(group, level);
  auto uniform = [](int n, double period) {
    QuadratureRule::Axis ax;
    for (int j = 0; j < n; ++j) {
      ax.nodes.push_back(period * j / n);
      ax.weights.push_back(period / n);
    }
    return ax;
  };
  auto gauss = [](int n, double a, double b, auto density) {
    QuadratureRule::Axis ax;
    gauss_legendre(n, a, b, ax.nodes, ax.weights);
    for (int j = 0; j < n; ++j) ax.weights[j] *= density(ax.nodes[j]);
    return ax;
  };
  double prefactor = 1.0;
  switch (group.kind()) {
    case GroupKind::Torus:
      for (int i = 0; i < group.torus_rank(); ++i) rule.axes_.push_back(uniform(level, 1.0));
      break;
    case GroupKind::SU2: {
      // sin(t/2) dt dnu ds with nu = sin(t/2) u  =>  sin^2(t/2) dt du ds.
      // After the (u, s) integration a band-n integrand is a cosine
      // polynomial of degree n + 2 in t/2, which the midpoint rule in t
      // integrates exactly once 2 * level > n + 2.
      QuadratureRule::Axis t;
      for (int j = 0; j < level; ++j) {
        const double x = kTwoPi * (j + 0.5) / level;
        const double h = std::sin(0.5 * x);
        t.nodes.push_back(x);
        t.weights.push_back(kTwoPi / level * h * h);
      }
      rule.axes_.push_back(std::move(t));
      rule.axes_.push_back(gauss(level, -1.0, 1.0, [](double) { return 1.0; }));
      rule.axes_.push_back(uniform(2 * level, kTwoPi));
      break;
    }
    case GroupKind::SU3: {
      const int nt = level + 2;
      rule.axes_.push_back(gauss(nt, 0.0, 0.5 * kPi, [](double t) {
        const double c = std::cos(t);
        return std::sin(t) * c * c * c;
      }));
      for (int i = 0; i < 2; ++i) {
        rule.axes_.push_back(
            gauss(nt, 0.0, 0.5 * kPi, [](double t) { return std::sin(t) * std::cos(t); }));
      }
      for (int i = 0; i < 5; ++i) rule.axes_.push_back(uniform(level, kTwoPi));
      prefactor = 1.0 / (2.0 * std::pow(kPi, 5));
      break;
    }
  }
  rule.size_ = 1;
  double mass = prefactor;
  for (const auto& ax : rule.axes_) {
    rule.size_ *= ax.nodes.size();
    double s = 0.0;
    for (double w : ax.weights) s += w;
    mass *= s;
  }
  // Fold the prefactor into the first axis so that weight() = product / raw_mass.
  for (double& w : rule.axes_.front().weights) w *= prefactor;
  rule.raw_mass_ = mass;
  return rule;
}

RulePtr make_rule(const GroupSpec& group, int level) {
  return std::make_shared<const QuadratureRule>(haar_quadrature(group, level));
}

int resolving_level(const GroupSpec& group, int band) {
  if (band < 0) band = 0;
  switch (group.kind()) {
    case GroupKind::Torus:
      return band + 1;
    case GroupKind::SU2:
      return (band + 4) / 2;
    case GroupKind::SU3:
      break;
  }
  throw UnsupportedError("SU(3) has no representation band; choose the quadrature level directly");
}

}  // namespace liegroup
