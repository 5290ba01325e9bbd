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

#include "liegroup/dual.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "liegroup/errors.hpp"

namespace liegroup {

namespace {

double exact_casimir(const GroupSpec& g, const std::vector<int>& label) {
  switch (g.kind()) {
    case GroupKind::Torus: {
      long long sq = 0;
      for (int v : label) sq += static_cast<long long>(v) * v;
      return 4.0 * kPi * kPi * static_cast<double>(sq);
    }
    case GroupKind::SU2: {
      const double l = 0.5 * label[0];
      return l * (l + 1.0);
    }
    case GroupKind::SU3: {
      const double a = label[0], b = label[1];
      return (a * a + b * b + a * b) / 3.0 + a + b;
    }
  }
  return 0.0;
}

// Calls visit(label) for every label in the box that may satisfy the band.
template <class Visit>
void for_each_torus_label(int n, int radius, Visit&& visit) {
  std::vector<int> l(n, -radius);
  while (true) {
    visit(l);
    int d = n - 1;
    while (d >= 0 && l[d] == radius) {
      l[d] = -radius;
      --d;
    }
    if (d < 0) break;
    ++l[d];
  }
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients of (a + b z)^p.
std::vector<Complex> binomial_poly(Complex a, Complex b, int p) {
  std::vector<Complex> c(p + 1, Complex(0.0));
  c[0] = 1.0;
  for (int step = 0; step < p; ++step) {
    for (int i = step + 1; i >= 1; --i) c[i] = c[i] * a + c[i - 1] * b;
    c[0] *= a;
  }
  return c;
}

}  // namespace

int IrrepLabel::band() const {
  switch (group.kind()) {
    case GroupKind::Torus: {
      long long sq = 0;
      for (int v : label) sq += static_cast<long long>(v) * v;
      int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(sq))));
      while (static_cast<long long>(r) * r < sq) ++r;
      while (r > 0 && static_cast<long long>(r - 1) * (r - 1) >= sq) --r;
      return r;
    }
    case GroupKind::SU2:
      return label[0];
    case GroupKind::SU3:
      return label[0] + label[1];
  }
  return 0;
}

std::string IrrepLabel::to_string() const {
  switch (group.kind()) {
    case GroupKind::Torus:
      return fmt::format("({})", fmt::join(label, ","));
    case GroupKind::SU2:
      if (label[0] % 2 == 0) return fmt::format("l={}", label[0] / 2);
      return fmt::format("l={}/2", label[0]);
    case GroupKind::SU3:
      return fmt::format("({},{})", label[0], label[1]);
  }
  return "?";
}

bool label_less(const IrrepLabel& a, const IrrepLabel& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.label < b.label;
}

IrrepLabel make_label(const GroupSpec& group, std::vector<int> label) {
  IrrepLabel xi;
  xi.group = group;
  switch (group.kind()) {
    case GroupKind::Torus:
      if (static_cast<int>(label.size()) != group.torus_rank()) {
        throw DomainError(fmt::format("torus label needs {} entries", group.torus_rank()));
      }
      xi.dim = 1;
      break;
    case GroupKind::SU2:
      if (label.size() != 1 || label[0] < 0) {
        throw DomainError("SU(2) label is a single nonnegative twice-spin");
      }
      xi.dim = label[0] + 1;
      break;
    case GroupKind::SU3:
      if (label.size() != 2 || label[0] < 0 || label[1] < 0) {
        throw DomainError("SU(3) label is a pair (a, b) of nonnegative integers");
      }
      xi.dim = (label[0] + 1) * (label[1] + 1) * (label[0] + label[1] + 2) / 2;
      break;
  }
  xi.weight = std::sqrt(1.0 + exact_casimir(group, label));
  xi.casimir = xi.weight * xi.weight - 1.0;
  xi.label = std::move(label);
  return xi;
}

std::vector<IrrepLabel> enumerate_band(const GroupSpec& group, int band) {
  std::vector<IrrepLabel> out;
  if (band < 0) return out;
  switch (group.kind()) {
    case GroupKind::Torus:
      for_each_torus_label(group.torus_rank(), band, [&](const std::vector<int>& l) {
        long long sq = 0;
        for (int v : l) sq += static_cast<long long>(v) * v;
        if (sq <= static_cast<long long>(band) * band) out.push_back(make_label(group, l));
      });
      break;
    case GroupKind::SU2:
      for (int n = 0; n <= band; ++n) out.push_back(make_label(group, {n}));
      break;
    case GroupKind::SU3:
      for (int a = 0; a <= band; ++a) {
        for (int b = 0; a + b <= band; ++b) out.push_back(make_label(group, {a, b}));
      }
      break;
  }
  std::sort(out.begin(), out.end(), label_less);
  return out;
}

std::vector<IrrepLabel> enumerate_dual(const GroupSpec& group, double cutoff) {
  if (!(cutoff >= 1.0)) throw DomainError(fmt::format("dual cutoff must be >= 1, got {}", cutoff));
  const double lambda_max = cutoff * cutoff - 1.0;
  int box = 0;
  switch (group.kind()) {
    case GroupKind::Torus:
      box = static_cast<int>(std::floor(std::sqrt(lambda_max) / kTwoPi)) + 1;
      break;
    case GroupKind::SU2:
      box = static_cast<int>(std::ceil(2.0 * std::sqrt(lambda_max))) + 1;
      break;
    case GroupKind::SU3:
      box = static_cast<int>(std::ceil(std::sqrt(3.0 * lambda_max))) + 1;
      break;
  }
  std::vector<IrrepLabel> out;
  for (IrrepLabel& xi : enumerate_band(group, group.is_torus() ? box * group.torus_rank() : 2 * box)) {
    if (xi.weight <= cutoff) out.push_back(std::move(xi));
  }
  return out;
}

double band_cutoff(const GroupSpec& group, int band) {
  switch (group.kind()) {
    case GroupKind::Torus: {
      std::vector<int> l(group.torus_rank(), 0);
      l[0] = band;
      return make_label(group, l).weight;
    }
    case GroupKind::SU2:
      return make_label(group, {band}).weight;
    case GroupKind::SU3:
      return make_label(group, {band, 0}).weight;
  }
  return 1.0;
}

CMatrix su2_rep(int n, const CMatrix& g) {
  if (n == 0) return CMatrix::Identity(1, 1);
  if (n == 1) return g;
  // Sym^n(g) on e1^{n-j} e2^j: column k is the expansion of
  // (g11 e1 + g21 e2)^{n-k} (g12 e1 + g22 e2)^k; rescale to the orthonormal
  // basis sqrt(C(n,j)) e1^{n-j} e2^j.
  CMatrix t(n + 1, n + 1);
  std::vector<double> bin(n + 1);
  for (int j = 0; j <= n; ++j) bin[j] = binom(n, j);
  for (int k = 0; k <= n; ++k) {
    const auto a = binomial_poly(g(0, 0), g(1, 0), n - k);
    const auto b = binomial_poly(g(0, 1), g(1, 1), k);
    for (int j = 0; j <= n; ++j) {
      Complex c(0.0);
      for (int i = std::max(0, j - k); i <= std::min(j, n - k); ++i) c += a[i] * b[j - i];
      t(j, k) = c * std::sqrt(bin[k] / bin[j]);
    }
  }
  return t;
}

CMatrix rep_matrix(const IrrepLabel& xi, const GroupPoint& x) {
  if (!(xi.group == x.group())) {
    throw MismatchError(
        fmt::format("label on {} evaluated at a point of {}", xi.group.name(), x.group().name()));
  }
  switch (xi.group.kind()) {
    case GroupKind::Torus: {
      double phase = 0.0;
      const auto c = x.coords();
      for (std::size_t i = 0; i < c.size(); ++i) phase += xi.label[i] * c[i];
      CMatrix m(1, 1);
      m(0, 0) = std::polar(1.0, kTwoPi * phase);
      return m;
    }
    case GroupKind::SU2:
      return su2_rep(xi.label[0], x.matrix());
    case GroupKind::SU3:
      break;
  }
  throw UnsupportedError("SU(3) representation matrices are not available");
}

LieBasis lie_basis(const GroupSpec& group) {
  LieBasis basis{group, {}};
  if (group.kind() == GroupKind::SU2) {
    CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -kI, kI, 0;
    s3 << 1, 0, 0, -1;
    for (const CMatrix* s : {&s1, &s2, &s3}) basis.generators.push_back(0.5 * kI * *s);
  } else if (group.kind() == GroupKind::SU3) {
    std::vector<CMatrix> gm(8, CMatrix::Zero(3, 3));
    gm[0](0, 1) = gm[0](1, 0) = 1;
    gm[1](0, 1) = -kI;
    gm[1](1, 0) = kI;
    gm[2](0, 0) = 1;
    gm[2](1, 1) = -1;
    gm[3](0, 2) = gm[3](2, 0) = 1;
    gm[4](0, 2) = -kI;
    gm[4](2, 0) = kI;
    gm[5](1, 2) = gm[5](2, 1) = 1;
    gm[6](1, 2) = -kI;
    gm[6](2, 1) = kI;
    gm[7](0, 0) = gm[7](1, 1) = 1.0 / std::sqrt(3.0);
    gm[7](2, 2) = -2.0 / std::sqrt(3.0);
    for (const CMatrix& l : gm) basis.generators.push_back(0.5 * kI * l);
  }
  return basis;
}

GroupPoint flow(const GroupPoint& x, int j, double s) {
  const GroupSpec& g = x.group();
  if (j < 0 || j >= g.dimension()) {
    throw DomainError(fmt::format("Lie basis index {} out of range for {}", j, g.name()));
  }
  if (g.is_torus()) {
    std::vector<double> c(x.coords().begin(), x.coords().end());
    c[j] += s;
    return GroupPoint::torus(g, std::move(c));
  }
  static const LieBasis su2 = lie_basis(GroupSpec::su2());
  static const LieBasis su3 = lie_basis(GroupSpec::su3());
  CMatrix e;
  if (g.kind() == GroupKind::SU2) {
    // exp(i s sigma/2) = cos(s/2) I + i sin(s/2) sigma, with sigma = -2i Y.
    e = std::cos(0.5 * s) * CMatrix::Identity(2, 2) + 2.0 * std::sin(0.5 * s) * su2.generators[j];
  } else {
    e = exp_general(s * su3.generators[j]);
  }
  return GroupPoint::from_matrix(g, x.matrix() * e);
}

void write_dual_csv(std::ostream& os, const std::vector<IrrepLabel>& dual) {
  os << "label,dim,casimir,weight\n";
  for (const auto& xi : dual) {
    os << '"' << xi.to_string() << '"' << ',' << xi.dim << ','
       << fmt::format("{:.16e},{:.16e}", xi.casimir, xi.weight) << '\n';
  }
}

}  // namespace liegroup
