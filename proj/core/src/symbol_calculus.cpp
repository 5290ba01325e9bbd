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

#include "liegroup/symbol_calculus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <ostream>

#include "liegroup/digest.hpp"
#include "liegroup/errors.hpp"
#include "liegroup/parallel.hpp"

namespace liegroup {

namespace {

constexpr std::size_t kSlices = 16;
constexpr double kInvarianceTol = 1e-9;
constexpr double kTrimTol = 1e-10;

std::size_t label_index(const std::vector<IrrepLabel>& dual, const IrrepLabel& xi) {
  for (std::size_t i = 0; i < dual.size(); ++i) {
    if (dual[i] == xi) return i;
  }
  return dual.size();
}

int max_band(const std::vector<IrrepLabel>& dual) {
  int b = 0;
  for (const auto& xi : dual) b = std::max(b, xi.band());
  return b;
}

/// Singular values, read off the diagonal when the matrix is diagonal.
RVector singular_values(const CMatrix& m) {
  if (m.rows() == m.cols() && m.isDiagonal(0.0)) {
    RVector s = m.diagonal().cwiseAbs();
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    return s;
  }
  return Eigen::JacobiSVD<CMatrix>(m).singularValues();
}

struct Table {
  std::vector<IrrepLabel> dual;
  // Invariant case: one matrix per label.
  std::vector<CMatrix> fixed;
  // Otherwise per label and entry (a * d + b): blocks aligned with xdual.
  std::vector<IrrepLabel> xdual;
  std::vector<std::vector<std::vector<CMatrix>>> coef;
};

CMatrix evaluate_table(const Table& t, const GroupPoint& x, const IrrepLabel& xi) {
  const std::size_t i = label_index(t.dual, xi);
  if (i == t.dual.size()) {
    throw BandError(fmt::format("tabulated symbol has no entry for {}", xi.to_string()), xi.band());
  }
  if (!t.fixed.empty()) return t.fixed[i];
  std::vector<CMatrix> reps;
  reps.reserve(t.xdual.size());
  for (const auto& eta : t.xdual) reps.push_back(rep_matrix(eta, x));
  CMatrix out(xi.dim, xi.dim);
  for (int a = 0; a < xi.dim; ++a) {
    for (int b = 0; b < xi.dim; ++b) {
      const auto& blocks = t.coef[i][static_cast<std::size_t>(a * xi.dim + b)];
      Complex acc(0.0);
      for (std::size_t h = 0; h < t.xdual.size(); ++h) {
        acc += static_cast<double>(t.xdual[h].dim) *
               (reps[h].transpose().cwiseProduct(blocks[h])).sum();
      }
      out(a, b) = acc;
    }
  }
  return out;
}

}  // namespace

int expansion_band(const QuadratureRule& rule) {
  switch (rule.group().kind()) {
    case GroupKind::Torus:
      return std::max(0, (rule.level() - 1) / 2);
    case GroupKind::SU2:
      return std::max(0, rule.level() - 2);
    case GroupKind::SU3:
      break;
  }
  throw UnsupportedError("SU(3) functions have no representation expansion");
}

MatrixSymbol symbol_of_operator(const OperatorAction& apply, RulePtr grid,
                                const std::vector<IrrepLabel>& dual, double order) {
  const QuadratureRule& rule = *grid;
  const GroupSpec g = rule.group();
  const std::size_t nodes = rule.size();

  // values[k][i] = sigma(x_k, xi_i).
  std::vector<std::vector<CMatrix>> values(nodes, std::vector<CMatrix>(dual.size()));
  std::vector<GroupPoint> points;
  points.reserve(nodes);
  for (std::size_t k = 0; k < nodes; ++k) points.push_back(rule.point(k));

  for (std::size_t i = 0; i < dual.size(); ++i) {
    const IrrepLabel& xi = dual[i];
    if (!(xi.group == g)) throw MismatchError("dual label on another group");
    std::vector<CMatrix> reps(nodes);
    for (std::size_t k = 0; k < nodes; ++k) reps[k] = rep_matrix(xi, points[k]);
    std::vector<SampledFunction> images;
    for (int r = 0; r < xi.dim; ++r) {
      for (int c = 0; c < xi.dim; ++c) {
        SampledFunction f{grid, std::vector<Complex>(nodes)};
        for (std::size_t k = 0; k < nodes; ++k) f.values[k] = reps[k](r, c);
        images.push_back(apply(f));
        if (images.back().values.size() != nodes) {
          throw MismatchError("operator action changed the sampling grid");
        }
      }
    }
    for (std::size_t k = 0; k < nodes; ++k) {
      CMatrix a(xi.dim, xi.dim);
      for (int r = 0; r < xi.dim; ++r) {
        for (int c = 0; c < xi.dim; ++c) a(r, c) = images[static_cast<std::size_t>(r * xi.dim + c)].values[k];
      }
      values[k][i] = reps[k].adjoint() * a;
    }
  }

  double scale = 0.0;
  for (const auto& row : values) {
    for (const auto& m : row) scale = std::max(scale, m.norm());
  }
  bool invariant = true;
  for (std::size_t i = 0; i < dual.size() && invariant; ++i) {
    for (std::size_t k = 1; k < nodes; ++k) {
      if ((values[k][i] - values[0][i]).norm() > kInvarianceTol * std::max(1.0, scale)) {
        invariant = false;
        break;
      }
    }
  }

  auto table = std::make_shared<Table>();
  table->dual = dual;
  int bandwidth = 0;
  if (invariant) {
    for (std::size_t i = 0; i < dual.size(); ++i) {
      CMatrix avg = CMatrix::Zero(dual[i].dim, dual[i].dim);
      for (std::size_t k = 0; k < nodes; ++k) avg += rule.weight(k) * values[k][i];
      table->fixed.push_back(std::move(avg));
    }
  } else {
    const auto xdual = enumerate_band(g, expansion_band(rule));
    std::vector<std::vector<CMatrix>> xreps(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
      for (const auto& eta : xdual) xreps[k].push_back(rep_matrix(eta, points[k]).adjoint());
    }
    std::vector<double> mass(xdual.size(), 0.0);
    table->coef.resize(dual.size());
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const int d = dual[i].dim;
      for (int e = 0; e < d * d; ++e) {
        std::vector<CMatrix> blocks;
        for (const auto& eta : xdual) blocks.push_back(CMatrix::Zero(eta.dim, eta.dim));
        for (std::size_t k = 0; k < nodes; ++k) {
          const Complex v = rule.weight(k) * values[k][i](e / d, e % d);
          for (std::size_t h = 0; h < xdual.size(); ++h) blocks[h] += v * xreps[k][h];
        }
        for (std::size_t h = 0; h < xdual.size(); ++h) mass[h] = std::max(mass[h], blocks[h].norm());
        table->coef[i].push_back(std::move(blocks));
      }
    }
    std::vector<std::size_t> keep;
    for (std::size_t h = 0; h < xdual.size(); ++h) {
      if (mass[h] > kTrimTol * std::max(1.0, scale)) keep.push_back(h);
    }
    for (std::size_t h : keep) {
      table->xdual.push_back(xdual[h]);
      bandwidth = std::max(bandwidth, xdual[h].band());
    }
    for (auto& per_label : table->coef) {
      for (auto& blocks : per_label) {
        std::vector<CMatrix> kept;
        for (std::size_t h : keep) kept.push_back(std::move(blocks[h]));
        blocks = std::move(kept);
      }
    }
  }
  std::vector<Complex> flat;
  for (const auto& row : values) {
    for (const auto& m : row) flat.insert(flat.end(), m.data(), m.data() + m.size());
  }
  const std::string digest = sha256_hex(flat.data(), flat.size() * sizeof(Complex)).substr(0, 16);
  return MatrixSymbol(
      g, order, bandwidth, invariant,
      [table](const GroupPoint& x, const IrrepLabel& xi) { return evaluate_table(*table, x, xi); },
      fmt::format("tabulated(level={},band={},invariant={},sha256={})", rule.level(), max_band(dual),
                  invariant ? 1 : 0, digest));
}

Complex quantize(const MatrixSymbol& sigma, const FourierCoefficients& f, const GroupPoint& x) {
  Complex acc(0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const IrrepLabel& xi = f.labels()[i];
    acc += static_cast<double>(xi.dim) * (rep_matrix(xi, x) * sigma(x, xi) * f.block(i)).trace();
  }
  return acc;
}

SampledFunction quantize_on(const MatrixSymbol& sigma, const FourierCoefficients& f, RulePtr rule) {
  return SampledFunction::sample(rule, [&](const GroupPoint& x) { return quantize(sigma, f, x); });
}

OperatorAction symbol_action(MatrixSymbol sigma, std::vector<IrrepLabel> dual) {
  return [sigma = std::move(sigma), dual = std::move(dual)](const SampledFunction& f) {
    return quantize_on(sigma, fourier_forward(f, dual), f.rule);
  };
}

OperatorAction multiplier_action(std::function<Complex(const IrrepLabel&)> g,
                                 std::vector<IrrepLabel> dual) {
  return [g = std::move(g), dual = std::move(dual)](const SampledFunction& f) {
    FourierCoefficients c = fourier_forward(f, dual);
    for (std::size_t i = 0; i < c.size(); ++i) c.block(i) *= g(c.labels()[i]);
    return fourier_inverse_on(c, f.rule);
  };
}

OperatorAction multiplication_action(std::vector<CoefficientTerm> terms) {
  return [terms = std::move(terms)](const SampledFunction& f) {
    SampledFunction out{f.rule, f.values};
    for (std::size_t k = 0; k < out.values.size(); ++k) {
      out.values[k] *= evaluate_coefficient(terms, f.rule->point(k));
    }
    return out;
  };
}

OperatorAction compose_actions(OperatorAction outer, OperatorAction inner) {
  return [outer = std::move(outer), inner = std::move(inner)](const SampledFunction& f) {
    return outer(inner(f));
  };
}

Complex kernel_from_symbol(const MatrixSymbol& sigma, const std::vector<IrrepLabel>& dual,
                           const GroupPoint& x, const GroupPoint& y) {
  Complex acc(0.0);
  for (const auto& xi : dual) {
    acc += static_cast<double>(xi.dim) * (rep_matrix(xi, y) * sigma(x, xi)).trace();
  }
  return acc;
}

KernelTable kernel_table(const MatrixSymbol& sigma, const std::vector<IrrepLabel>& dual,
                         RulePtr x_grid, RulePtr y_grid) {
  KernelTable t{x_grid, y_grid, CMatrix(x_grid->size(), y_grid->size())};
  std::vector<std::vector<CMatrix>> yreps(y_grid->size());
  for (std::size_t q = 0; q < y_grid->size(); ++q) {
    const GroupPoint y = y_grid->point(q);
    for (const auto& xi : dual) yreps[q].push_back(rep_matrix(xi, y));
  }
  for_each_slice(x_grid->size(), kSlices, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const GroupPoint x = x_grid->point(k);
      std::vector<CMatrix> s;
      for (const auto& xi : dual) s.push_back(sigma(x, xi));
      for (std::size_t q = 0; q < y_grid->size(); ++q) {
        Complex acc(0.0);
        for (std::size_t i = 0; i < dual.size(); ++i) {
          acc += static_cast<double>(dual[i].dim) * (yreps[q][i].transpose().cwiseProduct(s[i])).sum();
        }
        t.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)) = acc;
      }
    }
  });
  return t;
}

namespace {

struct KernelRoute {
  MatrixSymbol sigma;
  RulePtr rule;
  std::vector<IrrepLabel> dual;
  std::vector<std::vector<CMatrix>> reps;  // reps[k][i] = xi_i(y_k)
  std::vector<Complex> q;

  CMatrix operator()(const GroupPoint& x, const IrrepLabel& eta) const {
    const std::size_t h = label_index(dual, eta);
    std::vector<CMatrix> s;
    s.reserve(dual.size());
    for (const auto& xi : dual) s.push_back(sigma(x, xi));
    CMatrix out = CMatrix::Zero(eta.dim, eta.dim);
    for (std::size_t k = 0; k < rule->size(); ++k) {
      Complex r(0.0);
      for (std::size_t i = 0; i < dual.size(); ++i) {
        r += static_cast<double>(dual[i].dim) * (reps[k][i].transpose().cwiseProduct(s[i])).sum();
      }
      out += (rule->weight(k) * q[k] * r) * reps[k][h].adjoint();
    }
    return out;
  }
};

}  // namespace

MatrixSymbol difference_apply(const MatrixSymbol& sigma, const IrrepLabel& xi0, int row, int col,
                              int band, DifferenceRoute route) {
  const GroupSpec g = sigma.group();
  if (!(xi0.group == g)) throw MismatchError("difference label on another group");
  if (row < 0 || col < 0 || row >= xi0.dim || col >= xi0.dim) {
    throw DomainError(fmt::format("entry ({},{}) outside d = {}", row, col, xi0.dim));
  }
  const int out_band = band - xi0.band();
  if (out_band < 0) {
    throw BandError(fmt::format("difference by {} needs band >= {}, got {}", xi0.to_string(),
                                xi0.band(), band),
                    xi0.band());
  }
  auto guard = [out_band, band](const IrrepLabel& eta) {
    if (eta.band() > out_band) {
      throw BandError(fmt::format("difference symbol defined up to band {}, asked for {}", out_band,
                                  eta.to_string()),
                      band + eta.band() - out_band);
    }
  };
  const std::string fp = fmt::format("difference({},{}[{},{}],band={})", sigma.fingerprint(),
                                     xi0.to_string(), row, col, band);
  if (g.is_torus() && route == DifferenceRoute::Automatic) {
    const std::vector<int> l0 = xi0.label;
    return MatrixSymbol(
        g, sigma.order() - 1.0, sigma.x_bandwidth(), sigma.is_invariant(),
        [sigma, l0, guard, g](const GroupPoint& x, const IrrepLabel& m) {
          guard(m);
          std::vector<int> shifted = m.label;
          for (std::size_t j = 0; j < shifted.size(); ++j) shifted[j] -= l0[j];
          return CMatrix(sigma(x, make_label(g, std::move(shifted))) - sigma(x, m));
        },
        fp);
  }
  auto k = std::make_shared<KernelRoute>(
      KernelRoute{sigma, make_rule(g, resolving_level(g, 2 * band)), enumerate_band(g, band), {}, {}});
  k->reps.resize(k->rule->size());
  k->q.resize(k->rule->size());
  for (std::size_t n = 0; n < k->rule->size(); ++n) {
    const GroupPoint y = k->rule->point(n);
    for (const auto& xi : k->dual) k->reps[n].push_back(rep_matrix(xi, y));
    k->q[n] = rep_matrix(xi0, y)(row, col) - (row == col ? 1.0 : 0.0);
  }
  return MatrixSymbol(
      g, sigma.order() - 1.0, sigma.x_bandwidth(), sigma.is_invariant(),
      [k, guard](const GroupPoint& x, const IrrepLabel& eta) {
        guard(eta);
        return (*k)(x, eta);
      },
      fp);
}

namespace {

struct SiteScan {
  std::vector<EllipticSite> sites;
  double max_singular = 0.0;
};

SiteScan scan_sites(const MatrixSymbol& sigma, const std::vector<IrrepLabel>& dual,
                    const QuadratureRule& rule) {
  const std::size_t nodes = rule.size();
  std::vector<std::vector<EllipticSite>> partial(kSlices);
  for_each_slice(nodes, kSlices, [&](std::size_t s, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const GroupPoint x = rule.point(k);
      const auto chart = rule.chart(k);
      for (const auto& xi : dual) {
        const RVector sv = singular_values(sigma(x, xi));
        partial[s].push_back({k, chart, xi, sv.minCoeff(), sv.maxCoeff()});
      }
    }
  });
  SiteScan out;
  for (auto& p : partial) {
    for (auto& site : p) {
      out.max_singular = std::max(out.max_singular, site.s_max);
      out.sites.push_back(std::move(site));
    }
  }
  return out;
}

std::vector<IrrepLabel> singular_labels(const SiteScan& scan, double threshold) {
  std::vector<IrrepLabel> labels;
  for (const auto& site : scan.sites) {
    if (site.s_min > threshold) continue;
    if (std::find(labels.begin(), labels.end(), site.label) == labels.end()) labels.push_back(site.label);
  }
  std::sort(labels.begin(), labels.end(), label_less);
  return labels;
}

}  // namespace

EllipticityReport ellipticity_check(const MatrixSymbol& sigma, double m, int band, RulePtr grid) {
  const GroupSpec g = sigma.group();
  EllipticityReport r;
  r.symbol = sigma.fingerprint();
  r.order = m;
  r.band = band;
  r.level = grid->level();
  const SiteScan scan = scan_sites(sigma, enumerate_band(g, band), *grid);
  r.max_singular = scan.max_singular;
  r.threshold = 1e-10 * scan.max_singular;
  r.sites = scan.sites;
  double c = 0.0;
  bool any_invertible = false;
  for (const auto& site : r.sites) {
    if (site.s_min <= r.threshold) {
      r.non_invertible.push_back(site);
    } else {
      any_invertible = true;
      c = std::max(c, std::pow(site.label.weight, m) / site.s_min);
    }
  }
  r.non_invertible_labels = singular_labels(scan, r.threshold);
  const SiteScan doubled = scan_sites(sigma, enumerate_band(g, 2 * std::max(band, 1)), *grid);
  r.non_invertible_labels_doubled = singular_labels(doubled, 1e-10 * doubled.max_singular);
  if (any_invertible) r.constant = c;
  r.elliptic = any_invertible && std::isfinite(r.constant) &&
               r.non_invertible_labels_doubled.size() <= r.non_invertible_labels.size();
  return r;
}

namespace {

nlohmann::json chart_json(const std::vector<double>& chart) {
  nlohmann::json j = nlohmann::json::array();
  for (double v : chart) j.push_back(v);
  return j;
}

nlohmann::json labels_json(const std::vector<IrrepLabel>& labels) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& xi : labels) j.push_back(xi.to_string());
  return j;
}

}  // namespace

nlohmann::json EllipticityReport::to_json() const {
  nlohmann::json sites_json = nlohmann::json::array();
  for (const auto& s : non_invertible) {
    sites_json.push_back({{"node", s.node},
                          {"chart", chart_json(s.chart)},
                          {"label", s.label.to_string()},
                          {"s_min", s.s_min}});
  }
  nlohmann::json j = {{"symbol", symbol},
                      {"order", order},
                      {"band", band},
                      {"level", level},
                      {"threshold", threshold},
                      {"max_singular", max_singular},
                      {"site_count", sites.size()},
                      {"non_invertible_sites", sites_json},
                      {"non_invertible_labels", labels_json(non_invertible_labels)},
                      {"non_invertible_labels_doubled_band", labels_json(non_invertible_labels_doubled)},
                      {"elliptic", elliptic}};
  j["constant"] = std::isfinite(constant) ? nlohmann::json(constant) : nlohmann::json(nullptr);
  return j;
}

void EllipticityReport::write_csv(std::ostream& os) const {
  os << "node,label,s_min,s_max,invertible,scaled_inverse_norm\n";
  for (const auto& s : sites) {
    const bool inv = s.s_min > threshold;
    os << s.node << ",\"" << s.label.to_string() << "\"," << fmt::format("{:.16e},{:.16e}", s.s_min, s.s_max)
       << ',' << (inv ? 1 : 0) << ','
       << (inv ? fmt::format("{:.16e}", std::pow(s.label.weight, order) / s.s_min) : std::string("inf"))
       << '\n';
  }
}

namespace {

void multi_indices(int n, int max_total, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  // Graded order: total degree first, then lexicographic from the last slot.
  for (int total = 0; total <= max_total; ++total) {
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == n - 1) {
        cur[static_cast<std::size_t>(pos)] = left;
        out.push_back(cur);
        return;
      }
      for (int v = left; v >= 0; --v) {
        cur[static_cast<std::size_t>(pos)] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, total);
  }
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CMatrix differenced(const MatrixSymbol& sigma, const GroupPoint& x, const IrrepLabel& m,
                    const std::vector<int>& beta) {
  const GroupSpec g = sigma.group();
  std::vector<std::vector<int>> terms;
  multi_indices(static_cast<int>(beta.size()), std::accumulate(beta.begin(), beta.end(), 0), terms);
  CMatrix out = CMatrix::Zero(m.dim, m.dim);
  for (const auto& gamma : terms) {
    bool inside = true;
    double coef = 1.0;
    int sign_exp = 0;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      if (gamma[j] > beta[j]) inside = false;
    }
    if (!inside) continue;
    std::vector<int> shifted = m.label;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      coef *= static_cast<double>(binomial(beta[j], gamma[j]));
      sign_exp += beta[j] - gamma[j];
      shifted[j] -= gamma[j];
    }
    const double sign = sign_exp % 2 == 0 ? 1.0 : -1.0;
    out += sign * coef * sigma(x, make_label(g, std::move(shifted)));
  }
  return out;
}

CMatrix x_derivative(const std::function<CMatrix(const GroupPoint&)>& f, std::vector<int> dirs,
                     const GroupPoint& x, double h) {
  if (dirs.empty()) return f(x);
  const int j = dirs.back();
  dirs.pop_back();
  auto inner = [&](const GroupPoint& p) { return x_derivative(f, dirs, p, h); };
  return left_invariant_derivative(inner, j, x, h);
}

}  // namespace

std::vector<ClassConstant> symbol_class_diagnostic(const MatrixSymbol& sigma, double m, int alpha_max,
                                                   int beta_max, RulePtr grid, int band) {
  const GroupSpec g = sigma.group();
  if (beta_max > 0 && !g.is_torus()) {
    throw UnsupportedError("difference diagnostics need a torus");
  }
  if (band < beta_max) {
    throw BandError(fmt::format("band {} exhausted by differences of order {}", band, beta_max), beta_max);
  }
  const int n = g.dimension();
  std::vector<std::vector<int>> alphas, betas;
  multi_indices(n, alpha_max, alphas);
  if (g.is_torus()) {
    multi_indices(n, beta_max, betas);
  } else {
    betas.push_back(std::vector<int>(static_cast<std::size_t>(n), 0));
  }
  std::vector<ClassConstant> table;
  for (const auto& alpha : alphas) {
    const int na = std::accumulate(alpha.begin(), alpha.end(), 0);
    std::vector<int> dirs;
    for (int j = 0; j < n; ++j) {
      for (int r = 0; r < alpha[static_cast<std::size_t>(j)]; ++r) dirs.push_back(j);
    }
    const double h = na <= 1 ? kDefaultStep : 1e-3;
    for (const auto& beta : betas) {
      const int nb = std::accumulate(beta.begin(), beta.end(), 0);
      const auto labels = enumerate_band(g, band - nb);
      std::vector<double> partial(kSlices, 0.0);
      for_each_slice(grid->size(), kSlices, [&](std::size_t s, std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
          const GroupPoint x = grid->point(k);
          for (const auto& xi : labels) {
            auto f = [&](const GroupPoint& p) -> CMatrix {
              return nb == 0 ? sigma(p, xi) : differenced(sigma, p, xi, beta);
            };
            const double v = op_norm(x_derivative(f, dirs, x, h)) * std::pow(xi.weight, nb - m);
            partial[s] = std::max(partial[s], v);
          }
        }
      });
      table.push_back({alpha, beta, *std::max_element(partial.begin(), partial.end())});
    }
  }
  return table;
}

nlohmann::json class_table_to_json(const std::vector<ClassConstant>& table) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : table) {
    j.push_back({{"alpha", row.alpha}, {"beta", row.beta}, {"constant", row.constant}});
  }
  return j;
}

void write_class_csv(std::ostream& os, const std::vector<ClassConstant>& table) {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
  };
  os << "alpha,beta,constant\n";
  for (const auto& row : table) {
    os << '"' << join(row.alpha) << "\",\"" << join(row.beta) << "\","
       << fmt::format("{:.16e}", row.constant) << '\n';
  }
}

}  // namespace liegroup
