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


#include "liegroup/index.hpp"

#include <fmt/format.h>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <ostream>

#include "liegroup/errors.hpp"
#include "liegroup/parallel.hpp"

namespace liegroup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHermitianTol = 1e-12;
constexpr double kStableTol = 1e-6;

double heat_from_spectra(const RVector& a, const RVector& b, double gamma) {
  double sa = 0.0, sb = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) sa += std::exp(-gamma * a(i));
  for (Eigen::Index i = 0; i < b.size(); ++i) sb += std::exp(-gamma * b(i));
  const double out = sa - sb;
  if (!std::isfinite(out)) throw NumericalError("heat trace is not finite");
  return out;
}

// tr e^{-gamma p} for a product that should be Hermitian.
double trace_exp(const CMatrix& p, double gamma, int& non_hermitian) {
  if (hermitian_defect(p) <= kHermitianTol) {
    return trace_exp_hermitian(CMatrix(0.5 * (p + p.adjoint())), gamma);
  }
  ++non_hermitian;
  const Complex t = exp_general(CMatrix(-gamma * p)).trace();
  if (!std::isfinite(t.real())) throw NumericalError("matrix exponential is not finite");
  return t.real();
}

std::string num(double v) { return fmt::format("{:.16e}", v); }

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

double heat_trace_index(const CMatrix& m, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("heat trace needs gamma > 0");
  const CMatrix mm = m.adjoint() * m;
  const CMatrix mmt = m * m.adjoint();
  return heat_from_spectra(hermitian_eigenvalues(mm), hermitian_eigenvalues(mmt), gamma);
}

double heat_trace_index(const GalerkinOperator& m, double gamma) { return heat_trace_index(m.matrix, gamma); }

KernelCount kernel_count(const CMatrix& m, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  KernelCount kc;
  const auto p = static_cast<int>(m.rows());
  const auto q = static_cast<int>(m.cols());
  RVector s;
  if (p > 0 && q > 0) {
    Eigen::BDCSVD<CMatrix> svd(m);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
    s = svd.singularValues();
  }
  kc.sigma_max = s.size() ? s(0) : 0.0;
  const double threshold = rel_tol * kc.sigma_max;
  kc.smallest_retained = kInf;
  kc.largest_discarded = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (kc.sigma_max > 0.0 && s(i) > threshold) {
      ++kc.rank;
      kc.smallest_retained = std::min(kc.smallest_retained, s(i));
    } else {
      kc.largest_discarded = std::max(kc.largest_discarded, s(i));
    }
  }
  kc.kernel_dim = q - kc.rank;
  kc.cokernel_dim = p - kc.rank;
  kc.index = kc.kernel_dim - kc.cokernel_dim;
  if (kc.rank == 0) kc.smallest_retained = 0.0;
  kc.gap = (kc.rank == 0 || kc.largest_discarded == 0.0) ? kInf : kc.smallest_retained / kc.largest_discarded;
  kc.marginal = kc.gap < kMarginalGap;
  return kc;
}

int kernel_count_index(const GalerkinOperator& m, double rel_tol) { return kernel_count(m.matrix, rel_tol).index; }

CMatrix null_space(const CMatrix& m, double rel_tol) {
  const Eigen::Index q = m.cols();
  if (m.rows() == 0) return CMatrix::Identity(q, q);
  if (q == 0) return CMatrix(0, 0);
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  const RVector& s = svd.singularValues();
  const double threshold = rel_tol * (s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(0) > 0.0 && s(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(q - rank);
}

GalerkinOperator index_truncation(const GalerkinOperator& forward, const GalerkinOperator& adjoint_forward,
                                  double rel_tol) {
  if (!(forward.domain == adjoint_forward.domain)) {
    throw MismatchError("index truncation: forward and adjoint maps need the same domain band");
  }
  const PeterWeylBasis& dom = forward.domain;
  const PeterWeylBasis& cod = forward.codomain;
  if (dom.band() > cod.band()) throw BandError("index truncation: codomain band below domain band", dom.band());

  const Eigen::Index p = forward.rows();
  Eigen::Index rank = 0;
  CMatrix range;
  if (forward.rows() > 0 && forward.cols() > 0) {
    Eigen::BDCSVD<CMatrix> svd(forward.matrix, Eigen::ComputeThinU);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
    const RVector& s = svd.singularValues();
    while (rank < s.size() && s(0) > 0.0 && s(rank) > rel_tol * s(0)) ++rank;
    range = svd.matrixU().leftCols(rank);
  } else {
    range = CMatrix(p, 0);
  }
  const CMatrix cokernel = null_space(adjoint_forward.matrix, rel_tol);

  CMatrix frame(p, rank + cokernel.cols());
  frame.leftCols(rank) = range;
  frame.rightCols(cokernel.cols()).setZero();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const BasisEntry& e = dom.entries()[i];
    const auto row = static_cast<Eigen::Index>(cod.index_of(e.label, e.row, e.col));
    frame.block(row, rank, 1, cokernel.cols()) = cokernel.row(static_cast<Eigen::Index>(i));
  }
  if (frame.cols() > 0) {
    Eigen::HouseholderQR<CMatrix> qr(frame);
    frame = qr.householderQ() * CMatrix::Identity(p, frame.cols());
  }

  GalerkinOperator out{dom, cod, frame.adjoint() * forward.matrix, forward.level,
                       fmt::format("index_truncation({})", forward.fingerprint), frame};
  return out;
}

double IndexDensity::integral() const {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < traces.rows(); ++k) acc += grid->weight(static_cast<std::size_t>(k)) * traces.row(k).sum();
  return acc;
}

void IndexDensity::write_csv(std::ostream& os) const {
  os << "node,label,weight,density\n";
  for (Eigen::Index k = 0; k < traces.rows(); ++k) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      os << k << ",\"" << labels[i].to_string() << "\"," << num(grid->weight(static_cast<std::size_t>(k))) << ','
         << num(traces(k, static_cast<Eigen::Index>(i))) << '\n';
    }
  }
}

std::pair<double, IndexDensity> density_route_index(const MatrixSymbol& sigma_a, const MatrixSymbol& sigma_astar,
                                                    double gamma, int band, RulePtr grid, double order) {
  if (!(gamma > 0.0)) throw DomainError("density route needs gamma > 0");
  if (!(sigma_a.group() == sigma_astar.group()) || !(sigma_a.group() == grid->group())) {
    throw MismatchError("density route: symbols and grid on different groups");
  }
  if (!std::isfinite(order)) throw DomainError("density route needs a finite order");
  IndexDensity d;
  d.gamma = gamma;
  d.order = order;
  d.grid = grid;
  d.labels = enumerate_band(sigma_a.group(), band);
  const auto nodes = grid->size();
  d.traces = RMatrix::Zero(static_cast<Eigen::Index>(nodes), static_cast<Eigen::Index>(d.labels.size()));
  std::vector<int> non_hermitian(16, 0);
  for_each_slice(nodes, 16, [&](std::size_t slice, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const GroupPoint x = grid->point(k);
      for (std::size_t i = 0; i < d.labels.size(); ++i) {
        const IrrepLabel& xi = d.labels[i];
        const CMatrix a = sigma_a(x, xi);
        const CMatrix s = sigma_astar(x, xi);
        const double w = order == 0.0 ? 1.0 : std::pow(xi.weight, -2.0 * order);
        const CMatrix p1 = (s * w) * a;
        const CMatrix p2 = (a * w) * s;
        const double t = trace_exp(p1, gamma, non_hermitian[slice]) - trace_exp(p2, gamma, non_hermitian[slice]);
        d.traces(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = xi.dim * t;
      }
    }
  });
  for (int c : non_hermitian) d.non_hermitian += c;
  const double value = d.integral();
  return {value, std::move(d)};
}

GalerkinOperator order_reduce(const MatrixSymbol& sigma, int dom_band, int cod_band) {
  const double m = sigma.order();
  if (!std::isfinite(m)) throw DomainError("order reduction needs a finite order");
  return compose(assemble(lambda_multiplier(sigma.group(), -m), cod_band, cod_band),
                 assemble(sigma, dom_band, cod_band));
}

Operator order_reduce(const Operator& a) {
  const double m = a.order();
  if (!std::isfinite(m)) throw DomainError("order reduction needs a finite order");
  return Operator::product(Operator::multiplier(lambda_multiplier(a.group(), -m)), a);
}

SymbolTrace trace_via_symbol(const MatrixSymbol& sigma, int band, RulePtr grid) {
  SymbolTrace out;
  const GroupSpec& g = sigma.group();
  if (!(sigma.order() < -g.dimension())) {
    out.warning = fmt::format("order {} is not below -dim G = {}; the trace diverges as the band grows",
                              sigma.order(), -g.dimension());
  }
  const auto labels = enumerate_band(g, band);
  std::vector<Complex> per_node(grid->size());
  for_each_slice(grid->size(), 16, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const GroupPoint x = grid->point(k);
      Complex acc(0.0);
      for (const auto& xi : labels) acc += static_cast<double>(xi.dim) * sigma(x, xi).trace();
      per_node[k] = acc;
    }
  });
  Complex acc(0.0);
  for (std::size_t k = 0; k < per_node.size(); ++k) acc += grid->weight(k) * per_node[k];
  out.value = acc;
  return out;
}

IndexReport stabilization_sweep(const Operator& a, const std::vector<int>& bands, const std::vector<double>& gammas,
                                const SweepOptions& opts) {
  if (bands.empty() || gammas.empty()) throw DomainError("sweep needs nonempty band and gamma lists");
  for (double g : gammas) {
    if (!(g > 0.0)) throw DomainError("sweep gammas must be positive");
  }
  IndexReport r;
  r.description = a.description();
  r.group = a.group().name();
  r.order = a.order();
  r.rel_tol = opts.rel_tol;
  r.bands = bands;
  r.gammas = gammas;
  r.order_reduced = opts.order_reduction.value_or(std::isfinite(a.order()) && a.order() != 0.0);
  const Operator e = r.order_reduced ? order_reduce(a) : a;
  r.bandwidth = e.bandwidth();
  const double density_order = r.order_reduced ? a.order() : 0.0;
  const int w = e.bandwidth();

  std::optional<Operator> astar;
  try {
    astar = a.adjoint();
  } catch (const std::exception& ex) {
    r.errors.push_back(fmt::format("adjoint: {}", ex.what()));
  }

  for (int band : bands) {
    BandSummary summary;
    summary.band = band;
    RVector spec_left, spec_right;
    bool ok = false;
    try {
      const GalerkinOperator forward = e.assemble(band, band + w, opts.assembly);
      const GalerkinOperator adjoint_forward =
          restrict_domain(adjoint(e.assemble(band + w, band + 2 * w, opts.assembly)), band);
      const GalerkinOperator m = index_truncation(forward, adjoint_forward, opts.rel_tol);
      summary.rows = static_cast<int>(m.rows());
      summary.cols = static_cast<int>(m.cols());
      summary.count = kernel_count(m.matrix, opts.rel_tol);
      spec_left = hermitian_eigenvalues(m.matrix.adjoint() * m.matrix);
      spec_right = hermitian_eigenvalues(m.matrix * m.matrix.adjoint());
      ok = true;
    } catch (const std::exception& ex) {
      summary.error = ex.what();
      r.errors.push_back(fmt::format("band {}: {}", band, ex.what()));
    }

    std::optional<MatrixSymbol> sa, ss;
    RulePtr grid;
    std::string density_error;
    try {
      if (!astar) throw UnsupportedError("no adjoint symbol");
      sa = a.symbol(band);
      ss = astar->symbol(band);
      grid = make_rule(a.group(), resolving_level(a.group(), 2 * (band + w)));
    } catch (const std::exception& ex) {
      density_error = fmt::format("density: {}", ex.what());
    }

    for (double gamma : gammas) {
      IndexCell c;
      c.band = band;
      c.gamma = gamma;
      std::vector<std::string> errs;
      if (ok) {
        c.kernel_count = summary.count.index;
        try {
          c.heat_trace = heat_from_spectra(spec_left, spec_right, gamma);
        } catch (const std::exception& ex) {
          errs.push_back(fmt::format("heat trace: {}", ex.what()));
        }
      } else {
        errs.push_back(summary.error);
      }
      if (density_error.empty()) {
        try {
          c.density_route = density_route_index(*sa, *ss, gamma, band, grid, density_order).first;
        } catch (const std::exception& ex) {
          errs.push_back(fmt::format("density: {}", ex.what()));
        }
      } else {
        errs.push_back(density_error);
      }
      for (std::size_t i = 0; i < errs.size(); ++i) c.error += (i ? "; " : "") + errs[i];
      if (!c.error.empty()) r.errors.push_back(fmt::format("band {} gamma {}: {}", band, gamma, c.error));
      r.cells.push_back(c);
    }
    r.marginal = r.marginal || (ok && summary.count.marginal);
    r.band_summaries.push_back(std::move(summary));
  }

  bool stable = r.errors.empty();
  const auto& s = r.band_summaries;
  if (s.size() >= 2 && s[s.size() - 1].count.index != s[s.size() - 2].count.index) stable = false;
  for (const auto& c : r.cells) {
    if (!c.error.empty()) continue;
    if (std::abs(c.heat_trace - c.kernel_count) > kStableTol) stable = false;
    if (std::abs(c.density_route - c.kernel_count) > kStableTol) r.density_discrepancy = true;
  }
  r.stable = stable;
  return r;
}

nlohmann::json IndexReport::to_json() const {
  nlohmann::json j;
  j["operator"] = description;
  j["group"] = group;
  j["order"] = finite_or_null(order);
  j["bandwidth"] = bandwidth;
  j["order_reduced"] = order_reduced;
  j["rel_tol"] = rel_tol;
  j["bands"] = bands;
  j["gammas"] = gammas;
  j["verdict"] = verdict();
  j["marginal"] = marginal;
  j["density_discrepancy"] = density_discrepancy;
  j["rows"] = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json row{{"band", c.band},
                       {"gamma", c.gamma},
                       {"heat_trace", c.heat_trace},
                       {"kernel_count", c.kernel_count},
                       {"density_route", c.density_route}};
    if (!c.error.empty()) row["error"] = c.error;
    j["rows"].push_back(row);
  }
  j["margins"] = nlohmann::json::array();
  for (const auto& b : band_summaries) {
    nlohmann::json m{{"band", b.band},
                     {"rows", b.rows},
                     {"cols", b.cols},
                     {"kernel_dim", b.count.kernel_dim},
                     {"cokernel_dim", b.count.cokernel_dim},
                     {"rank", b.count.rank},
                     {"sigma_max", b.count.sigma_max},
                     {"smallest_retained", finite_or_null(b.count.smallest_retained)},
                     {"largest_discarded", b.count.largest_discarded},
                     {"gap", finite_or_null(b.count.gap)},
                     {"marginal", b.count.marginal}};
    if (!b.error.empty()) m["error"] = b.error;
    j["margins"].push_back(m);
  }
  j["errors"] = errors;
  return j;
}

void IndexReport::write_csv(std::ostream& os) const {
  os << "band,gamma,heat_trace,kernel_count,density_route,error\n";
  for (const auto& c : cells) {
    os << c.band << ',' << num(c.gamma) << ',' << num(c.heat_trace) << ',' << c.kernel_count << ','
       << num(c.density_route) << ",\"" << c.error << "\"\n";
  }
}

void IndexReport::write_margins_csv(std::ostream& os) const {
  os << "band,rows,cols,kernel_dim,cokernel_dim,rank,sigma_max,smallest_retained,largest_discarded,gap,marginal\n";
  for (const auto& b : band_summaries) {
    os << b.band << ',' << b.rows << ',' << b.cols << ',' << b.count.kernel_dim << ',' << b.count.cokernel_dim << ','
       << b.count.rank << ',' << num(b.count.sigma_max) << ',' << num(b.count.smallest_retained) << ','
       << num(b.count.largest_discarded) << ',' << num(b.count.gap) << ',' << (b.count.marginal ? 1 : 0) << '\n';
  }
}

}  // namespace liegroup
