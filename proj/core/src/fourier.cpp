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

#include "liegroup/fourier.hpp"

#include <fmt/format.h>

#include <cmath>

#include "liegroup/errors.hpp"
#include "liegroup/parallel.hpp"

namespace liegroup {

namespace {
constexpr std::size_t kSlices = 16;
}  // namespace

SampledFunction SampledFunction::sample(RulePtr rule,
                                        const std::function<Complex(const GroupPoint&)>& f) {
  SampledFunction out{rule, std::vector<Complex>(rule->size())};
  for_each_slice(rule->size(), kSlices, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) out.values[k] = f(rule->point(k));
  });
  return out;
}

Complex SampledFunction::inner(const SampledFunction& other) const {
  if (rule != other.rule && !(rule->group() == other.rule->group() &&
                              rule->level() == other.rule->level())) {
    throw MismatchError("inner product of functions sampled on different rules");
  }
  Complex acc(0.0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    acc += rule->weight(k) * values[k] * std::conj(other.values[k]);
  }
  return acc;
}

double SampledFunction::l2_norm() const { return std::sqrt(std::max(0.0, inner(*this).real())); }

const CMatrix* FourierCoefficients::find(const IrrepLabel& xi) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == xi) return &blocks_[i];
  }
  return nullptr;
}

void FourierCoefficients::push(IrrepLabel xi, CMatrix block) {
  if (!(xi.group == group_)) throw MismatchError("coefficient label on another group");
  if (block.rows() != xi.dim || block.cols() != xi.dim) {
    throw MismatchError(fmt::format("coefficient block for {} must be {}x{}", xi.to_string(),
                                    xi.dim, xi.dim));
  }
  labels_.push_back(std::move(xi));
  blocks_.push_back(std::move(block));
}

double dual_cutoff(const std::vector<IrrepLabel>& dual) {
  double c = 1.0;
  for (const auto& xi : dual) c = std::max(c, xi.weight);
  return c;
}

FourierCoefficients fourier_forward(const SampledFunction& f, const std::vector<IrrepLabel>& dual) {
  const QuadratureRule& rule = *f.rule;
  for (const auto& xi : dual) {
    if (!(xi.group == rule.group())) {
      throw MismatchError(fmt::format("dual of {} applied to a function on {}", xi.group.name(),
                                      rule.group().name()));
    }
  }
  if (f.values.size() != rule.size()) throw MismatchError("value count differs from node count");
  const std::size_t slices = std::min(kSlices, std::max<std::size_t>(1, rule.size()));
  std::vector<std::vector<CMatrix>> partial(slices);
  for_each_slice(rule.size(), slices, [&](std::size_t s, std::size_t b, std::size_t e) {
    auto& acc = partial[s];
    for (const auto& xi : dual) acc.push_back(CMatrix::Zero(xi.dim, xi.dim));
    for (std::size_t k = b; k < e; ++k) {
      const GroupPoint x = rule.point(k);
      const Complex wf = rule.weight(k) * f.values[k];
      for (std::size_t i = 0; i < dual.size(); ++i) acc[i] += wf * rep_matrix(dual[i], x).adjoint();
    }
  });
  FourierCoefficients out(rule.group(), dual_cutoff(dual));
  for (std::size_t i = 0; i < dual.size(); ++i) {
    CMatrix sum = CMatrix::Zero(dual[i].dim, dual[i].dim);
    for (const auto& p : partial) {
      if (!p.empty()) sum += p[i];
    }
    out.push(dual[i], std::move(sum));
  }
  return out;
}

Complex fourier_inverse(const FourierCoefficients& c, const GroupPoint& x) {
  Complex acc(0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const IrrepLabel& xi = c.labels()[i];
    acc += static_cast<double>(xi.dim) * (rep_matrix(xi, x) * c.block(i)).trace();
  }
  return acc;
}

SampledFunction fourier_inverse_on(const FourierCoefficients& c, RulePtr rule) {
  return SampledFunction::sample(rule, [&](const GroupPoint& x) { return fourier_inverse(c, x); });
}

double plancherel_norm(const FourierCoefficients& c) { return sobolev_norm(c, 0.0); }

double sobolev_norm(const FourierCoefficients& c, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const IrrepLabel& xi = c.labels()[i];
    const double scale = s == 0.0 ? 1.0 : std::pow(xi.weight, 2.0 * s);
    acc += xi.dim * scale * c.block(i).squaredNorm();
  }
  return std::sqrt(acc);
}

MatrixSymbol lambda_multiplier(const GroupSpec& group, double s) {
  return weight_power_symbol(group, s);
}

nlohmann::json group_to_json(const GroupSpec& g) {
  switch (g.kind()) {
    case GroupKind::Torus:
      return {{"kind", "torus"}, {"n", g.torus_rank()}};
    case GroupKind::SU2:
      return {{"kind", "su2"}};
    case GroupKind::SU3:
      return {{"kind", "su3"}};
  }
  return {};
}

GroupSpec group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("group must be an object with a string \"kind\"");
  }
  const std::string kind = j["kind"];
  if (kind == "torus") {
    if (!j.contains("n") || !j["n"].is_number_integer()) {
      throw ConfigError("torus group needs an integer \"n\"");
    }
    const int n = j["n"];
    if (n < 1) throw ConfigError("torus dimension \"n\" must be >= 1");
    return GroupSpec::torus(n);
  }
  if (kind == "su2") return GroupSpec::su2();
  if (kind == "su3") return GroupSpec::su3();
  throw ConfigError(fmt::format("unknown group kind \"{}\" (expected torus, su2, su3)", kind));
}

nlohmann::json to_json(const FourierCoefficients& c) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const CMatrix& b = c.block(i);
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
      for (Eigen::Index q = 0; q < b.cols(); ++q) {
        rr.push_back(b(r, q).real());
        ri.push_back(b(r, q).imag());
      }
      re.push_back(rr);
      im.push_back(ri);
    }
    entries.push_back({{"label", c.labels()[i].label},
                       {"dim", c.labels()[i].dim},
                       {"re", re},
                       {"im", im}});
  }
  return {{"group", group_to_json(c.group())}, {"cutoff", c.cutoff()}, {"entries", entries}};
}

FourierCoefficients coefficients_from_json(const nlohmann::json& j) {
  const GroupSpec g = group_from_json(j.at("group"));
  FourierCoefficients c(g, j.at("cutoff").get<double>());
  for (const auto& e : j.at("entries")) {
    IrrepLabel xi = make_label(g, e.at("label").get<std::vector<int>>());
    CMatrix b(xi.dim, xi.dim);
    for (int r = 0; r < xi.dim; ++r) {
      for (int q = 0; q < xi.dim; ++q) {
        b(r, q) = Complex(e.at("re").at(r).at(q).get<double>(), e.at("im").at(r).at(q).get<double>());
      }
    }
    c.push(std::move(xi), std::move(b));
  }
  return c;
}

}  // namespace liegroup
