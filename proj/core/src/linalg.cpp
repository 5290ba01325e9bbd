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

#include "liegroup/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "liegroup/errors.hpp"

namespace liegroup {

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().minCoeff();
}

double distance_to_identity(const CMatrix& m) {
  return (m - CMatrix::Identity(m.rows(), m.cols())).norm();
}

double hermitian_defect(const CMatrix& m) {
  return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() == 0) return RVector();
  if (m.rows() == 1) return RVector::Constant(1, m(0, 0).real());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return es.eigenvalues();
}

double trace_exp_hermitian(const CMatrix& h, double gamma) {
  const RVector ev = hermitian_eigenvalues(h);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) acc += std::exp(-gamma * ev(i));
  if (!std::isfinite(acc)) {
    throw NumericalError("heat trace is not finite (gamma too large for a negative eigenvalue?)");
  }
  return acc;
}

CMatrix exp_hermitian(const CMatrix& h, double gamma) {
  if (h.rows() == 0) return CMatrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  const RVector ev = es.eigenvalues();
  RVector e(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    e(i) = std::exp(-gamma * ev(i));
    if (!std::isfinite(e(i))) throw NumericalError("matrix exponential overflow");
  }
  return es.eigenvectors() * e.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix exp_general(const CMatrix& m) {
  CMatrix out = m.exp();
  if (!out.allFinite()) throw NumericalError("matrix exponential overflow");
  return out;
}

}  // namespace liegroup
