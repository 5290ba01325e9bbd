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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace liegroup {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Spectral norm (largest singular value). Zero for empty matrices.
double op_norm(const CMatrix& m);

/// Smallest singular value of a square matrix.
double min_singular_value(const CMatrix& m);

/// Frobenius distance to the identity, used for unitarity checks.
double distance_to_identity(const CMatrix& m);

/// ||m - m^*||_F / max(1, ||m||_F).
double hermitian_defect(const CMatrix& m);

/// Eigenvalues of a Hermitian matrix, ascending. Throws NumericalError on
/// solver failure.
RVector hermitian_eigenvalues(const CMatrix& m);

/// tr exp(-gamma * h) for Hermitian h, through its eigenvalues. Throws
/// NumericalError when the result is not finite.
double trace_exp_hermitian(const CMatrix& h, double gamma);

/// exp(-gamma * h) for Hermitian h.
CMatrix exp_hermitian(const CMatrix& h, double gamma);

/// exp(m) for a general square matrix (Pade scaling-and-squaring).
CMatrix exp_general(const CMatrix& m);

}  // namespace liegroup
