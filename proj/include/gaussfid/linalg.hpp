// Copyright 2026 The gaussfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Small dense linear-algebra helpers shared by the Gaussian and Fock code.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

#include "gaussfid/errors.hpp"

namespace gaussfid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Default tolerances. Every public entry point takes its own copy.
struct Tolerances {
  double physical = 1e-9;
  double reconstruction = 1e-8;
  double round_trip = 1e-10;
  double pure = 1e-9;
  double metric = 1e-9;
};

namespace linalg {

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double asymmetry(const Matrix& m) { return max_abs(m - m.transpose()); }

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

inline CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

/// f(A) for symmetric A through its eigendecomposition.
template <class F>
Matrix symmetric_function(const Matrix& a, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a));
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("symmetric eigendecomposition did not converge");
  }
  Vector fv = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().transpose();
}

/// Principal square root of a positive semidefinite symmetric matrix.
/// Negative eigenvalues from roundoff are clamped to zero.
inline Matrix sqrt_psd(const Matrix& a) {
  return symmetric_function(a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

/// Inverse principal square root of a positive definite symmetric matrix.
inline Matrix inv_sqrt_pd(const Matrix& a) {
  return symmetric_function(a, [](double x) {
    if (!(x > 0.0)) throw NumericalFailure("matrix is not positive definite");
    return 1.0 / std::sqrt(x);
  });
}

/// Cholesky factor of a symmetric positive definite matrix; throws if it is not.
inline Eigen::LLT<Matrix> cholesky(const Matrix& a) {
  Eigen::LLT<Matrix> llt(symmetrize(a));
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("matrix is not positive definite");
  }
  return llt;
}

/// det(A) for symmetric positive definite A.
inline double spd_determinant(const Eigen::LLT<Matrix>& llt) {
  const auto& l = llt.matrixLLT();
  double d = 1.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) d *= l(i, i) * l(i, i);
  return d;
}

inline double min_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(hermitian), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("hermitian eigendecomposition did not converge");
  }
  return es.eigenvalues()(0);
}

inline CMatrix to_complex(const Matrix& m) { return m.cast<Complex>(); }

}  // namespace linalg
}  // namespace gaussfid
