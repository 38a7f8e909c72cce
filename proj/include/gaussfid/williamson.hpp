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

#include <algorithm>
#include <numeric>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/symplectic.hpp"

namespace gaussfid {

/// V = S (D + D) S^T with S symplectic and D = diag(nu), nu sorted descending.
/// XXPP ordering.
struct WilliamsonDecomposition {
  Matrix S;
  Vector nu;

  /// S (D + D) S^T.
  Matrix reconstruct() const {
    const Eigen::Index n = nu.size();
    Vector d(2 * n);
    d << nu, nu;
    return S * d.asDiagonal() * S.transpose();
  }
};

/// Williamson normal form of a symmetric positive definite covariance matrix.
///
/// A = V^{1/2} Omega V^{1/2} is real antisymmetric and iA is Hermitian with
/// eigenvalues +-nu_k. For iA z = nu z with z = a + ib one has A a = nu b and
/// A b = -nu a, so the columns sqrt(2) b_k, sqrt(2) a_k form an orthogonal O
/// with O^T A O = [[0, D], [-D, 0]]. Then S = V^{1/2} O (D^{-1/2} + D^{-1/2}).
inline WilliamsonDecomposition williamson(const Matrix& cov,
                                          double tol = Tolerances{}.reconstruction) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0) {
    throw InvalidArgument("covariance matrix must be square with even, non-zero dimension");
  }
  const Eigen::Index n = cov.rows() / 2;
  const Matrix v = linalg::symmetrize(cov);

  Eigen::SelfAdjointEigenSolver<Matrix> ves(v);
  if (ves.info() != Eigen::Success || !(ves.eigenvalues()(0) > 0.0)) {
    throw NumericalFailure("williamson: covariance matrix is not positive definite");
  }
  const Vector sq = ves.eigenvalues().cwiseSqrt();
  const Matrix vhalf = ves.eigenvectors() * sq.asDiagonal() * ves.eigenvectors().transpose();

  const Matrix a = vhalf * omega(n) * vhalf;
  const CMatrix ia = Complex(0.0, 1.0) * linalg::to_complex(a);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitize(ia));
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("williamson: hermitian eigendecomposition did not converge");
  }

  // Eigenvalues ascend; the top n are the positive ones. Order them descending.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  for (auto& i : idx) i = 2 * n - 1 - i;

  WilliamsonDecomposition out;
  out.nu.resize(n);
  Matrix o(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index col = idx[static_cast<std::size_t>(k)];
    const double nu = es.eigenvalues()(col);
    if (!(nu > 0.0)) throw NumericalFailure("williamson: non-positive symplectic eigenvalue");
    out.nu(k) = nu;
    const CVector z = es.eigenvectors().col(col);
    o.col(k) = std::sqrt(2.0) * z.imag();
    o.col(n + k) = std::sqrt(2.0) * z.real();
  }
  Vector scale(2 * n);
  scale << out.nu.cwiseSqrt().cwiseInverse(), out.nu.cwiseSqrt().cwiseInverse();
  out.S = vhalf * o * scale.asDiagonal();

  const double sres = symplectic_residual(out.S);
  const double vres = linalg::max_abs(out.reconstruct() - v) / std::max(1.0, linalg::max_abs(v));
  if (sres > tol || vres > tol) {
    throw NumericalFailure("williamson: decomposition failed validation (symplectic residual " +
                           num(sres) + ", reconstruction residual " +
                           num(vres) + ")");
  }
  return out;
}

/// Symplectic eigenvalues only, sorted descending.
inline Vector symplectic_eigenvalues(const Matrix& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0) {
    throw InvalidArgument("covariance matrix must be square with even, non-zero dimension");
  }
  const Eigen::Index n = cov.rows() / 2;
  const Matrix vhalf = linalg::sqrt_psd(cov);
  const CMatrix ia = Complex(0.0, 1.0) * linalg::to_complex(vhalf * omega(n) * vhalf);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitize(ia), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("symplectic eigenvalues: eigendecomposition did not converge");
  }
  return es.eigenvalues().tail(n).reverse();
}

}  // namespace gaussfid
