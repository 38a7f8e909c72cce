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
#include <cmath>
#include <string>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/state.hpp"
#include "gaussfid/symplectic.hpp"

namespace gaussfid {

/// V_aux = Omega^T (V1 + V2)^{-1} (Omega/4 + V2 Omega V1), in the ordering of `ordering`.
struct AuxMatrix {
  Matrix V_aux;
  ModeOrdering ordering = ModeOrdering::XXPP;

  Eigen::Index modes() const { return V_aux.rows() / 2; }
  /// W_aux = -2 V_aux i Omega.
  CMatrix W_aux() const { return w_matrix(V_aux, ordering); }
  /// Real matrix 2 V_aux Omega; its eigenvalues are +-i w_aux.
  Matrix rotation_generator() const { return 2.0 * V_aux * omega(modes(), ordering); }
};

inline AuxMatrix aux_matrix(const Matrix& v1, const Matrix& v2,
                            ModeOrdering ordering = ModeOrdering::XXPP) {
  if (v1.rows() != v1.cols() || v2.rows() != v2.cols() || v1.rows() != v2.rows() ||
      v1.rows() == 0 || v1.rows() % 2 != 0) {
    throw InvalidArgument("aux_matrix: covariance matrices must be square, even and of equal size");
  }
  const Eigen::Index n = v1.rows() / 2;
  const Matrix w = omega(n, ordering);
  const auto llt = linalg::cholesky(v1 + v2);
  const Matrix rhs = 0.25 * w + v2 * w * v1;
  return {w.transpose() * llt.solve(rhs), ordering};
}

/// -(W1 + W2)^{-1}(1 + W2 W1), the W-matrix form of the auxiliary matrix.
/// Expanding W = -2 V i Omega shows that this equals +2 V_aux i Omega, i.e.
/// minus AuxMatrix::W_aux(). The spectrum comes in +-w pairs, so both signs
/// give the same F_tot.
inline CMatrix aux_w_from_w(const Matrix& v1, const Matrix& v2) {
  const CMatrix w1 = w_matrix(v1), w2 = w_matrix(v2);
  const CMatrix id = CMatrix::Identity(w1.rows(), w1.cols());
  Eigen::PartialPivLU<CMatrix> lu(w1 + w2);
  return -lu.solve(id + w2 * w1);
}

struct AuxSpectrum {
  /// w >= 1 with |w - 1| > tol, ascending.
  std::vector<double> retained;
  int discarded_pairs = 0;
  /// Every paired w (before discarding), ascending.
  std::vector<double> all;
  /// Largest |Re lambda| relative to ||A||.
  double real_residual = 0.0;
  /// Largest |Im lambda_+ + Im lambda_-| over matched pairs.
  double pairing_residual = 0.0;
  std::vector<std::string> warnings;
};

/// Pairs the spectrum +-i w of a real 2m x 2m matrix into m values w.
/// Pairs with |w - 1| <= tol are discarded and counted.
inline AuxSpectrum paired_spectrum(const Matrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0) {
    throw InvalidArgument("paired_spectrum: matrix must be square with even dimension");
  }
  AuxSpectrum out;
  const Eigen::Index m = a.rows() / 2;
  if (m == 0) return out;
  Eigen::EigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("aux_spectrum: eigendecomposition did not converge");
  }
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
  const double norm = std::max(a.norm(), 1e-300);
  for (const auto& z : ev) out.real_residual = std::max(out.real_residual, std::abs(z.real()) / norm);
  if (out.real_residual > 1e-6) {
    throw NumericalFailure("aux_spectrum: eigenvalues have non-negligible real parts (" +
                           num(out.real_residual) + " relative)");
  }
  std::sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) { return x.imag() < y.imag(); });
  for (Eigen::Index k = 0; k < m; ++k) {
    const double up = ev[static_cast<std::size_t>(m + k)].imag();
    const double down = ev[static_cast<std::size_t>(m - 1 - k)].imag();
    out.pairing_residual = std::max(out.pairing_residual, std::abs(up + down));
    double w = 0.5 * (up - down);
    if (w < 1.0 - 1e-6) {
      throw NumericalFailure("aux_spectrum: eigenvalue w = " + num(w) +
                             " violates w >= 1");
    }
    if (w < 1.0) {
      if (1.0 - w > tol) {
        out.warnings.push_back("w_aux = " + num(w) + " clamped to 1");
      }
      w = 1.0;
    }
    out.all.push_back(w);
  }
  if (out.pairing_residual > 1e-6 * norm) {
    throw NumericalFailure("aux_spectrum: eigenvalues do not come in +-i w pairs");
  }
  std::sort(out.all.begin(), out.all.end());
  for (double w : out.all) {
    if (std::abs(w - 1.0) <= tol) {
      ++out.discarded_pairs;
    } else {
      out.retained.push_back(w);
    }
  }
  return out;
}

inline AuxSpectrum aux_spectrum(const AuxMatrix& aux, double tol = Tolerances{}.pure) {
  return paired_spectrum(aux.rotation_generator(), tol);
}

}  // namespace gaussfid
