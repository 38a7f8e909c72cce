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

// Uhlmann fidelity between two Gaussian states from their first and second
// moments:
//
//   F = F_tot / det(V1 + V2)^{1/4} * exp(-du^T (V1 + V2)^{-1} du / 4),
//   F_tot = prod_k [w_k + sqrt(w_k^2 - 1)]^{1/2},
//
// where +-w_k are the eigenvalues of W_aux = -2 V_aux i Omega and
// V_aux = Omega^T (V1 + V2)^{-1} (Omega/4 + V2 Omega V1).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/invariants.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/spectrum.hpp"
#include "gaussfid/state.hpp"
#include "gaussfid/symplectic.hpp"

namespace gaussfid {

struct FidelityOptions {
  double tol_phys = Tolerances{}.physical;
  double tol_pure = Tolerances{}.pure;
  /// Raw fidelities within this distance above 1 are reported as 1.
  double clamp_tol = 1e-10;
};

struct FidelityReport {
  double F = 0.0;
  /// Value before clamping to [0, 1].
  double F_raw = 0.0;
  double F0 = 0.0;
  double Ftot = 0.0;
  double detV1plusV2 = 0.0;
  /// -du^T (V1 + V2)^{-1} du / 4.
  double disp_exponent = 0.0;
  /// Retained w_aux >= 1, ascending.
  std::vector<double> waux_spectrum;
  int discarded_pairs = 0;
  InvariantSet invariants;
  std::vector<std::string> warnings;
};

/// F_tot from the retained w_aux spectrum.
inline double ftot_from_spectrum(const std::vector<double>& w) {
  double f = 1.0;
  for (double x : w) {
    const double y = std::max(x, 1.0);
    f *= std::sqrt(y + std::sqrt((y - 1.0) * (y + 1.0)));
  }
  return f;
}

namespace detail {

inline void check_pair(const GaussianState& a, const GaussianState& b) {
  if (a.modes() != b.modes()) {
    throw InvalidArgument("states have different mode counts (" + std::to_string(a.modes()) +
                          " vs " + std::to_string(b.modes()) + ")");
  }
}

}  // namespace detail

/// Fidelity between two physical states. Inputs in XPXP are converted first.
inline FidelityReport fidelity(const GaussianState& s1, const GaussianState& s2,
                               const FidelityOptions& opt = {}) {
  detail::check_pair(s1, s2);
  const GaussianState a = to_canonical(s1), b = to_canonical(s2);
  require_physical(a, opt.tol_phys, "first state");
  require_physical(b, opt.tol_phys, "second state");

  FidelityReport rep;
  const Matrix sum = a.cov() + b.cov();
  const auto llt = linalg::cholesky(sum);
  rep.detV1plusV2 = linalg::spd_determinant(llt);
  const Vector du = b.mean() - a.mean();
  rep.disp_exponent = -0.25 * du.dot(llt.solve(du));

  const AuxMatrix aux = aux_matrix(a.cov(), b.cov());
  const AuxSpectrum spec = aux_spectrum(aux, opt.tol_pure);
  rep.waux_spectrum = spec.retained;
  rep.discarded_pairs = spec.discarded_pairs;
  for (const auto& w : spec.warnings) rep.warnings.push_back(w);
  if (spec.discarded_pairs > 0) {
    rep.warnings.push_back("discarded " + std::to_string(spec.discarded_pairs) +
                           " unit w_aux pair(s) (pure-state reduction, tol " +
                           num(opt.tol_pure) + ")");
  }

  rep.invariants = invariant_set(aux, sum);
  rep.Ftot = ftot_from_spectrum(spec.retained);
  rep.F0 = rep.Ftot / std::pow(rep.detV1plusV2, 0.25);
  rep.F_raw = rep.F0 * std::exp(rep.disp_exponent);
  rep.F = rep.F_raw;
  if (rep.F_raw > 1.0) {
    if (rep.F_raw <= 1.0 + opt.clamp_tol) {
      rep.F = 1.0;
      rep.warnings.push_back("fidelity clamped to 1 (raw excess " +
                             num(rep.F_raw - 1.0) + ")");
    } else {
      rep.warnings.push_back("raw fidelity exceeds 1 by " + num(rep.F_raw - 1.0) +
                             "; not clamped");
    }
  }
  return rep;
}

/// Convenience: just the clamped fidelity value.
inline double fidelity_value(const GaussianState& s1, const GaussianState& s2,
                             const FidelityOptions& opt = {}) {
  return fidelity(s1, s2, opt).F;
}

/// W_12 = -2 V_12 i Omega with
/// V_12 = -i Omega/2 + (V1 + i Omega/2)(V1 + V2)^{-1}(V2 + i Omega/2).
inline CMatrix v12_matrix(const Matrix& v1, const Matrix& v2) {
  if (v1.rows() != v2.rows()) throw InvalidArgument("v12: dimension mismatch");
  const Eigen::Index n = v1.rows() / 2;
  const CMatrix half_io = 0.5 * i_omega(n);
  const CMatrix c1 = linalg::to_complex(v1) + half_io;
  const CMatrix c2 = linalg::to_complex(v2) + half_io;
  const auto llt = linalg::cholesky(v1 + v2);
  const CMatrix inv = linalg::to_complex(llt.solve(Matrix::Identity(2 * n, 2 * n)));
  return -half_io + c1 * inv * c2;
}

/// F_tot through the complex matrix V_12 (or V_21 = V_12^dagger):
/// F_tot^4 = det[(sqrt(1 - W12^{-2}) + 1) W12 i Omega].
inline double alt_ftot_v12(const Matrix& v1, const Matrix& v2, bool use_v21 = false) {
  const Eigen::Index n = v1.rows() / 2;
  CMatrix v12 = v12_matrix(v1, v2);
  if (use_v21) v12 = v12.adjoint().eval();
  const CMatrix w12 = -2.0 * v12 * i_omega(n);
  Eigen::ComplexEigenSolver<CMatrix> es(w12, false);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("alt_ftot_v12: eigendecomposition did not converge");
  }
  Complex det(1.0, 0.0);
  for (Eigen::Index i = 0; i < w12.rows(); ++i) {
    const Complex z = es.eigenvalues()(i);
    det *= (std::sqrt(Complex(1.0) - 1.0 / (z * z)) + 1.0) * z;
  }
  // det(i Omega) = (-1)^n.
  if (n % 2 == 1) det = -det;
  if (std::abs(det.imag()) > 1e-7 * std::abs(det)) {
    throw NumericalFailure("alt_ftot_v12: determinant has a non-negligible imaginary part");
  }
  if (!(det.real() > 0.0)) throw NumericalFailure("alt_ftot_v12: non-positive F_tot^4");
  return std::pow(det.real(), 0.25);
}

}  // namespace gaussfid
