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

// Symplectic invariants of a pair of covariance matrices and the closed-form
// fidelities for one, two and three modes built from them.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/spectrum.hpp"
#include "gaussfid/symplectic.hpp"

namespace gaussfid {

struct InvariantSet {
  Eigen::Index modes = 0;
  /// I[k - 1] = I_{2k} = Tr(W_aux^{2k}), k = 1..n.
  std::vector<double> I;
  double Gamma = 0.0;
  double Lambda = 0.0;
  double Delta = 0.0;
  /// Relative imaginary residue left in Lambda.
  double lambda_imag_residue = 0.0;
  /// chi(lambda) = det(lambda - W_aux) = sum_j char_coeffs[j] lambda^j, j = 0..2n.
  std::vector<double> char_coeffs;

  double chi(double lambda) const {
    double acc = 0.0;
    for (auto it = char_coeffs.rbegin(); it != char_coeffs.rend(); ++it) acc = acc * lambda + *it;
    return acc;
  }

  double coeff_norm() const {
    double s = 0.0;
    for (double c : char_coeffs) s += c * c;
    return std::sqrt(s);
  }
};

/// Coefficients of prod_k (lambda^2 - w_k^2) from the power sums
/// p_k = sum_j w_j^{2k} = I_{2k}/2, via Newton's identities.
inline std::vector<double> char_coeffs_from_traces(const std::vector<double>& traces) {
  const std::size_t n = traces.size();
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * e[k - i] * 0.5 * traces[i - 1];
    }
    e[k] = acc / static_cast<double>(k);
  }
  std::vector<double> c(2 * n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    c[2 * (n - k)] = ((k % 2 == 0) ? 1.0 : -1.0) * e[k];
  }
  return c;
}

/// Invariants of an auxiliary matrix; `sum` is V1 + V2 in the same ordering.
/// Gamma and Lambda need the individual matrices, see the overload below.
inline InvariantSet invariant_traces(const AuxMatrix& aux) {
  InvariantSet inv;
  const Eigen::Index n = aux.modes();
  inv.modes = n;
  // W_aux = -i A with A = 2 V_aux Omega, so W_aux^{2k} = (-1)^k A^{2k}.
  const Matrix a = aux.rotation_generator();
  const Matrix a2 = a * a;
  Matrix p = Matrix::Identity(a.rows(), a.cols());
  for (Eigen::Index k = 1; k <= n; ++k) {
    p = p * a2;
    inv.I.push_back(((k % 2 == 0) ? 1.0 : -1.0) * p.trace());
  }
  inv.char_coeffs = char_coeffs_from_traces(inv.I);
  return inv;
}

inline InvariantSet invariant_set(const Matrix& v1, const Matrix& v2) {
  const AuxMatrix aux = aux_matrix(v1, v2);
  InvariantSet inv = invariant_traces(aux);
  const Eigen::Index n = inv.modes;
  const Matrix w = omega(n);
  const double scale = std::pow(2.0, 2.0 * static_cast<double>(n));
  const Matrix id = Matrix::Identity(2 * n, 2 * n);
  inv.Delta = linalg::spd_determinant(linalg::cholesky(v1 + v2));
  inv.Gamma = scale * (w * v1 * w * v2 - 0.25 * id).determinant();
  const CMatrix half_io = 0.5 * i_omega(n);
  const Complex l = scale * (linalg::to_complex(v1) + half_io).determinant() *
                    (linalg::to_complex(v2) + half_io).determinant();
  inv.lambda_imag_residue = std::abs(l.imag()) / std::max(std::abs(l.real()), inv.Delta);
  if (inv.lambda_imag_residue > 1e-8) {
    throw NumericalFailure("invariant_set: Lambda has imaginary residue " +
                           num(inv.lambda_imag_residue));
  }
  inv.Lambda = l.real();
  return inv;
}

/// Used by fidelity(), which already holds V_aux and V1 + V2.
inline InvariantSet invariant_set(const AuxMatrix& aux, const Matrix& sum) {
  InvariantSet inv = invariant_traces(aux);
  inv.Delta = linalg::spd_determinant(linalg::cholesky(sum));
  // chi(0) = (-1)^n Gamma/Delta and chi(1) = (-1)^n Lambda/Delta.
  const double sign = (inv.modes % 2 == 0) ? 1.0 : -1.0;
  inv.Gamma = sign * inv.chi(0.0) * inv.Delta;
  inv.Lambda = sign * inv.chi(1.0) * inv.Delta;
  return inv;
}

/// Roots of the three-mode characteristic polynomial chi = t^3 + p t + q,
/// t = lambda^2 - I_2/6.
struct ThreeModeRoots {
  double p = 0.0;
  double q = 0.0;
  /// Natural scale (I_2/6)^2 for p; cube it for the discriminant.
  double scale = 0.0;
  /// q^2/4 + p^3/27.
  double discriminant = 0.0;
  bool degenerate = false;
  std::array<double, 3> w{};
};

inline ThreeModeRoots three_mode_roots(const InvariantSet& inv, double rel_tol = 1e-12) {
  if (inv.modes != 3 || inv.I.size() != 3) {
    throw InvalidArgument("three_mode_roots: need a three-mode invariant set");
  }
  constexpr double pi = 3.14159265358979323846;
  const double i2 = inv.I[0], i4 = inv.I[1], i6 = inv.I[2];
  ThreeModeRoots r;
  r.p = i2 * i2 / 24.0 - i4 / 4.0;
  r.q = -i2 * i2 * i2 / 108.0 + i2 * i4 / 12.0 - i6 / 6.0;
  const double mean = i2 / 6.0;
  r.scale = mean * mean;
  r.discriminant = r.q * r.q / 4.0 + r.p * r.p * r.p / 27.0;
  if (r.p > rel_tol * r.scale) {
    throw NumericalFailure("three_mode_roots: p = " + num(r.p) +
                           " > 0, the roots would not be real");
  }
  if (std::abs(r.p) <= rel_tol * r.scale) {
    r.degenerate = true;
    r.w.fill(std::sqrt(mean));
    return r;
  }
  const double arg = 3.0 * std::sqrt(3.0) * r.q / (2.0 * r.p * std::sqrt(-r.p));
  const double theta = std::acos(std::clamp(arg, -1.0, 1.0));
  const double amp = 2.0 * std::sqrt(-r.p / 3.0);
  for (int k = 0; k < 3; ++k) {
    const double t = amp * std::cos((theta - 2.0 * pi * k) / 3.0);
    r.w[static_cast<std::size_t>(k)] = std::sqrt(std::max(mean + t, 0.0));
  }
  return r;
}

/// F0 = F_tot / Delta^{1/4} from invariants alone, for n = 1, 2, 3.
/// The one- and two-mode forms are evaluated as
///   1/(sqrt(D + L) - sqrt(L)) = (sqrt(D + L) + sqrt(L))/D,
///   1/(a - sqrt(a^2 - D))     = (a + sqrt(a^2 - D))/D,  a = sqrt(G) + sqrt(L),
/// which avoids the cancellation in the denominators.
inline double closed_form_fidelity(Eigen::Index n, const InvariantSet& inv,
                                   double rel_tol = 1e-12) {
  if (n != inv.modes) throw InvalidArgument("closed_form_fidelity: mode count mismatch");
  const double d = inv.Delta;
  const double l = std::max(inv.Lambda, 0.0);
  switch (n) {
    case 1: {
      const double f2 = (std::sqrt(d + l) + std::sqrt(l)) / d;
      return std::sqrt(f2);
    }
    case 2: {
      const double a = std::sqrt(std::max(inv.Gamma, 0.0)) + std::sqrt(l);
      const double f2 = (a + std::sqrt(std::max(a * a - d, 0.0))) / d;
      return std::sqrt(f2);
    }
    case 3: {
      const auto roots = three_mode_roots(inv, rel_tol);
      double ftot = 1.0;
      for (double w : roots.w) {
        const double y = std::max(w, 1.0);
        ftot *= std::sqrt(y + std::sqrt((y - 1.0) * (y + 1.0)));
      }
      return ftot / std::pow(d, 0.25);
    }
    default:
      throw InvalidArgument("closed_form_fidelity: closed forms exist for 1, 2 and 3 modes only");
  }
}

}  // namespace gaussfid
