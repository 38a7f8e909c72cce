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

// Bures distance and metric, quantum Fisher information and fidelity-based
// bounds on the error probability of discriminating N copies.
//
// D_B is reported as 2(1 - F). This is the square of the Bures distance in
// the more common convention.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/fidelity.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/state.hpp"
#include "gaussfid/symplectic.hpp"
#include "gaussfid/williamson.hpp"

namespace gaussfid {

inline double bures_distance(const GaussianState& s1, const GaussianState& s2,
                             const FidelityOptions& opt = {}) {
  return 2.0 * (1.0 - fidelity(s1, s2, opt).F);
}

struct MetricDelta {
  double delta = 0.0;
  int skipped = 0;
};

/// delta = sum_ij dW~_ij dW~_ji / (w_i w_j - 1) in the eigenbasis of
/// W = -2 V i Omega. Pairs with |w_i w_j - 1| <= tol are skipped, which is
/// the pseudo-inverse on the kernel. Both matrices are in XXPP ordering.
inline MetricDelta bures_metric_delta(const Matrix& v, const Matrix& dv,
                                      double tol = Tolerances{}.metric) {
  if (dv.rows() != v.rows() || dv.cols() != v.cols()) {
    throw InvalidArgument("bures_metric_delta: dV has the wrong shape");
  }
  if (linalg::asymmetry(dv) > 1e-12 * std::max(1.0, linalg::max_abs(dv))) {
    throw InvalidArgument("bures_metric_delta: dV is not symmetric");
  }
  const Eigen::Index n = v.rows() / 2;
  const WilliamsonDecomposition wd = williamson(v);

  // W = S U diag(2 nu, -2 nu) U^dagger S^{-1}, with U pairing x_k and p_k
  // into (e_x +- i e_p)/sqrt(2).
  const double s2 = 1.0 / std::sqrt(2.0);
  CMatrix u = CMatrix::Zero(2 * n, 2 * n);
  Vector w(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    u(k, k) = s2;
    u(n + k, k) = Complex(0.0, s2);
    u(k, n + k) = s2;
    u(n + k, n + k) = Complex(0.0, -s2);
    w(k) = 2.0 * wd.nu(k);
    w(n + k) = -2.0 * wd.nu(k);
  }
  const CMatrix p = linalg::to_complex(wd.S) * u;
  const CMatrix p_inv = u.adjoint() * linalg::to_complex(symplectic_inverse(wd.S));
  const CMatrix dw = -2.0 * linalg::to_complex(dv) * i_omega(n);
  const CMatrix t = p_inv * dw * p;

  MetricDelta out;
  Complex acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    for (Eigen::Index j = 0; j < 2 * n; ++j) {
      const double den = w(i) * w(j) - 1.0;
      if (std::abs(den) <= tol) {
        ++out.skipped;
        continue;
      }
      acc += t(i, j) * t(j, i) / den;
    }
  }
  out.delta = acc.real();
  return out;
}

struct MetricEvaluation {
  double ds2 = 0.0;
  /// du^T V^{-1} du / 4.
  double mean_part = 0.0;
  /// delta / 8.
  double cov_part = 0.0;
  int skipped_terms = 0;
  double tol = Tolerances{}.metric;
};

/// ds^2 = du^T V^{-1} du / 4 + delta / 8 at the state s.
inline MetricEvaluation bures_metric(const GaussianState& s, const Vector& du, const Matrix& dv,
                                     double tol = Tolerances{}.metric) {
  const GaussianState c = to_canonical(s);
  if (du.size() != c.mean().size()) throw InvalidArgument("bures_metric: du has the wrong length");
  require_physical(c, Tolerances{}.physical, "state");
  Vector dux = du;
  Matrix dvx = dv;
  if (s.ordering() != ModeOrdering::XXPP) {
    const Matrix p = ordering_permutation(s.modes(), s.ordering(), ModeOrdering::XXPP);
    dux = p * du;
    dvx = p * dv * p.transpose();
  }
  MetricEvaluation ev;
  ev.tol = tol;
  ev.mean_part = 0.25 * dux.dot(linalg::cholesky(c.cov()).solve(dux));
  const MetricDelta d = bures_metric_delta(c.cov(), dvx, tol);
  ev.cov_part = d.delta / 8.0;
  ev.skipped_terms = d.skipped;
  ev.ds2 = ev.mean_part + ev.cov_part;
  return ev;
}

using ScalarFamily = std::function<GaussianState(double)>;
using VectorFamily = std::function<GaussianState(const Vector&)>;

enum class QfiMode { Analytic, FiniteDifference };

struct MomentDerivative {
  Vector du;
  Matrix dv;
};

/// Fourth-order central difference of the moments along `dir`.
inline MomentDerivative moment_derivative(const VectorFamily& family, const Vector& theta0,
                                          const Vector& dir, double h) {
  auto at = [&](double t) {
    GaussianState s = to_canonical(family(theta0 + t * dir));
    require_physical(s, Tolerances{}.physical, "family state inside the stencil");
    return s;
  };
  const GaussianState m2 = at(-2.0 * h), m1 = at(-h), p1 = at(h), p2 = at(2.0 * h);
  MomentDerivative d;
  d.du = (-p2.mean() + 8.0 * p1.mean() - 8.0 * m1.mean() + m2.mean()) / (12.0 * h);
  d.dv = linalg::symmetrize((-p2.cov() + 8.0 * p1.cov() - 8.0 * m1.cov() + m2.cov()) / (12.0 * h));
  return d;
}

/// H(theta0) for a one-parameter family. `h` <= 0 picks 1e-4 for the
/// analytic mode and 1e-3 for finite differences of the fidelity.
inline double qfi_scalar(const ScalarFamily& family, double theta0,
                         QfiMode mode = QfiMode::Analytic, double h = 0.0,
                         double tol = Tolerances{}.metric) {
  if (mode == QfiMode::Analytic) {
    if (h <= 0.0) h = 1e-4;
    VectorFamily vf = [&](const Vector& t) { return family(t(0)); };
    const MomentDerivative d = moment_derivative(vf, Vector::Constant(1, theta0),
                                                 Vector::Constant(1, 1.0), h);
    const GaussianState s = to_canonical(family(theta0));
    return 4.0 * bures_metric(s, d.du, d.dv, tol).ds2;
  }
  if (h <= 0.0) h = 1e-3;
  const GaussianState a = family(theta0), b = family(theta0 + h);
  require_physical(to_canonical(b), Tolerances{}.physical, "family state inside the stencil");
  return 8.0 * (1.0 - fidelity(a, b).F_raw) / (h * h);
}

struct QfiMatrix {
  Matrix H;
  std::vector<std::string> labels;
};

/// H_ij = 4 g_ij, off-diagonal entries from polarization of the metric.
inline QfiMatrix qfi_matrix(const VectorFamily& family, const Vector& theta0, double h = 1e-4,
                            std::vector<std::string> labels = {},
                            double tol = Tolerances{}.metric) {
  const Eigen::Index m = theta0.size();
  if (m == 0) throw InvalidArgument("qfi_matrix: empty parameter vector");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != m) {
    throw InvalidArgument("qfi_matrix: label count does not match the parameter count");
  }
  const GaussianState s = to_canonical(family(theta0));
  std::vector<MomentDerivative> d;
  for (Eigen::Index i = 0; i < m; ++i) {
    d.push_back(moment_derivative(family, theta0, Vector::Unit(m, i), h));
  }
  Vector diag(m);
  for (Eigen::Index i = 0; i < m; ++i) diag(i) = bures_metric(s, d[i].du, d[i].dv, tol).ds2;
  QfiMatrix q;
  q.H = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    q.H(i, i) = 4.0 * diag(i);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double both = bures_metric(s, d[i].du + d[j].du, d[i].dv + d[j].dv, tol).ds2;
      q.H(i, j) = q.H(j, i) = 2.0 * (both - diag(i) - diag(j));
    }
  }
  if (labels.empty()) {
    for (Eigen::Index i = 0; i < m; ++i) labels.push_back("theta" + std::to_string(i));
  }
  q.labels = std::move(labels);
  return q;
}

struct ErrorBounds {
  double lower = 0.0;
  double upper = 0.0;
  int copies = 1;
  double fidelity_used = 0.0;
};

/// (1 - sqrt(1 - F^{2N}))/2 <= p_err <= F^N / 2 for N copies.
inline ErrorBounds error_bounds(double f, int copies) {
  if (copies < 1) throw InvalidArgument("error_bounds: copies must be at least 1");
  if (!(f >= -1e-12 && f <= 1.0 + 1e-12)) {
    throw InvalidArgument("error_bounds: fidelity " + num(f) + " outside [0, 1]");
  }
  f = std::clamp(f, 0.0, 1.0);
  ErrorBounds b;
  b.copies = copies;
  b.fidelity_used = f;
  const double fn = std::pow(f, copies);
  const double x = fn * fn;
  // Rationalized to keep precision when F^{2N} is small.
  b.lower = x / (2.0 * (1.0 + std::sqrt(1.0 - x)));
  b.upper = 0.5 * fn;
  return b;
}

}  // namespace gaussfid
