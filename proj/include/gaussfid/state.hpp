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

#include <string>
#include <utility>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/symplectic.hpp"

namespace gaussfid {

/// First and second moments of an n-mode Gaussian state, hbar = 1, so the
/// vacuum has covariance identity/2. Immutable once constructed.
class GaussianState {
 public:
  GaussianState(Vector mean, Matrix cov, ModeOrdering ordering = ModeOrdering::XXPP)
      : mean_(std::move(mean)), cov_(std::move(cov)), ordering_(ordering) {
    if (cov_.rows() != cov_.cols() || cov_.rows() == 0 || cov_.rows() % 2 != 0) {
      throw InvalidArgument("covariance matrix must be square with even, non-zero dimension");
    }
    if (mean_.size() != cov_.rows()) {
      throw InvalidArgument("mean vector length " + std::to_string(mean_.size()) +
                            " does not match covariance dimension " +
                            std::to_string(cov_.rows()));
    }
  }

  /// Zero-mean state.
  explicit GaussianState(const Matrix& cov, ModeOrdering ordering = ModeOrdering::XXPP)
      : GaussianState(Vector::Zero(cov.rows()), cov, ordering) {}

  Eigen::Index modes() const { return cov_.rows() / 2; }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }
  ModeOrdering ordering() const { return ordering_; }

 private:
  Vector mean_;
  Matrix cov_;
  ModeOrdering ordering_;
};

struct PhysicalityReport {
  bool symmetric = false;
  double asymmetry = 0.0;
  /// Smallest eigenvalue of V + i Omega / 2.
  double min_eig_shifted = 0.0;
  bool physical = false;
};

/// Checks symmetry and the uncertainty principle V + i Omega/2 >= 0.
inline PhysicalityReport validate_cov(const Matrix& cov, double tol = Tolerances{}.physical,
                                      ModeOrdering ordering = ModeOrdering::XXPP) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0) {
    throw InvalidArgument("covariance matrix must be square with even, non-zero dimension");
  }
  PhysicalityReport r;
  r.asymmetry = linalg::asymmetry(cov);
  r.symmetric = r.asymmetry <= tol;
  const Eigen::Index n = cov.rows() / 2;
  const CMatrix shifted = linalg::to_complex(linalg::symmetrize(cov)) + 0.5 * i_omega(n, ordering);
  r.min_eig_shifted = linalg::min_eigenvalue(shifted);
  r.physical = r.symmetric && r.min_eig_shifted >= -tol;
  return r;
}

inline PhysicalityReport validate_state(const GaussianState& s,
                                        double tol = Tolerances{}.physical) {
  return validate_cov(s.cov(), tol, s.ordering());
}

/// Throws InvalidArgument naming the offending quantity if `s` is unphysical.
inline void require_physical(const GaussianState& s, double tol, const char* what = "state") {
  const auto r = validate_state(s, tol);
  if (!r.symmetric) {
    throw InvalidArgument(std::string(what) + ": covariance matrix is not symmetric (asymmetry " +
                          num(r.asymmetry) + ")");
  }
  if (!r.physical) {
    throw InvalidArgument(std::string(what) +
                          ": covariance violates the uncertainty principle (min_eig_shifted = " +
                          num(r.min_eig_shifted) + ")");
  }
}

inline GaussianState reorder_state(const GaussianState& s, ModeOrdering target) {
  if (s.ordering() == target) return s;
  const Matrix p = ordering_permutation(s.modes(), s.ordering(), target);
  return GaussianState(p * s.mean(), p * s.cov() * p.transpose(), target);
}

inline GaussianState to_canonical(const GaussianState& s) {
  return reorder_state(s, ModeOrdering::XXPP);
}

/// Tensor product a (x) b in XXPP ordering; modes of `a` come first.
inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const GaussianState ca = to_canonical(a), cb = to_canonical(b);
  const Eigen::Index na = ca.modes(), nb = cb.modes(), n = na + nb;
  Vector u(2 * n);
  u << ca.mean().head(na), cb.mean().head(nb), ca.mean().tail(na), cb.mean().tail(nb);
  // Index of each block's quadratures inside the joint XXPP vector.
  auto place = [n](Eigen::Index offset, Eigen::Index m, Eigen::Index i) {
    return i < m ? offset + i : n + offset + (i - m);
  };
  Matrix v = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * na; ++i)
    for (Eigen::Index j = 0; j < 2 * na; ++j)
      v(place(0, na, i), place(0, na, j)) = ca.cov()(i, j);
  for (Eigen::Index i = 0; i < 2 * nb; ++i)
    for (Eigen::Index j = 0; j < 2 * nb; ++j)
      v(place(na, nb, i), place(na, nb, j)) = cb.cov()(i, j);
  return GaussianState(std::move(u), std::move(v));
}

/// W = -2 V i Omega.
inline CMatrix w_matrix(const Matrix& cov, ModeOrdering ordering = ModeOrdering::XXPP) {
  return -2.0 * linalg::to_complex(cov) * i_omega(cov.rows() / 2, ordering);
}

/// Inverse of w_matrix: V = -W i Omega / 2.
inline CMatrix cov_from_w(const CMatrix& w, ModeOrdering ordering = ModeOrdering::XXPP) {
  return -0.5 * w * i_omega(w.rows() / 2, ordering);
}

}  // namespace gaussfid
