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

// Gibbs (exponential) representation rho = exp[-(Q-u)^T G (Q-u)/2] and the
// symplectic-action calculus that connects it to the covariance matrix.

#include <cmath>
#include <limits>
#include <string>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/state.hpp"
#include "gaussfid/symplectic.hpp"
#include "gaussfid/williamson.hpp"

namespace gaussfid {

/// Odd scalar functions whose symplectic action is supported.
enum class OddFunction {
  Identity,       ///< f(x) = x
  GibbsExponent,  ///< g(v) = 2 arcoth(2v)
  CovFromGibbs,   ///< v(g) = coth(g/2)/2
  SquareRoot,     ///< v_sq(v) = (sqrt(1 - 1/(4v^2)) + 1) v
  Partition,      ///< z(g) = 1/(e^{g/2} - e^{-g/2})
};

inline double apply_odd(OddFunction f, double x) {
  switch (f) {
    case OddFunction::Identity:
      return x;
    case OddFunction::GibbsExponent: {
      const double y = 2.0 * x;
      if (!(std::abs(y) > 1.0)) {
        throw PureLimitError("2 arcoth(2v) is undefined at |v| <= 1/2");
      }
      return std::log((y + 1.0) / (y - 1.0));
    }
    case OddFunction::CovFromGibbs:
      if (x == 0.0) throw NumericalFailure("coth(g/2)/2 is undefined at g = 0");
      return 0.5 / std::tanh(0.5 * x);
    case OddFunction::SquareRoot: {
      if (x == 0.0) throw NumericalFailure("square-root kernel is undefined at v = 0");
      const double s = 1.0 - 1.0 / (4.0 * x * x);
      return (std::sqrt(std::max(s, 0.0)) + 1.0) * x;
    }
    case OddFunction::Partition:
      if (x == 0.0) throw NumericalFailure("partition kernel is undefined at g = 0");
      return 0.5 / std::sinh(0.5 * x);
  }
  throw InvalidArgument("unknown odd function");
}

/// f_*(M) = S [f(D) + f(D)] S^T from the Williamson decomposition of M.
inline Matrix symplectic_action_odd(OddFunction f, const Matrix& m) {
  const auto wd = williamson(m);
  const Eigen::Index n = wd.nu.size();
  Vector fd(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    fd(k) = fd(n + k) = apply_odd(f, wd.nu(k));
  }
  return wd.S * fd.asDiagonal() * wd.S.transpose();
}

namespace detail {

/// f(A) for diagonalizable complex A through A = P diag(lambda) P^{-1}.
template <class F>
CMatrix diagonalizable_function(const CMatrix& a, F&& f) {
  Eigen::ComplexEigenSolver<CMatrix> es(a);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("complex eigendecomposition did not converge");
  }
  const CMatrix& p = es.eigenvectors();
  CVector fl(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) fl(i) = f(es.eigenvalues()(i));
  Eigen::PartialPivLU<CMatrix> lu(p);
  if (!(lu.rcond() > 1e3 * std::numeric_limits<double>::epsilon())) {
    throw NumericalFailure("matrix is numerically defective; eigenvector basis is singular");
  }
  return p * fl.asDiagonal() * lu.inverse();
}

}  // namespace detail

/// f(M i Omega) i Omega, evaluated as an ordinary matrix function.
/// Equals symplectic_action_odd for odd f.
inline Matrix symplectic_action_direct(OddFunction f, const Matrix& m) {
  const Eigen::Index n = m.rows() / 2;
  const CMatrix io = i_omega(n);
  const CMatrix fm = detail::diagonalizable_function(
      linalg::to_complex(m) * io, [f](const Complex& z) { return Complex(apply_odd(f, z.real())); });
  const CMatrix r = fm * io;
  if (linalg::max_abs(CMatrix(r.imag().cast<Complex>())) >
      1e-8 * std::max(1.0, linalg::max_abs(r))) {
    throw NumericalFailure("symplectic action produced a non-real result");
  }
  return r.real();
}

struct GibbsRepresentation {
  Matrix G;
  /// Trace of the unnormalized operator exp[-Q^T G Q / 2].
  double Z = 0.0;
};

/// G = Omega^T g_*(V) Omega with g(v) = 2 arcoth(2v). Fails in the pure limit.
inline GibbsRepresentation gibbs_from_cov(const Matrix& cov, double pure_tol = 1e-9) {
  const auto wd = williamson(cov);
  const Eigen::Index n = wd.nu.size();
  if (wd.nu.minCoeff() < 0.5 + pure_tol) {
    throw PureLimitError("gibbs_from_cov: symplectic eigenvalue " +
                         num(wd.nu.minCoeff()) +
                         " is at the pure bound 1/2; the Gibbs matrix diverges");
  }
  Vector gd(2 * n);
  double z = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    gd(k) = gd(n + k) = apply_odd(OddFunction::GibbsExponent, wd.nu(k));
    z *= std::sqrt(wd.nu(k) * wd.nu(k) - 0.25);
  }
  const Matrix gstar = wd.S * gd.asDiagonal() * wd.S.transpose();
  const Matrix w = omega(n);
  return {linalg::symmetrize(w.transpose() * gstar * w), z};
}

/// V = v_*(-Omega G Omega) with v(g) = coth(g/2)/2.
inline Matrix cov_from_gibbs(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0 || g.rows() % 2 != 0) {
    throw InvalidArgument("Gibbs matrix must be square with even, non-zero dimension");
  }
  const Matrix w = omega(g.rows() / 2);
  const Matrix m = linalg::symmetrize(-w * g * w);
  return linalg::symmetrize(symplectic_action_odd(OddFunction::CovFromGibbs, m));
}

namespace detail {
inline void require_physical_cov(const Matrix& cov, const char* what) {
  const auto r = validate_cov(cov);
  if (!r.physical) {
    throw InvalidArgument(std::string(what) + ": unphysical covariance (min_eig_shifted = " +
                          num(r.min_eig_shifted) + ")");
  }
}
}  // namespace detail

/// Z = prod_k sqrt(v_k^2 - 1/4); zero for pure states.
inline double partition_function(const Matrix& cov) {
  detail::require_physical_cov(cov, "partition_function");
  const Vector nu = symplectic_eigenvalues(cov);
  double z = 1.0;
  for (Eigen::Index k = 0; k < nu.size(); ++k) {
    z *= std::sqrt(std::max(nu(k) * nu(k) - 0.25, 0.0));
  }
  return z;
}

/// Z = det(V + i Omega / 2)^{1/2}, the coordinate-free form.
inline double partition_function_det(const Matrix& cov) {
  detail::require_physical_cov(cov, "partition_function_det");
  const Eigen::Index n = cov.rows() / 2;
  const Complex d = (linalg::to_complex(cov) + 0.5 * i_omega(n)).determinant();
  return std::sqrt(std::max(d.real(), 0.0));
}

/// Tr rho^2 = prod_k 1/(2 v_k).
inline double purity(const Matrix& cov) {
  detail::require_physical_cov(cov, "purity");
  const Vector nu = symplectic_eigenvalues(cov);
  double p = 1.0;
  for (Eigen::Index k = 0; k < nu.size(); ++k) p *= 0.5 / nu(k);
  return p;
}

/// Covariance of the normalized sqrt(rho): v -> (sqrt(1 - 1/(4v^2)) + 1) v.
inline Matrix square_root_cov(const Matrix& cov) {
  detail::require_physical_cov(cov, "square_root_cov");
  return linalg::symmetrize(symplectic_action_odd(OddFunction::SquareRoot, cov));
}

/// W_sq = (sqrt(1 - W^{-2}) + 1) W as a direct matrix function.
inline CMatrix square_root_w(const CMatrix& w) {
  return detail::diagonalizable_function(w, [](const Complex& z) {
    return (std::sqrt(Complex(1.0) - 1.0 / (z * z)) + 1.0) * z;
  });
}

/// W'' of the operator product exp(-Q^T G1 Q/2) exp(-Q^T G2 Q/2):
/// W'' = 1 + (W2 - 1)(W2 + W1)^{-1}(W1 - 1).
inline CMatrix product_w(const CMatrix& w1, const CMatrix& w2) {
  if (w1.rows() != w2.rows() || w1.cols() != w2.cols() || w1.rows() != w1.cols()) {
    throw InvalidArgument("product_w: dimension mismatch");
  }
  const Eigen::Index d = w1.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  Eigen::PartialPivLU<CMatrix> lu(w2 + w1);
  if (!(lu.rcond() > 1e3 * std::numeric_limits<double>::epsilon())) {
    throw NumericalFailure("product_w: W1 + W2 is singular");
  }
  return id + (w2 - id) * lu.solve(w1 - id);
}

}  // namespace gaussfid
