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

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"

namespace gaussfid {

/// Quadrature ordering. XXPP = (x1..xn, p1..pn) is the canonical internal
/// ordering; XPXP = (x1, p1, ..., xn, pn) is accepted at the boundary.
enum class ModeOrdering { XXPP, XPXP };

inline std::string_view to_string(ModeOrdering o) {
  return o == ModeOrdering::XXPP ? "xxpp" : "xpxp";
}

inline ModeOrdering parse_ordering(std::string_view s) {
  if (s == "xxpp") return ModeOrdering::XXPP;
  if (s == "xpxp") return ModeOrdering::XPXP;
  throw ParseError("unknown mode ordering '" + std::string(s) + "' (expected xxpp or xpxp)");
}

struct SymplecticForm {
  ModeOrdering ordering;
  Matrix omega;
};

/// Index map p with xpxp[i] = xxpp[p[i]].
inline std::vector<Eigen::Index> xpxp_from_xxpp(Eigen::Index n) {
  std::vector<Eigen::Index> p(static_cast<std::size_t>(2 * n));
  for (Eigen::Index k = 0; k < n; ++k) {
    p[static_cast<std::size_t>(2 * k)] = k;
    p[static_cast<std::size_t>(2 * k + 1)] = n + k;
  }
  return p;
}

/// Permutation matrix P with P * q_from = q_to.
inline Matrix ordering_permutation(Eigen::Index n, ModeOrdering from, ModeOrdering to) {
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  if (from == to) return Matrix::Identity(2 * n, 2 * n);
  const auto map = xpxp_from_xxpp(n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const auto j = map[static_cast<std::size_t>(i)];
    if (to == ModeOrdering::XPXP) {
      p(i, j) = 1.0;
    } else {
      p(j, i) = 1.0;
    }
  }
  return p;
}

/// Omega for n modes. In XXPP ordering this is [[0, 1], [-1, 0]] (x) identity(n).
inline Matrix omega(Eigen::Index n, ModeOrdering ordering = ModeOrdering::XXPP) {
  if (n < 1) throw InvalidArgument("mode count must be at least 1");
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (ordering == ModeOrdering::XXPP) {
      w(k, n + k) = 1.0;
      w(n + k, k) = -1.0;
    } else {
      w(2 * k, 2 * k + 1) = 1.0;
      w(2 * k + 1, 2 * k) = -1.0;
    }
  }
  return w;
}

inline SymplecticForm make_symplectic_form(Eigen::Index n, ModeOrdering ordering) {
  return {ordering, omega(n, ordering)};
}

/// i * Omega as a complex matrix; it squares to the identity.
inline CMatrix i_omega(Eigen::Index n, ModeOrdering ordering = ModeOrdering::XXPP) {
  return Complex(0.0, 1.0) * omega(n, ordering).cast<Complex>();
}

/// max |S Omega S^T - Omega|.
inline double symplectic_residual(const Matrix& s, ModeOrdering ordering = ModeOrdering::XXPP) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    throw InvalidArgument("symplectic matrix must be square with even dimension");
  }
  const Matrix w = omega(s.rows() / 2, ordering);
  return linalg::max_abs(s * w * s.transpose() - w);
}

inline bool is_symplectic(const Matrix& s, double tol = 1e-8,
                          ModeOrdering ordering = ModeOrdering::XXPP) {
  return symplectic_residual(s, ordering) <= tol;
}

/// S^{-1} = -Omega S^T Omega for symplectic S.
inline Matrix symplectic_inverse(const Matrix& s) {
  const Matrix w = omega(s.rows() / 2);
  return -w * s.transpose() * w;
}

// Analytic Heisenberg actions of the Gaussian primitives, XXPP ordering.
// Each returns the 2n x 2n symplectic M with u -> M u, V -> M V M^T.

namespace symplectic {

inline void check_mode(Eigen::Index n, Eigen::Index k) {
  if (k < 0 || k >= n) throw InvalidArgument("mode index out of range");
}

/// exp(i phi a^dag a): a -> a e^{i phi}.
inline Matrix phase_rotation(Eigen::Index n, Eigen::Index k, double phi) {
  check_mode(n, k);
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  const double c = std::cos(phi), s = std::sin(phi);
  m(k, k) = c;
  m(k, n + k) = -s;
  m(n + k, k) = s;
  m(n + k, n + k) = c;
  return m;
}

/// S(xi) = exp((xi^* a^2 - xi a^dag^2)/2), xi = r e^{i phi}:
/// a -> a cosh r - a^dag e^{i phi} sinh r. For phi = 0, x -> e^{-r} x.
inline Matrix squeezer(Eigen::Index n, Eigen::Index k, double r, double phi = 0.0) {
  check_mode(n, k);
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  const double ch = std::cosh(r), sh = std::sinh(r);
  const double c = std::cos(phi), s = std::sin(phi);
  m(k, k) = ch - sh * c;
  m(k, n + k) = -sh * s;
  m(n + k, k) = -sh * s;
  m(n + k, n + k) = ch + sh * c;
  return m;
}

/// B = exp(theta (e^{i phi} a_j a_k^dag - e^{-i phi} a_j^dag a_k)):
/// a_j -> cos(theta) a_j - e^{-i phi} sin(theta) a_k,
/// a_k -> cos(theta) a_k + e^{i phi} sin(theta) a_j.
inline Matrix beam_splitter(Eigen::Index n, Eigen::Index j, Eigen::Index k, double theta,
                            double phi = 0.0) {
  check_mode(n, j);
  check_mode(n, k);
  if (j == k) throw InvalidArgument("beam splitter needs two distinct modes");
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  const double c = std::cos(theta), s = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const Eigen::Index xj = j, pj = n + j, xk = k, pk = n + k;
  m(xj, xj) = c;
  m(xj, xk) = -s * cp;
  m(xj, pk) = -s * sp;
  m(pj, pj) = c;
  m(pj, pk) = -s * cp;
  m(pj, xk) = s * sp;
  m(xk, xk) = c;
  m(xk, xj) = s * cp;
  m(xk, pj) = -s * sp;
  m(pk, pk) = c;
  m(pk, pj) = s * cp;
  m(pk, xj) = s * sp;
  return m;
}

/// Two-mode squeezer: x_j -> ch x_j + sh x_k, p_j -> ch p_j - sh p_k (and j <-> k).
inline Matrix two_mode_squeezer(Eigen::Index n, Eigen::Index j, Eigen::Index k, double r) {
  check_mode(n, j);
  check_mode(n, k);
  if (j == k) throw InvalidArgument("two-mode squeezer needs two distinct modes");
  Matrix m = Matrix::Identity(2 * n, 2 * n);
  const double ch = std::cosh(r), sh = std::sinh(r);
  m(j, j) = ch;
  m(j, k) = sh;
  m(k, k) = ch;
  m(k, j) = sh;
  m(n + j, n + j) = ch;
  m(n + j, n + k) = -sh;
  m(n + k, n + k) = ch;
  m(n + k, n + j) = -sh;
  return m;
}

}  // namespace symplectic
}  // namespace gaussfid
