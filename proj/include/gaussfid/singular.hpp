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

// Block reduction of V_aux when one or both states have pure modes. In the
// Williamson basis of the purer state, with the pure modes first and the
// interleaved ordering,
//
//   V_aux = [[1/2, C~], [0, B~]],
//
// so W_aux has r unit pairs and the rest of its spectrum comes from
// W~ = -2i B~ omega~.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/spectrum.hpp"
#include "gaussfid/symplectic.hpp"
#include "gaussfid/williamson.hpp"

namespace gaussfid {

struct SingularReduction {
  /// Pure pairs of the purer state.
  Eigen::Index r = 0;
  /// True if the second argument was the purer state.
  bool swapped = false;
  int pure_modes_first = 0;
  int pure_modes_second = 0;
  /// V_aux in the reduced basis (interleaved ordering).
  Matrix V_aux;
  /// max |top-left - 1/2| and max |lower-left| of the reduced V_aux.
  double top_left_residual = 0.0;
  double lower_left_residual = 0.0;
  /// B~, the (n - r)-mode block.
  Matrix B;
  /// Paired spectrum of W~ (nothing discarded).
  std::vector<double> reduced_spectrum;
  /// I_{2k} = 2r + Tr(W~^{2k}), k = 1..n.
  std::vector<double> I;
};

inline int count_pure_modes(const Vector& nu, double tol) {
  int r = 0;
  for (Eigen::Index k = 0; k < nu.size(); ++k) {
    if (nu(k) <= 0.5 + tol) ++r;
  }
  return r;
}

inline SingularReduction singular_reduction(const Matrix& v1_in, const Matrix& v2_in,
                                            double tol = Tolerances{}.pure) {
  if (v1_in.rows() != v2_in.rows()) throw InvalidArgument("singular_reduction: dimension mismatch");
  const Eigen::Index n = v1_in.rows() / 2;
  SingularReduction out;
  const WilliamsonDecomposition w1 = williamson(v1_in), w2 = williamson(v2_in);
  out.pure_modes_first = count_pure_modes(w1.nu, tol);
  out.pure_modes_second = count_pure_modes(w2.nu, tol);
  out.swapped = out.pure_modes_second > out.pure_modes_first;
  const Matrix& v1 = out.swapped ? v2_in : v1_in;
  const Matrix& v2 = out.swapped ? v1_in : v2_in;
  const WilliamsonDecomposition& wd = out.swapped ? w2 : w1;
  out.r = std::max(out.pure_modes_first, out.pure_modes_second);
  const Eigen::Index r = out.r;

  // nu is descending, so reversing the mode order puts the pure modes first.
  Matrix rev = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    rev(k, n - 1 - k) = 1.0;
    rev(n + k, 2 * n - 1 - k) = 1.0;
  }
  const Matrix t = ordering_permutation(n, ModeOrdering::XXPP, ModeOrdering::XPXP) * rev *
                   symplectic_inverse(wd.S);
  const Matrix a = linalg::symmetrize(t * v1 * t.transpose());
  const Matrix b = linalg::symmetrize(t * v2 * t.transpose());
  out.V_aux = aux_matrix(a, b, ModeOrdering::XPXP).V_aux;

  const Eigen::Index m = 2 * r, rest = 2 * (n - r);
  out.top_left_residual = linalg::max_abs(out.V_aux.topLeftCorner(m, m) - 0.5 * Matrix::Identity(m, m));
  out.lower_left_residual = linalg::max_abs(out.V_aux.bottomLeftCorner(rest, m));
  out.B = out.V_aux.bottomRightCorner(rest, rest);

  if (rest > 0) {
    const Matrix gen = 2.0 * out.B * omega(n - r, ModeOrdering::XPXP);
    out.reduced_spectrum = paired_spectrum(gen, 0.0).all;
    // W~^{2k} = (-1)^k gen^{2k}.
    const Matrix g2 = gen * gen;
    Matrix p = Matrix::Identity(rest, rest);
    for (Eigen::Index k = 1; k <= n; ++k) {
      p = p * g2;
      out.I.push_back(2.0 * static_cast<double>(r) + ((k % 2 == 0) ? 1.0 : -1.0) * p.trace());
    }
  } else {
    out.I.assign(static_cast<std::size_t>(n), 2.0 * static_cast<double>(r));
  }
  return out;
}

}  // namespace gaussfid
