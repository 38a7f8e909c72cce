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
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/state.hpp"
#include "gaussfid/symplectic.hpp"

namespace gaussfid {

// State recipes. All results are XXPP with vacuum = identity/2 and
// a = (x + ip)/sqrt(2), so a coherent amplitude alpha has mean sqrt(2)(Re, Im).

struct Vacuum {
  Eigen::Index modes = 1;
};
struct Thermal {
  std::vector<double> nbar;
};
struct Coherent {
  std::vector<std::complex<double>> alpha;
};
struct Squeezed {
  std::vector<double> r;
  std::vector<double> phi;  ///< empty means all zero
};
struct TwoModeSqueezed {
  Eigen::Index modes = 2;
  double r = 0.0;
  Eigen::Index first = 0;
  Eigen::Index second = 1;
};
struct ApplySymplectic {
  Matrix S;
  GaussianState state;
};
struct Displace {
  Vector d;
  GaussianState state;
};

using StateSpec =
    std::variant<Vacuum, Thermal, Coherent, Squeezed, TwoModeSqueezed, ApplySymplectic, Displace>;

inline GaussianState vacuum(Eigen::Index n) {
  if (n < 1) throw InvalidArgument("vacuum: mode count must be at least 1");
  return GaussianState(Vector::Zero(2 * n), 0.5 * Matrix::Identity(2 * n, 2 * n));
}

inline GaussianState apply_symplectic(const Matrix& s, const GaussianState& in) {
  const GaussianState c = to_canonical(in);
  if (s.rows() != c.cov().rows() || s.cols() != c.cov().cols()) {
    throw InvalidArgument("apply_symplectic: dimension mismatch");
  }
  return GaussianState(s * c.mean(), linalg::symmetrize(s * c.cov() * s.transpose()));
}

inline GaussianState displace(const Vector& d, const GaussianState& in) {
  const GaussianState c = to_canonical(in);
  if (d.size() != c.mean().size()) throw InvalidArgument("displace: dimension mismatch");
  return GaussianState(c.mean() + d, c.cov());
}

inline GaussianState build_state(const StateSpec& spec) {
  return std::visit(
      [](const auto& s) -> GaussianState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return vacuum(s.modes);
        } else if constexpr (std::is_same_v<T, Thermal>) {
          const auto n = static_cast<Eigen::Index>(s.nbar.size());
          if (n < 1) throw InvalidArgument("thermal: need at least one mode");
          Vector d(2 * n);
          for (Eigen::Index k = 0; k < n; ++k) {
            const double nb = s.nbar[static_cast<std::size_t>(k)];
            if (!(nb >= 0.0)) throw InvalidArgument("thermal: mean photon number must be >= 0");
            d(k) = d(n + k) = nb + 0.5;
          }
          return GaussianState(Matrix(d.asDiagonal()));
        } else if constexpr (std::is_same_v<T, Coherent>) {
          const auto n = static_cast<Eigen::Index>(s.alpha.size());
          GaussianState v = vacuum(n);
          Vector u(2 * n);
          for (Eigen::Index k = 0; k < n; ++k) {
            u(k) = std::sqrt(2.0) * s.alpha[static_cast<std::size_t>(k)].real();
            u(n + k) = std::sqrt(2.0) * s.alpha[static_cast<std::size_t>(k)].imag();
          }
          return GaussianState(u, v.cov());
        } else if constexpr (std::is_same_v<T, Squeezed>) {
          const auto n = static_cast<Eigen::Index>(s.r.size());
          if (!s.phi.empty() && s.phi.size() != s.r.size()) {
            throw InvalidArgument("squeezed: r and phi must have equal length");
          }
          Matrix m = Matrix::Identity(2 * n, 2 * n);
          for (Eigen::Index k = 0; k < n; ++k) {
            const double phi = s.phi.empty() ? 0.0 : s.phi[static_cast<std::size_t>(k)];
            m = symplectic::squeezer(n, k, s.r[static_cast<std::size_t>(k)], phi) * m;
          }
          return apply_symplectic(m, vacuum(n));
        } else if constexpr (std::is_same_v<T, TwoModeSqueezed>) {
          return apply_symplectic(symplectic::two_mode_squeezer(s.modes, s.first, s.second, s.r),
                                  vacuum(s.modes));
        } else if constexpr (std::is_same_v<T, ApplySymplectic>) {
          if (!is_symplectic(s.S)) throw InvalidArgument("apply_symplectic: matrix is not symplectic");
          return apply_symplectic(s.S, s.state);
        } else {
          return displace(s.d, s.state);
        }
      },
      spec);
}

struct RandomStateOptions {
  double max_squeeze = 1.0;
  double max_thermal = 2.0;
  double max_disp = 1.0;
  /// Number of modes forced to be pure (symplectic eigenvalue exactly 1/2).
  Eigen::Index pure_modes = 0;
};

/// Random physical state: thermal Williamson core with nbar_k in
/// [0, max_thermal], conjugated by a random circuit of phase rotations,
/// single-mode squeezers and beam splitters, then displaced uniformly in
/// [-max_disp, max_disp]. Deterministic for a fixed seed.
inline GaussianState random_state(Eigen::Index n, std::uint64_t seed,
                                  const RandomStateOptions& opt = {}) {
  if (n < 1) throw InvalidArgument("random_state: mode count must be at least 1");
  if (!(opt.max_squeeze >= 0.0) || !(opt.max_thermal >= 0.0) || !(opt.max_disp >= 0.0)) {
    throw InvalidArgument("random_state: bounds must be non-negative");
  }
  if (opt.pure_modes < 0 || opt.pure_modes > n) {
    throw InvalidArgument("random_state: pure_modes out of range");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  constexpr double pi = 3.14159265358979323846;

  Vector d(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double nb = k < opt.pure_modes ? 0.0 : uniform(0.0, opt.max_thermal);
    d(k) = d(n + k) = nb + 0.5;
  }
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  const Eigen::Index layers = n + 1;
  for (Eigen::Index layer = 0; layer < layers; ++layer) {
    for (Eigen::Index k = 0; k < n; ++k) {
      s = symplectic::phase_rotation(n, k, uniform(0.0, 2.0 * pi)) * s;
      s = symplectic::squeezer(n, k, uniform(-opt.max_squeeze, opt.max_squeeze) / std::sqrt(double(layers)),
                               0.0) * s;
    }
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      s = symplectic::beam_splitter(n, k, k + 1, uniform(0.0, pi), uniform(0.0, 2.0 * pi)) * s;
    }
  }
  Vector u(2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) u(i) = uniform(-opt.max_disp, opt.max_disp);
  return GaussianState(u, linalg::symmetrize(s * d.asDiagonal() * s.transpose()));
}

inline GaussianState random_state(Eigen::Index n, std::uint64_t seed, double max_squeeze,
                                  double max_thermal, double max_disp) {
  return random_state(n, seed, RandomStateOptions{max_squeeze, max_thermal, max_disp, 0});
}

}  // namespace gaussfid
