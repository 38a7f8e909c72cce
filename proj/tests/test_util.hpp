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

#include <cstdint>
#include <utility>

#include "gaussfid/gaussfid.hpp"

namespace gaussfid::testing {

/// Mixed state with moderate squeezing, used by most property tests.
inline GaussianState mixed(Eigen::Index n, std::uint64_t seed) {
  return random_state(n, seed, RandomStateOptions{0.8, 1.5, 1.0, 0});
}

/// State with `pure` modes pinned at the vacuum bound.
inline GaussianState with_pure(Eigen::Index n, std::uint64_t seed, Eigen::Index pure) {
  return random_state(n, seed, RandomStateOptions{0.8, 1.5, 1.0, pure});
}

inline Matrix random_symplectic(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  for (int layer = 0; layer < 2; ++layer) {
    for (Eigen::Index k = 0; k < n; ++k) {
      s = symplectic::phase_rotation(n, k, 3.0 * u(rng)) * s;
      s = symplectic::squeezer(n, k, 0.6 * u(rng), 3.0 * u(rng)) * s;
    }
    for (Eigen::Index k = 0; k + 1 < n; ++k) s = symplectic::beam_splitter(n, k, k + 1, 1.5 * u(rng), 3.0 * u(rng)) * s;
  }
  return s;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace gaussfid::testing
