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

// Named one-parameter single-mode families used by the qfi command.
//
//   coherent-displacement  u = (theta, 0),                     V = 1/2
//   thermal-nbar           u = 0,                              V = (theta + 1/2) 1
//   squeeze-r              u = 0,                              V = diag(e^{-2 theta}, e^{2 theta})/2
//   phase-theta            u = sqrt(2) (cos theta, sin theta), V = 1/2
//
// Expected QFI: 2, 1/(theta (theta + 1)), 2 and 4.

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "gaussfid/errors.hpp"
#include "gaussfid/metrology.hpp"
#include "gaussfid/state.hpp"

namespace gaussfid {

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"coherent-displacement", "thermal-nbar",
                                                 "squeeze-r", "phase-theta"};
  return names;
}

inline ScalarFamily named_family(std::string_view name) {
  if (name == "coherent-displacement") {
    return [](double t) {
      Vector u(2);
      u << t, 0.0;
      return GaussianState(u, 0.5 * Matrix::Identity(2, 2));
    };
  }
  if (name == "thermal-nbar") {
    return [](double t) { return GaussianState((t + 0.5) * Matrix::Identity(2, 2)); };
  }
  if (name == "squeeze-r") {
    return [](double t) {
      Matrix v = Matrix::Zero(2, 2);
      v(0, 0) = 0.5 * std::exp(-2.0 * t);
      v(1, 1) = 0.5 * std::exp(2.0 * t);
      return GaussianState(v);
    };
  }
  if (name == "phase-theta") {
    return [](double t) {
      Vector u(2);
      u << std::sqrt(2.0) * std::cos(t), std::sqrt(2.0) * std::sin(t);
      return GaussianState(u, 0.5 * Matrix::Identity(2, 2));
    };
  }
  throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

}  // namespace gaussfid
