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


// A short walk through the library: build a few states, compare them, and
// turn the fidelity into metrology and discrimination numbers.

#include <cmath>
#include <cstdio>

#include "gaussfid/gaussfid.hpp"

using namespace gaussfid;

int main() {
  const GaussianState vac = vacuum(1);
  const GaussianState coh = build_state(Coherent{{1.0}});
  const GaussianState thermal = build_state(Thermal{{0.5}});
  const GaussianState squeezed = build_state(Squeezed{{0.5}, {}});

  std::printf("F(vacuum, coherent a=1)   = %.12f\n", fidelity_value(vac, coh));
  std::printf("F(vacuum, thermal nbar=.5) = %.12f\n", fidelity_value(vac, thermal));
  std::printf("F(vacuum, squeezed r=.5)   = %.12f\n", fidelity_value(vac, squeezed));

  // Two random three-mode states: the general engine and the closed form.
  const GaussianState a = random_state(3, 11), b = random_state(3, 12);
  const FidelityReport rep = fidelity(a, b);
  std::printf("3 modes: F0 engine %.12f, closed form %.12f\n", rep.F0,
              closed_form_fidelity(3, rep.invariants));

  std::printf("QFI thermal-nbar at 0.5   = %.9f (exact 4/3)\n", qfi_scalar(named_family("thermal-nbar"), 0.5));
  std::printf("QFI phase-theta           = %.9f (exact 4)\n", qfi_scalar(named_family("phase-theta"), 0.3));

  for (int n : {1, 4, 16}) {
    const ErrorBounds e = error_bounds(fidelity_value(vac, thermal), n);
    std::printf("N = %2d copies: %.3e <= p_err <= %.3e\n", n, e.lower, e.upper);
  }
  return 0;
}
