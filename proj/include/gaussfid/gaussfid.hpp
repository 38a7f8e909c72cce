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

// Umbrella header for the numerical library. The command-line layer lives in
// gaussfid/cli.hpp and pulls in the vendored JSON and argument parsers.

#include "gaussfid/builders.hpp"
#include "gaussfid/errors.hpp"
#include "gaussfid/families.hpp"
#include "gaussfid/fidelity.hpp"
#include "gaussfid/fock.hpp"
#include "gaussfid/gibbs.hpp"
#include "gaussfid/invariants.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/metrology.hpp"
#include "gaussfid/singular.hpp"
#include "gaussfid/spectrum.hpp"
#include "gaussfid/state.hpp"
#include "gaussfid/symplectic.hpp"
#include "gaussfid/williamson.hpp"
