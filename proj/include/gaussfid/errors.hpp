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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace gaussfid {

/// Bad shapes, unphysical moments, out-of-range parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A decomposition or spectral step could not produce a trustworthy result.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Gibbs matrix diverges because a symplectic eigenvalue sits at 1/2.
class PureLimitError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Fock-space truncation lost more probability mass than the budget allows.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double deficit)
      : std::runtime_error(what), deficit_(deficit) {}
  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

/// Malformed state file or command-line value.
/// Short form of a double for messages.
inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace gaussfid
