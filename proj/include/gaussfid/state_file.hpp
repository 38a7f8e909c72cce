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

// State files: UTF-8 JSON
//
//   {"modes": 1, "ordering": "xxpp", "mean": [0, 0], "cov": [[0.5, 0], [0, 0.5]]}
//
// "ordering" is mandatory. Numbers are written with 17 significant digits so
// a write/read cycle is lossless.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/state.hpp"

namespace gaussfid {

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + " must be a number");
  return j.get<double>();
}

}  // namespace detail

/// Parses the JSON text of a state file. The result is not yet reordered or
/// validated.
inline GaussianState parse_state_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("state file must hold a JSON object");
  for (const char* key : {"modes", "ordering", "mean", "cov"}) {
    if (!j.contains(key)) throw ParseError(std::string("state file is missing \"") + key + "\"");
  }
  if (!j["modes"].is_number_integer() || j["modes"].get<long long>() < 1) {
    throw ParseError("\"modes\" must be a positive integer");
  }
  const Eigen::Index n = j["modes"].get<Eigen::Index>();
  if (!j["ordering"].is_string()) throw ParseError("\"ordering\" must be \"xxpp\" or \"xpxp\"");
  const ModeOrdering ordering = parse_ordering(j["ordering"].get<std::string>());
  const auto& mean = j["mean"];
  if (!mean.is_array() || static_cast<Eigen::Index>(mean.size()) != 2 * n) {
    throw ParseError("\"mean\" must be an array of " + std::to_string(2 * n) + " numbers");
  }
  Vector u(2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) u(i) = detail::json_number(mean[i], "mean entry");
  const auto& cov = j["cov"];
  if (!cov.is_array() || static_cast<Eigen::Index>(cov.size()) != 2 * n) {
    throw ParseError("\"cov\" must have " + std::to_string(2 * n) + " rows");
  }
  Matrix v(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    if (!cov[i].is_array() || static_cast<Eigen::Index>(cov[i].size()) != 2 * n) {
      throw ParseError("\"cov\" row " + std::to_string(i) + " must have " + std::to_string(2 * n) + " entries");
    }
    for (Eigen::Index k = 0; k < 2 * n; ++k) v(i, k) = detail::json_number(cov[i][k], "cov entry");
  }
  if (!u.allFinite() || !v.allFinite()) throw ParseError("state file contains non-finite numbers");
  return GaussianState(u, v, ordering);
}

/// Reads, reorders to XXPP and validates a state file.
inline GaussianState parse_state_file(const std::string& path, double tol_phys = Tolerances{}.physical,
                                      std::string* raw = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (raw != nullptr) *raw = ss.str();
  const GaussianState s = parse_state_json(ss.str());
  const double asym = linalg::asymmetry(s.cov());
  if (asym > 1e-8) {
    throw InvalidArgument("'" + path + "': covariance matrix is not symmetric (asymmetry " +
                          num(asym) + ")");
  }
  const GaussianState c = to_canonical(GaussianState(s.mean(), linalg::symmetrize(s.cov()), s.ordering()));
  require_physical(c, tol_phys, ("'" + path + "'").c_str());
  return c;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string state_to_json(const GaussianState& s) {
  const Eigen::Index d = s.mean().size();
  std::ostringstream o;
  o << "{\n  \"modes\": " << s.modes() << ",\n  \"ordering\": \"" << to_string(s.ordering())
    << "\",\n  \"mean\": [";
  for (Eigen::Index i = 0; i < d; ++i) o << (i ? ", " : "") << format_double(s.mean()(i));
  o << "],\n  \"cov\": [\n";
  for (Eigen::Index i = 0; i < d; ++i) {
    o << "    [";
    for (Eigen::Index k = 0; k < d; ++k) o << (k ? ", " : "") << format_double(s.cov()(i, k));
    o << "]" << (i + 1 < d ? "," : "") << "\n";
  }
  o << "  ]\n}\n";
  return o.str();
}

inline void write_state_file(const std::string& path, const GaussianState& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write state file '" + path + "'");
  out << state_to_json(s);
  if (!out) throw InvalidArgument("failed writing state file '" + path + "'");
}

}  // namespace gaussfid
