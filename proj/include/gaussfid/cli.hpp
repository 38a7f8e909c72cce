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

// Command dispatch for the gaussfid tool. `run` is the whole program; the
// executable only forwards argv and the standard streams.
//
// Exit codes: 0 success, 2 bad input or unphysical state, 3 numerical
// failure, 64 unknown command.

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaussfid/errors.hpp"
#include "gaussfid/families.hpp"
#include "gaussfid/fidelity.hpp"
#include "gaussfid/fock.hpp"
#include "gaussfid/invariants.hpp"
#include "gaussfid/metrology.hpp"
#include "gaussfid/state_file.hpp"
#include "gaussfid/williamson.hpp"
#include "gaussfid/builders.hpp"

namespace gaussfid::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInput = 2, kNumerical = 3, kUsage = 64 };

inline const std::array<const char*, 9>& command_names() {
  static const std::array<const char*, 9> names = {"fidelity", "invariants", "bures",
                                                   "metric",   "qfi",        "bounds",
                                                   "oracle-check", "williamson", "random"};
  return names;
}

inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    a.push_back(row);
  }
  return a;
}

inline Json to_json(const InvariantSet& inv) {
  Json j;
  j["I"] = to_json(inv.I);
  j["Gamma"] = inv.Gamma;
  j["Lambda"] = inv.Lambda + 0.0;  // no "-0"
  j["Delta"] = inv.Delta;
  j["char_coeffs"] = to_json(inv.char_coeffs);
  return j;
}

struct Settings {
  bool json = false;
  double tol_phys = Tolerances{}.physical;
  double tol_pure = Tolerances{}.pure;
  double tol_metric = Tolerances{}.metric;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json result = Json::object();
  std::vector<std::string> warnings;

  Json to_json(const Settings& s) const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["tolerances"] = {{"physical", s.tol_phys}, {"pure", s.tol_pure}, {"metric", s.tol_metric}};
    j["result"] = result;
    j["warnings"] = warnings;
    return j;
  }
};

namespace detail {

inline std::string text_value(const Json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + text_value(e);
    return s;
  }
  return v.dump();
}

inline void flatten(const Json& j, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& rows) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      flatten(v, key, rows);
    } else if (v.is_array() && !v.empty() && v.front().is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        rows.emplace_back(key + "[" + std::to_string(i) + "]", text_value(v[i]));
      }
    } else {
      rows.emplace_back(key, text_value(v));
    }
  }
}

}  // namespace detail

inline void print_text(const Report& r, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("command", r.command);
  detail::flatten(r.result, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

struct LoadedState {
  GaussianState state;
  Json info;
};

inline LoadedState load_state(const std::string& path, const Settings& s) {
  std::string raw;
  GaussianState st = parse_state_file(path, s.tol_phys, &raw);
  Json info;
  info["file"] = std::filesystem::path(path).filename().string();
  info["fnv1a64"] = fnv1a64(raw);
  info["modes"] = st.modes();
  return {std::move(st), std::move(info)};
}

inline FidelityOptions fidelity_options(const Settings& s) {
  FidelityOptions o;
  o.tol_phys = s.tol_phys;
  o.tol_pure = s.tol_pure;
  return o;
}

inline Json fidelity_json(const FidelityReport& f) {
  Json j;
  j["F"] = f.F;
  j["F_raw"] = f.F_raw;
  j["F0"] = f.F0;
  j["Ftot"] = f.Ftot;
  j["detV1plusV2"] = f.detV1plusV2;
  j["disp_exponent"] = f.disp_exponent;
  j["waux_spectrum"] = to_json(f.waux_spectrum);
  j["discarded_pairs"] = f.discarded_pairs;
  j["invariants"] = to_json(f.invariants);
  return j;
}

inline Report cmd_fidelity(const std::string& a, const std::string& b, const Settings& s) {
  Report r{"fidelity"};
  const LoadedState x = load_state(a, s), y = load_state(b, s);
  r.inputs["first"] = x.info;
  r.inputs["second"] = y.info;
  const FidelityReport f = fidelity(x.state, y.state, fidelity_options(s));
  r.result = fidelity_json(f);
  r.warnings = f.warnings;
  return r;
}

inline Report cmd_invariants(const std::string& a, const std::string& b, const Settings& s) {
  Report r{"invariants"};
  const LoadedState x = load_state(a, s), y = load_state(b, s);
  r.inputs["first"] = x.info;
  r.inputs["second"] = y.info;
  if (x.state.modes() != y.state.modes()) throw InvalidArgument("states have different mode counts");
  const Eigen::Index n = x.state.modes();
  const InvariantSet inv = invariant_set(x.state.cov(), y.state.cov());
  const FidelityReport f = fidelity(x.state, y.state, fidelity_options(s));
  r.result = to_json(inv);
  r.result["modes"] = n;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  r.result["chi0_relation_residual"] =
      std::abs(sign * inv.chi(0.0) * inv.Delta - inv.Gamma) / std::max(1.0, std::abs(inv.Gamma));
  r.result["chi1_relation_residual"] =
      std::abs(sign * inv.chi(1.0) * inv.Delta - inv.Lambda) / std::max(1.0, std::abs(inv.Lambda));
  r.result["engine_F0"] = f.F0;
  if (n <= 3) {
    r.result["closed_form_F0"] = closed_form_fidelity(n, inv);
  } else {
    r.result["closed_form_F0"] = nullptr;
    r.warnings.push_back("no closed form for more than three modes");
  }
  for (const auto& w : f.warnings) r.warnings.push_back(w);
  return r;
}

inline Report cmd_bures(const std::string& a, const std::string& b, const Settings& s) {
  Report r{"bures"};
  const LoadedState x = load_state(a, s), y = load_state(b, s);
  r.inputs["first"] = x.info;
  r.inputs["second"] = y.info;
  const FidelityReport f = fidelity(x.state, y.state, fidelity_options(s));
  r.result["D_B"] = 2.0 * (1.0 - f.F);
  r.result["F"] = f.F;
  r.result["convention"] = "D_B = 2(1 - F)";
  r.warnings = f.warnings;
  return r;
}

inline Report cmd_metric(const std::string& a, const std::vector<double>& du,
                         const std::vector<double>& dv, const Settings& s) {
  Report r{"metric"};
  const LoadedState x = load_state(a, s);
  r.inputs["state"] = x.info;
  r.inputs["du"] = to_json(du);
  r.inputs["dv"] = to_json(dv);
  const Eigen::Index d = 2 * x.state.modes();
  if (static_cast<Eigen::Index>(du.size()) != d) {
    throw InvalidArgument("--du needs " + std::to_string(d) + " values");
  }
  if (static_cast<Eigen::Index>(dv.size()) != d * d) {
    throw InvalidArgument("--dv needs " + std::to_string(d * d) + " values (row-major)");
  }
  const Vector u = Eigen::Map<const Vector>(du.data(), d);
  const Matrix v = Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>>(dv.data(), d, d);
  // --du and --dv are read in XXPP ordering, whatever the file ordering.
  const MetricEvaluation m = bures_metric(x.state, u, v, s.tol_metric);
  r.result["ds2"] = m.ds2;
  r.result["mean_part"] = m.mean_part;
  r.result["cov_part"] = m.cov_part;
  r.result["skipped_terms"] = m.skipped_terms;
  r.result["tol"] = m.tol;
  if (m.skipped_terms > 0) {
    r.warnings.push_back("skipped " + std::to_string(m.skipped_terms) +
                         " term(s) with |w_i w_j - 1| <= tol (pseudo-inverse)");
  }
  return r;
}

inline Report cmd_qfi(const std::string& family, double theta, const std::string& mode, double h,
                      const Settings& s) {
  Report r{"qfi"};
  QfiMode m;
  if (mode == "analytic") {
    m = QfiMode::Analytic;
  } else if (mode == "finite-difference") {
    m = QfiMode::FiniteDifference;
  } else {
    throw ParseError("--mode must be analytic or finite-difference");
  }
  const ScalarFamily f = named_family(family);
  if (h <= 0.0) h = m == QfiMode::Analytic ? 1e-4 : 1e-3;
  r.inputs["family"] = family;
  r.inputs["theta"] = theta;
  r.inputs["mode"] = mode;
  r.inputs["h"] = h;
  r.result["H"] = qfi_scalar(f, theta, m, h, s.tol_metric);
  return r;
}

inline Report cmd_bounds(double fid, int copies) {
  Report r{"bounds"};
  r.inputs["fidelity"] = fid;
  r.inputs["copies"] = copies;
  const ErrorBounds b = error_bounds(fid, copies);
  r.result["lower"] = b.lower;
  r.result["upper"] = b.upper;
  r.result["copies"] = b.copies;
  r.result["fidelity_used"] = b.fidelity_used;
  if (b.fidelity_used != fid) r.warnings.push_back("fidelity clamped to [0, 1]");
  return r;
}

inline Report cmd_oracle(std::uint64_t seed, int modes, int cutoff, double threshold, const Settings& s) {
  Report r{"oracle-check"};
  if (modes != 1 && modes != 2) throw InvalidArgument("--modes must be 1 or 2");
  if (cutoff <= 0) cutoff = modes == 1 ? 40 : 25;
  r.inputs["seed"] = seed;
  r.inputs["modes"] = modes;
  r.inputs["cutoff"] = cutoff;
  const double nbar = modes == 1 ? 0.5 : 0.3;
  const double squeeze = modes == 1 ? 0.4 : 0.3;
  const double alpha = modes == 1 ? 0.8 : 0.6;
  const CircuitState a = build_circuit_state(random_circuit(modes, 2 * seed, nbar, squeeze, alpha), cutoff);
  const CircuitState b = build_circuit_state(random_circuit(modes, 2 * seed + 1, nbar, squeeze, alpha), cutoff);
  const FidelityReport fe = fidelity(a.gaussian, b.gaussian, fidelity_options(s));
  const FockFidelity fo = uhlmann_fidelity_report(a.fock, b.fock);
  const double diff = std::abs(fe.F - fo.F);
  r.result["F_engine"] = fe.F;
  r.result["F_oracle"] = fo.F;
  r.result["abs_diff"] = diff;
  r.result["threshold"] = threshold;
  r.result["pass"] = diff < threshold;
  r.result["trace_deficit_first"] = a.fock.trace_deficit;
  r.result["trace_deficit_second"] = b.fock.trace_deficit;
  r.warnings = fe.warnings;
  if (a.fock.trace_deficit > 1e-12) {
    r.warnings.push_back("trace deficit " + num(a.fock.trace_deficit) + " (first state)");
  }
  if (b.fock.trace_deficit > 1e-12) {
    r.warnings.push_back("trace deficit " + num(b.fock.trace_deficit) + " (second state)");
  }
  if (fo.clamped > 1e-12) {
    r.warnings.push_back("clamped density eigenvalues up to " + num(fo.clamped) + " to zero");
  }
  return r;
}

inline Report cmd_williamson(const std::string& a, const Settings& s) {
  Report r{"williamson"};
  const LoadedState x = load_state(a, s);
  r.inputs["state"] = x.info;
  const WilliamsonDecomposition w = williamson(x.state.cov());
  r.result["nu"] = to_json(w.nu);
  r.result["S"] = to_json(w.S);
  r.result["symplectic_residual"] = symplectic_residual(w.S);
  r.result["reconstruction_residual"] = linalg::max_abs(w.reconstruct() - x.state.cov());
  return r;
}

inline Report cmd_random(int modes, std::uint64_t seed, const std::string& path,
                         const RandomStateOptions& opt, const std::string& ordering) {
  Report r{"random"};
  r.inputs["modes"] = modes;
  r.inputs["seed"] = seed;
  r.inputs["max_squeeze"] = opt.max_squeeze;
  r.inputs["max_thermal"] = opt.max_thermal;
  r.inputs["max_disp"] = opt.max_disp;
  r.inputs["pure_modes"] = opt.pure_modes;
  const GaussianState st = reorder_state(random_state(modes, seed, opt), parse_ordering(ordering));
  const std::string text = state_to_json(st);
  if (path.empty() || path == "-") {
    r.result["path"] = "-";
  } else {
    write_state_file(path, st);
    r.result["path"] = path;
  }
  r.result["modes"] = modes;
  r.result["ordering"] = ordering;
  r.result["fnv1a64"] = fnv1a64(text);
  r.result["state"] = Json::parse(text);
  return r;
}

/// Returns the command word, or an empty string if there is none.
inline std::string find_command(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--tol-phys" || a == "--tol-pure" || a == "--tol-metric") {
      ++i;
      continue;
    }
    if (!a.empty() && a[0] == '-') continue;
    return a;
  }
  return {};
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const std::string command = find_command(argc, argv);
  bool wants_help = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "-h" || a == "--help") wants_help = true;
  }
  bool known = false;
  for (const char* c : command_names()) known = known || command == c;
  if (!known && !(command.empty() && wants_help)) {
    err << (command.empty() ? std::string("error: no command given") : "error: unknown command '" + command + "'")
        << "\ncommands:";
    for (const char* c : command_names()) err << " " << c;
    err << "\n";
    return kUsage;
  }

  Settings s;
  if (const char* env = std::getenv("GAUSSFID_TOL_PURE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v >= 0.0)) {
      err << "error: GAUSSFID_TOL_PURE is not a non-negative number: '" << env << "'\n";
      return kInput;
    }
    s.tol_pure = v;
  }

  CLI::App app{"Fidelity, invariants and metrology for multimode Gaussian states", "gaussfid"};
  app.require_subcommand(1);
  app.add_flag("--json", s.json, "Emit the JSON report");
  app.add_option("--tol-phys", s.tol_phys, "Physicality tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-pure", s.tol_pure, "Pure-pair discard tolerance (env GAUSSFID_TOL_PURE)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tol-metric", s.tol_metric, "Metric pseudo-inverse threshold")->check(CLI::NonNegativeNumber);

  std::string a, b, family, mode = "analytic", path, ordering = "xxpp";
  std::vector<double> du, dv;
  double theta = 0.0, h = 0.0, fid = 0.0, threshold = 1e-6;
  int copies = 1, modes = 1, cutoff = 0;
  std::uint64_t seed = 0;
  RandomStateOptions ropt;

  auto pair_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("A", a, "First state file")->required();
    c->add_option("B", b, "Second state file")->required();
    c->fallthrough();
    return c;
  };
  auto* c_fid = pair_cmd("fidelity", "Uhlmann fidelity of two states");
  auto* c_inv = pair_cmd("invariants", "Symplectic invariants and closed-form fidelity");
  auto* c_bures = pair_cmd("bures", "Bures distance D_B = 2(1 - F)");

  auto* c_metric = app.add_subcommand("metric", "Bures metric ds^2 for a tangent (du, dV)");
  c_metric->add_option("A", a, "State file")->required();
  c_metric->add_option("--du", du, "Mean derivative, 2n values")->required()->expected(1, -1);
  c_metric->add_option("--dv", dv, "Covariance derivative, (2n)^2 values row-major")->required()->expected(1, -1);
  c_metric->fallthrough();

  auto* c_qfi = app.add_subcommand("qfi", "Quantum Fisher information of a named family");
  c_qfi->add_option("--family", family, "coherent-displacement | thermal-nbar | squeeze-r | phase-theta")
      ->required();
  c_qfi->add_option("--theta", theta, "Parameter value")->required();
  c_qfi->add_option("--mode", mode, "analytic | finite-difference");
  c_qfi->add_option("--step", h, "Step (default 1e-4 analytic, 1e-3 finite-difference)");
  c_qfi->fallthrough();

  auto* c_bounds = app.add_subcommand("bounds", "Error-probability bounds for N copies");
  c_bounds->add_option("--fidelity", fid, "Fidelity in [0, 1]")->required();
  c_bounds->add_option("--copies", copies, "Number of copies")->required();
  c_bounds->fallthrough();

  auto* c_oracle = app.add_subcommand("oracle-check", "Compare the engine with the Fock-space oracle");
  c_oracle->add_option("--seed", seed, "Random seed")->required();
  c_oracle->add_option("--modes", modes, "1 or 2")->required();
  c_oracle->add_option("--cutoff", cutoff, "Fock cutoff per mode (default 40 or 25)");
  c_oracle->add_option("--threshold", threshold, "Pass threshold on |F_engine - F_oracle|");
  c_oracle->fallthrough();

  auto* c_will = app.add_subcommand("williamson", "Williamson decomposition of a state");
  c_will->add_option("A", a, "State file")->required();
  c_will->fallthrough();

  auto* c_rand = app.add_subcommand("random", "Write a random physical state");
  c_rand->add_option("--modes", modes, "Mode count")->required();
  c_rand->add_option("--seed", seed, "Random seed")->required();
  c_rand->add_option("-o,--output", path, "Output state file ('-' for none)");
  c_rand->add_option("--max-squeeze", ropt.max_squeeze, "Largest squeezing parameter");
  c_rand->add_option("--max-thermal", ropt.max_thermal, "Largest thermal occupation");
  c_rand->add_option("--max-disp", ropt.max_disp, "Largest displacement per quadrature");
  c_rand->add_option("--pure-modes", ropt.pure_modes, "Modes forced to be pure");
  c_rand->add_option("--ordering", ordering, "xxpp | xpxp");
  c_rand->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  try {
    Report r;
    if (c_fid->parsed()) {
      r = cmd_fidelity(a, b, s);
    } else if (c_inv->parsed()) {
      r = cmd_invariants(a, b, s);
    } else if (c_bures->parsed()) {
      r = cmd_bures(a, b, s);
    } else if (c_metric->parsed()) {
      r = cmd_metric(a, du, dv, s);
    } else if (c_qfi->parsed()) {
      r = cmd_qfi(family, theta, mode, h, s);
    } else if (c_bounds->parsed()) {
      r = cmd_bounds(fid, copies);
    } else if (c_oracle->parsed()) {
      r = cmd_oracle(seed, modes, cutoff, threshold, s);
    } else if (c_will->parsed()) {
      r = cmd_williamson(a, s);
    } else {
      r = cmd_random(modes, seed, path, ropt, ordering);
    }
    if (s.json) {
      out << r.to_json(s).dump(2) << "\n";
    } else {
      print_text(r, out);
    }
    if (r.command == "oracle-check" && !r.result["pass"].get<bool>()) return kNumerical;
    return kOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace gaussfid::cli
