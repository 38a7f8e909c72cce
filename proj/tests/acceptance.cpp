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


// Acceptance gate. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace gaussfid;
using gaussfid::testing::mixed;
using gaussfid::testing::rel;
using gaussfid::testing::with_pure;
namespace fk = gaussfid::fock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Worst {
  double value = 0.0;
  static Worst signed_max() { return {-INFINITY}; }
  void see(double x) { value = std::max(value, std::isnan(x) ? INFINITY : x); }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome c1_identity() {
  Worst w;
  int count = 0;
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const GaussianState s = seed % 2 ? with_pure(n, 1000 + seed, n) : mixed(n, 1000 + seed);
      w.see(std::abs(fidelity(s, s).F - 1.0));
      ++count;
    }
  }
  return {w.value < 1e-10 && count == 200, fmt("%.0f states, max |F - 1| = %.3g (tol 1e-10)", count, w.value)};
}

Outcome c2_pure_reduction() {
  // With V1 = I/2, V_aux = I/2 and F_tot = 1, so F = det(V1 + V2)^{-1/4} exp(-du^T (V1+V2)^{-1} du / 4).
  Worst ftot, f;
  int literal_f0 = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 3);
    const GaussianState other = mixed(n, 2000 + seed);
    const GaussianState s1(0.3 * Vector::Random(2 * n), 0.5 * Matrix::Identity(2 * n, 2 * n));
    const FidelityReport r = fidelity(s1, other);
    const Matrix sum = s1.cov() + other.cov();
    const Vector du = s1.mean() - other.mean();
    const double want = std::pow(sum.determinant(), -0.25) * std::exp(-0.25 * du.dot(sum.ldlt().solve(du)));
    ftot.see(std::abs(r.Ftot - 1.0));
    f.see(rel(r.F, want));
    if (std::abs(r.F0 - 1.0) <= 1e-10) ++literal_f0;
  }
  return {ftot.value < 1e-10 && f.value < 1e-10,
          fmt("100 pairs, max |F_tot - 1| = %.3g, max rel |F - det^{-1/4} exp| = %.3g (tol 1e-10); "
              "F0 == 1 literally in %.0f pairs",
              ftot.value, f.value, literal_f0)};
}

Outcome c3_closed_forms() {
  Worst w[3];
  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const GaussianState a = mixed(n, 3000 + 2 * seed), b = mixed(n, 3001 + 2 * seed);
      const FidelityReport r = fidelity(a, b);
      w[n - 1].see(rel(closed_form_fidelity(n, r.invariants), r.F0));
    }
  }
  const double worst = std::max({w[0].value, w[1].value, w[2].value});
  return {worst < 1e-9, fmt("200 pairs per n, max rel error n=1 %.3g, n=2 %.3g, n=3 %.3g (tol 1e-9)",
                            w[0].value, w[1].value, w[2].value)};
}

Outcome c4_oracle() {
  Worst diff, deficit;
  int pairs = 0;
  auto check = [&](int modes, int cutoff, std::uint64_t seed, double nb, double r, double al) {
    const CircuitState a = build_circuit_state(random_circuit(modes, seed, nb, r, al), cutoff);
    const CircuitState b = build_circuit_state(random_circuit(modes, seed + 1, nb, r, al), cutoff);
    diff.see(std::abs(fidelity(a.gaussian, b.gaussian).F - uhlmann_fidelity_matrix(a.fock, b.fock)));
    deficit.see(std::max(a.fock.trace_deficit, b.fock.trace_deficit));
    ++pairs;
  };
  for (std::uint64_t k = 0; k < 30; ++k) check(1, 40, 4000 + 2 * k, 0.5, 0.4, 0.8);
  for (std::uint64_t k = 0; k < 10; ++k) check(2, 25, 5000 + 2 * k, 0.3, 0.3, 0.6);
  return {diff.value < 1e-6 && deficit.value < 1e-8 && pairs == 40,
          fmt("30 one-mode (cutoff 40) + 10 two-mode (cutoff 25) pairs, max |dF| = %.3g (tol 1e-6), "
              "max trace deficit = %.3g (tol 1e-8)",
              diff.value, deficit.value)};
}

Outcome c5_invariants() {
  Worst g, l;
  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const GaussianState a = mixed(n, 6000 + 2 * seed), b = mixed(n, 6001 + 2 * seed);
      const InvariantSet inv = invariant_set(a.cov(), b.cov());
      const double sign = n % 2 ? -1.0 : 1.0;
      g.see(rel(inv.chi(0.0) * sign * inv.Delta, inv.Gamma));
      l.see(rel(inv.chi(1.0) * sign * inv.Delta, inv.Lambda));
    }
  }
  return {g.value < 1e-8 && l.value < 1e-8,
          fmt("300 pairs, max rel chi(0) residual %.3g, chi(1) residual %.3g (tol 1e-8)", g.value, l.value)};
}

Outcome c6_three_mode_reality() {
  Worst p = Worst::signed_max(), disp = Worst::signed_max(), root;
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const GaussianState a = mixed(3, 7000 + 2 * seed), b = mixed(3, 7001 + 2 * seed);
    const InvariantSet inv = fidelity(a, b).invariants;
    try {
      const ThreeModeRoots r = three_mode_roots(inv);
      p.see(r.p / r.scale);
      disp.see(r.discriminant / (r.scale * r.scale * r.scale));
      for (double w : r.w) root.see(std::abs(inv.chi(w)) / inv.coeff_norm());
    } catch (const std::exception&) {
      ++failures;
    }
  }
  return {failures == 0 && p.value <= 1e-10 && disp.value <= 1e-10 && root.value < 1e-7,
          fmt("500 pairs, max p/scale = %.3g, max disc/scale^3 = %.3g (tol 1e-10), "
              "max |chi(w)|/||c|| = %.3g (tol 1e-7)",
              p.value, disp.value, root.value) +
              (failures ? fmt(", %.0f root failures", failures) : "")};
}

Outcome c7_symmetry_product() {
  Worst sym, prod;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 2);
    const Eigen::Index m = 1 + static_cast<Eigen::Index>((seed / 2) % 2);
    const GaussianState a = mixed(n, 8000 + 4 * seed), b = mixed(n, 8001 + 4 * seed);
    const GaussianState c = mixed(m, 8002 + 4 * seed), d = mixed(m, 8003 + 4 * seed);
    sym.see(std::abs(fidelity(a, b).F - fidelity(b, a).F));
    prod.see(std::abs(fidelity(tensor(a, c), tensor(b, d)).F - fidelity(a, b).F * fidelity(c, d).F));
  }
  return {sym.value < 1e-12 && prod.value < 1e-9,
          fmt("100 tuples, max |F(a,b) - F(b,a)| = %.3g (tol 1e-12), max product defect = %.3g (tol 1e-9)",
              sym.value, prod.value)};
}

// Smallest successive ratio of |2(1 - F(s, s + h ds)) - h^2 g| over h halvings.
double min_error_ratio(const ScalarFamily& fam, double t0, double g) {
  double prev = -1.0, worst = INFINITY;
  for (double h : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
    const double e = std::abs(2.0 * (1.0 - fidelity(fam(t0), fam(t0 + h)).F_raw) - h * h * g);
    if (prev > 0.0) worst = std::min(worst, prev / e);
    prev = e;
  }
  return worst;
}

Outcome c8_metrology() {
  const ScalarFamily coh = named_family("coherent-displacement");
  const ScalarFamily th = named_family("thermal-nbar");
  const double r_coh = min_error_ratio(coh, 0.3, 2.0 / 4.0);
  double r_th = INFINITY;
  Worst qfi_th, oracle;
  const double qfi_coh = std::abs(qfi_scalar(coh, 0.3) - 2.0);
  for (double nb : {0.5, 1.0}) {
    const double want = 1.0 / (nb * (nb + 1.0));
    r_th = std::min(r_th, min_error_ratio(th, nb, want / 4.0));
    qfi_th.see(std::abs(qfi_scalar(th, nb) - want));
    // Oracle: symmetric difference of Fock-space fidelities.
    const double h = 1e-2;
    auto rho = [](double n) {
      CircuitSpec c;
      c.ops.emplace_back(fk::ThermalInput{{n}});
      return build_circuit_state(c, 60).fock;
    };
    const double f = uhlmann_fidelity_matrix(rho(nb - h / 2), rho(nb + h / 2));
    oracle.see(std::abs(8.0 * (1.0 - f) / (h * h) - want) / want);
  }
  const bool pass = r_coh >= 4.0 && r_th >= 4.0 && qfi_coh < 1e-6 && qfi_th.value < 1e-6 && oracle.value < 1e-3;
  return {pass, fmt("error ratio coherent %.3g, thermal %.3g (need >= 4); ", r_coh, r_th) +
                    fmt("|QFI - exact| coherent %.3g, thermal %.3g (tol 1e-6); ", qfi_coh, qfi_th.value) +
                    fmt("oracle finite-difference rel error %.3g (tol 1e-3)", oracle.value)};
}

Outcome c9_bounds() {
  bool ok = true;
  const ErrorBounds one = error_bounds(1.0, 1), zero = error_bounds(0.0, 1);
  ok = ok && one.lower == 0.5 && one.upper == 0.5 && zero.lower == 0.0 && zero.upper == 0.0;
  const ErrorBounds half = error_bounds(0.5, 1);
  const double dl = std::abs(half.lower - 0.066987298107780677), du = std::abs(half.upper - 0.25);
  ok = ok && dl < 1e-12 && du < 1e-12;
  int grids = 0;
  for (int g = 0; g < 20; ++g) {
    const double f = 0.05 + 0.047 * g;
    double pl = 1.0, pu = 1.0;
    bool mono = true;
    for (int n = 1; n <= 12; ++n) {
      const ErrorBounds b = error_bounds(f, n);
      mono = mono && b.lower <= pl && b.upper <= pu && b.lower <= b.upper;
      pl = b.lower;
      pu = b.upper;
    }
    grids += mono;
  }
  ok = ok && grids == 20;
  return {ok, fmt("endpoints exact, F=0.5 N=1 errors (%.3g, %.3g) (tol 1e-12), monotone grids %.0f/20", dl, du, grids)};
}

Outcome c10_singular() {
  int pairs = 0, count_mismatch = 0, nonfinite = 0;
  auto check = [&](const GaussianState& a, const GaussianState& b) {
    const FidelityReport r = fidelity(a, b);
    const SingularReduction red = singular_reduction(a.cov(), b.cov(), Tolerances{}.pure);
    if (!std::isfinite(r.F)) ++nonfinite;
    if (r.discarded_pairs != red.r) ++count_mismatch;
    ++pairs;
  };
  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Eigen::Index k = 1 + static_cast<Eigen::Index>(seed % n);
      check(mixed(n, 9000 + seed), with_pure(n, 9100 + seed, k));  // mixed vs partly pure
      check(mixed(n, 9200 + seed), with_pure(n, 9300 + seed, n));  // mixed vs pure
      check(with_pure(n, 9400 + seed, n), with_pure(n, 9500 + seed, n));
    }
    check(vacuum(n), vacuum(n));
  }
  // One-mode oracle comparison.
  Worst diff;
  auto circuit = [](bool thermal, double r, double phi, Complex alpha) {
    CircuitSpec c;
    if (thermal) c.ops.emplace_back(fk::ThermalInput{{0.4}});
    if (r != 0.0) c.ops.emplace_back(fk::Squeeze{r, phi, 0});
    if (alpha != Complex(0.0, 0.0)) c.ops.emplace_back(fk::Displace{alpha, 0});
    return build_circuit_state(c, 40);
  };
  const std::vector<std::pair<CircuitState, CircuitState>> cases = {
      {circuit(true, 0.3, 0.2, {0.4, -0.1}), circuit(false, 0.5, 1.0, {-0.3, 0.2})},
      {circuit(true, 0.0, 0.0, {0.0, 0.0}), circuit(false, 0.0, 0.0, {0.6, 0.6})},
      {circuit(false, 0.4, 0.0, {0.2, 0.0}), circuit(false, 0.2, 2.0, {-0.5, 0.3})},
      {circuit(false, 0.0, 0.0, {0.0, 0.0}), circuit(false, 0.0, 0.0, {0.0, 0.0})},
  };
  for (const auto& [a, b] : cases) {
    diff.see(std::abs(fidelity(a.gaussian, b.gaussian).F - uhlmann_fidelity_matrix(a.fock, b.fock)));
    check(a.gaussian, b.gaussian);
  }
  return {nonfinite == 0 && count_mismatch == 0 && diff.value < 1e-6,
          fmt("%.0f pairs, non-finite F %.0f, discarded_pairs != r in %.0f", pairs, nonfinite, count_mismatch) +
              fmt("; one-mode oracle max |dF| = %.3g (tol 1e-6)", diff.value)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {"identity", 10, c1_identity},
      {"pure-state reduction", 5, c2_pure_reduction},
      {"closed-form equivalence", 30, c3_closed_forms},
      {"oracle equivalence", 300, c4_oracle},
      {"invariant relations", 10, c5_invariants},
      {"three-mode reality", 20, c6_three_mode_reality},
      {"symmetry and multiplicativity", 10, c7_symmetry_product},
      {"bures metric and qfi", 60, c8_metrology},
      {"error bounds", 1, c9_bounds},
      {"singular-case robustness", 60, c10_singular},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < all[i].budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %2zu %-30s %s [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", i + 1, all[i].name,
                o.detail.c_str(), secs, all[i].budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
