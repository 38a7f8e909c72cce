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


#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

using namespace gaussfid;
namespace fk = gaussfid::fock;

namespace {

CircuitSpec single(std::vector<fk::Primitive> ops) {
  CircuitSpec c;
  c.modes = 1;
  c.ops = std::move(ops);
  return c;
}

double max_moment_diff(const GaussianState& a, const GaussianState& b) {
  return std::max(linalg::max_abs(a.mean() - b.mean()), linalg::max_abs(a.cov() - b.cov()));
}

}  // namespace

TEST(FockCircuit, EmptyCircuitIsVacuum) {
  const CircuitState s = build_circuit_state(single({}), 10);
  EXPECT_NEAR(s.fock.rho(0, 0).real(), 1.0, 1e-14);
  EXPECT_NEAR(s.fock.rho.norm(), 1.0, 1e-14);
  EXPECT_LT(max_moment_diff(s.gaussian, vacuum(1)), 1e-15);
}

TEST(FockCircuit, ThermalDiagonal) {
  const double nb = 0.7;
  const CircuitState s = build_circuit_state(single({fk::ThermalInput{{nb}}}), 40);
  for (int k = 0; k < 40; ++k) {
    EXPECT_NEAR(s.fock.rho(k, k).real(), std::pow(nb, k) / std::pow(nb + 1.0, k + 1), 1e-14) << k;
  }
  EXPECT_NEAR(s.fock.trace_deficit, std::pow(nb / (nb + 1.0), 40), 1e-13);
  const GaussianState m = moments_from_fock(s.fock);
  EXPECT_LT(max_moment_diff(m, GaussianState((nb + 0.5) * Matrix::Identity(2, 2))), 1e-7);
}

TEST(FockCircuit, DisplacedVacuumMean) {
  const CircuitState s = build_circuit_state(single({fk::Displace{Complex(1.0, 0.0), 0}}), 30);
  const GaussianState m = moments_from_fock(s.fock);
  EXPECT_NEAR(m.mean()(0), std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(m.mean()(1), 0.0, 1e-10);
  EXPECT_LT(linalg::max_abs(m.cov() - 0.5 * Matrix::Identity(2, 2)), 1e-9);
}

TEST(FockCircuit, SqueezedVacuumMoments) {
  const double r = 0.5;
  const CircuitState s = build_circuit_state(single({fk::Squeeze{r, 0.0, 0}}), 40);
  const GaussianState m = moments_from_fock(s.fock);
  EXPECT_NEAR(m.cov()(0, 0), 0.5 * std::exp(-2.0 * r), 1e-8);
  EXPECT_NEAR(m.cov()(1, 1), 0.5 * std::exp(2.0 * r), 1e-8);
  EXPECT_NEAR(m.cov()(0, 1), 0.0, 1e-10);
  EXPECT_LT(max_moment_diff(m, s.gaussian), 1e-8);
}

TEST(FockCircuit, RandomSingleModeRepresentationsAgree) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const CircuitSpec c = random_circuit(1, seed, 0.5, 0.4, 0.8);
    const CircuitState s = build_circuit_state(c, 40);
    EXPECT_LT(max_moment_diff(moments_from_fock(s.fock), s.gaussian), 1e-6) << seed;
    EXPECT_LT(s.fock.trace_deficit, 1e-8);
  }
}

TEST(FockCircuit, RandomTwoModeRepresentationsAgree) {
  const CircuitSpec c = random_circuit(2, 3, 0.3, 0.3, 0.6);
  const CircuitState s = build_circuit_state(c, 25);
  EXPECT_LT(max_moment_diff(moments_from_fock(s.fock), s.gaussian), 1e-6);
}

TEST(FockFidelity, MatchesGaussianEngineSingleMode) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const CircuitState a = build_circuit_state(random_circuit(1, 2 * seed, 0.5, 0.4, 0.8), 40);
    const CircuitState b = build_circuit_state(random_circuit(1, 2 * seed + 1, 0.5, 0.4, 0.8), 40);
    EXPECT_NEAR(uhlmann_fidelity_matrix(a.fock, b.fock), fidelity(a.gaussian, b.gaussian).F, 1e-8) << seed;
  }
}

TEST(FockFidelity, MatchesGaussianEngineTwoMode) {
  const CircuitState a = build_circuit_state(random_circuit(2, 41, 0.3, 0.3, 0.6), 25);
  const CircuitState b = build_circuit_state(random_circuit(2, 42, 0.3, 0.3, 0.6), 25);
  EXPECT_NEAR(uhlmann_fidelity_matrix(a.fock, b.fock), fidelity(a.gaussian, b.gaussian).F, 1e-8);
}

TEST(FockFidelity, DirectAndSingularValueRoutesAgree) {
  const CircuitState a = build_circuit_state(random_circuit(1, 5, 0.5, 0.4, 0.8), 30);
  const CircuitState b = build_circuit_state(random_circuit(1, 6, 0.5, 0.4, 0.8), 30);
  EXPECT_NEAR(uhlmann_fidelity_direct(a.fock, b.fock), uhlmann_fidelity_matrix(a.fock, b.fock), 1e-9);
}

TEST(FockFidelity, SelfFidelityIsOne) {
  const CircuitState a = build_circuit_state(random_circuit(1, 9, 0.5, 0.4, 0.8), 40);
  EXPECT_NEAR(uhlmann_fidelity_matrix(a.fock, a.fock), 1.0, 1e-8);
}

TEST(FockFidelity, PureStatesNeedClamping) {
  const CircuitState a = build_circuit_state(single({fk::Squeeze{0.3, 0.0, 0}}), 30);
  const CircuitState b = build_circuit_state(single({fk::Displace{Complex(0.5, 0.2), 0}}), 30);
  const FockFidelity f = uhlmann_fidelity_report(a.fock, b.fock);
  EXPECT_GT(f.clamped, 0.0);
  EXPECT_NEAR(f.F, fidelity(a.gaussian, b.gaussian).F, 1e-8);
}

TEST(FockFidelity, MultiplicativeOverModes) {
  const double n1 = 0.3, n2 = 0.2;
  const CircuitSpec a1 = single({fk::ThermalInput{{n1}}, fk::Squeeze{0.2, 0.4, 0}});
  const CircuitSpec b1 = single({fk::ThermalInput{{n2}}, fk::Displace{Complex(0.3, -0.1), 0}});
  const CircuitSpec a2 = single({fk::ThermalInput{{n2}}, fk::Phase{0.7, 0}});
  const CircuitSpec b2 = single({fk::ThermalInput{{n1}}, fk::Squeeze{0.1, 1.0, 0}});
  auto two = [](const CircuitSpec& x, const CircuitSpec& y) {
    CircuitSpec c;
    c.modes = 2;
    const auto& tx = std::get<fk::ThermalInput>(x.ops[0]);
    const auto& ty = std::get<fk::ThermalInput>(y.ops[0]);
    c.ops.emplace_back(fk::ThermalInput{{tx.nbar[0], ty.nbar[0]}});
    for (std::size_t i = 1; i < x.ops.size(); ++i) c.ops.push_back(x.ops[i]);
    for (std::size_t i = 1; i < y.ops.size(); ++i) {
      fk::Primitive p = y.ops[i];
      std::visit([](auto& op) {
        if constexpr (requires { op.mode; }) op.mode = 1;
      }, p);
      c.ops.push_back(p);
    }
    return c;
  };
  // Truncation acts mode by mode, so the identity holds at any cutoff.
  const int cut = 15;
  auto st = [&](const CircuitSpec& c) { return build_circuit_state(c, cut, 10, 1e-4).fock; };
  const double f1 = uhlmann_fidelity_matrix(st(a1), st(b1));
  const double f2 = uhlmann_fidelity_matrix(st(a2), st(b2));
  const double f12 = uhlmann_fidelity_matrix(st(two(a1, a2)), st(two(b1, b2)));
  EXPECT_NEAR(f12, f1 * f2, 1e-10);
}

TEST(FockCircuit, TruncationBudgetEnforced) {
  EXPECT_THROW(build_circuit_state(single({fk::ThermalInput{{1.5}}}), 4, 0), TruncationError);
}

TEST(FockFidelity, DimensionMismatchThrows) {
  const CircuitState a = build_circuit_state(single({}), 10);
  const CircuitState b = build_circuit_state(single({}), 12);
  EXPECT_THROW(uhlmann_fidelity_matrix(a.fock, b.fock), InvalidArgument);
}

TEST(FockCircuit, LimitsValidated) {
  EXPECT_THROW(circuit_moments(single({fk::Displace{Complex(2.0, 0.0), 0}})), InvalidArgument);
  EXPECT_THROW(circuit_moments(single({fk::Squeeze{1.0, 0.0, 0}})), InvalidArgument);
  EXPECT_THROW(circuit_moments(single({fk::ThermalInput{{2.0}}})), InvalidArgument);
  EXPECT_THROW(circuit_moments(single({fk::Phase{0.1, 1}})), InvalidArgument);
  EXPECT_THROW(circuit_moments(single({fk::Phase{0.1, 0}, fk::ThermalInput{{0.1}}})), InvalidArgument);
  CircuitSpec three;
  three.modes = 3;
  EXPECT_THROW(circuit_moments(three), InvalidArgument);
  CircuitSpec bs;
  bs.modes = 2;
  bs.ops.emplace_back(fk::BeamSplitter{0.3, 0.0, 1, 1});
  EXPECT_THROW(circuit_moments(bs), InvalidArgument);
  EXPECT_THROW(build_circuit_state(single({}), 2), InvalidArgument);
}
