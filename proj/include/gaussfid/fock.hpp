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

// Brute-force reference: Gaussian states as explicit density matrices in a
// truncated number basis, with the same circuit tracked symplectically.
//
// Conventions: a = (x + i p)/sqrt(2). Primitives act as rho -> U rho U^dag with
//   D(alpha) = exp(alpha a^dag - alpha^* a)
//   S(xi)    = exp((xi^* a^2 - xi a^dag^2)/2),  xi = r e^{i phi}
//   R(phi)   = exp(i phi a^dag a)
//   B        = exp(theta (e^{i phi} a_j a_k^dag - e^{-i phi} a_j^dag a_k))
//
// Every Gaussian unitary decomposes into these primitives (Bloch-Messiah),
// so random circuits cover all states inside the parameter limits.
//
// Operators are built on a working cutoff `cutoff + pad` per mode and the
// result is projected onto `cutoff`. The missing trace is the truncation
// error estimate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/Sparse>

#include "gaussfid/errors.hpp"
#include "gaussfid/linalg.hpp"
#include "gaussfid/state.hpp"
#include "gaussfid/symplectic.hpp"

namespace gaussfid {

namespace fock {

struct ThermalInput {
  std::vector<double> nbar;
};
struct Displace {
  Complex alpha;
  int mode = 0;
};
struct Squeeze {
  double r = 0.0;
  double phi = 0.0;
  int mode = 0;
};
struct BeamSplitter {
  double theta = 0.0;
  double phi = 0.0;
  int first = 0;
  int second = 1;
};
struct Phase {
  double phi = 0.0;
  int mode = 0;
};

using Primitive = std::variant<ThermalInput, Displace, Squeeze, BeamSplitter, Phase>;

struct Limits {
  double max_alpha = 1.5;
  double max_squeeze = 0.8;
  double max_nbar = 1.5;
  int max_modes = 2;
  int min_cutoff = 4;
};

}  // namespace fock

/// Ordered primitives. A ThermalInput, if present, must come first; without
/// one the input is vacuum.
struct CircuitSpec {
  int modes = 1;
  std::vector<fock::Primitive> ops;
};

struct FockDensityMatrix {
  int n_modes = 1;
  int cutoff = 0;
  CMatrix rho;
  double trace_deficit = 0.0;

  Eigen::Index dim() const { return rho.rows(); }
};

struct CircuitState {
  FockDensityMatrix fock;
  GaussianState gaussian;
};

namespace fock {

using SparseC = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline Eigen::Index ipow(Eigen::Index b, int e) {
  Eigen::Index r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

/// Single-mode annihilator truncated to `c` levels.
inline CMatrix annihilator(int c) {
  CMatrix a = CMatrix::Zero(c, c);
  for (int k = 1; k < c; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

/// Embeds a single-mode operator on `mode` of `modes` modes (mode 0 is the
/// most significant index).
inline SparseC embed(const CMatrix& op, int mode, int modes, int c) {
  const Eigen::Index before = ipow(c, mode), after = ipow(c, modes - mode - 1);
  const Eigen::Index d = before * c * after;
  std::vector<Eigen::Triplet<Complex>> t;
  for (Eigen::Index b = 0; b < before; ++b) {
    for (Eigen::Index i = 0; i < c; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) {
        if (op(i, j) == Complex(0.0, 0.0)) continue;
        for (Eigen::Index a = 0; a < after; ++a) {
          t.emplace_back((b * c + i) * after + a, (b * c + j) * after + a, op(i, j));
        }
      }
    }
  }
  SparseC s(d, d);
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

/// exp(G) for anti-Hermitian sparse G. The matrix is split into the
/// connected components of its sparsity graph, and each block is
/// exponentiated through the Hermitian eigendecomposition of -iG.
inline SparseC exp_antihermitian(const SparseC& g) {
  const Eigen::Index d = g.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Eigen::Index k = 0; k < g.outerSize(); ++k) {
    for (SparseC::InnerIterator it(g, k); it; ++it) {
      const Eigen::Index a = find(it.row()), b = find(it.col());
      if (a != b) parent[a] = b;
    }
  }
  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> block_of(static_cast<std::size_t>(d), -1);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::Index root = find(i);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(i);
  }
  const CMatrix dense = CMatrix(g);
  std::vector<Eigen::Triplet<Complex>> t;
  for (const auto& idx : blocks) {
    const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
    CMatrix h(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) h(i, j) = Complex(0.0, -1.0) * dense(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitize(h));
    if (es.info() != Eigen::Success) throw NumericalFailure("fock: generator eigendecomposition failed");
    CVector phase(m);
    for (Eigen::Index i = 0; i < m; ++i) phase(i) = std::exp(Complex(0.0, es.eigenvalues()(i)));
    const CMatrix u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        if (std::abs(u(i, j)) > 0.0) t.emplace_back(idx[i], idx[j], u(i, j));
  }
  SparseC out(d, d);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

inline CMatrix conjugate(const SparseC& u, const CMatrix& rho) {
  // Only sparse * dense products; U rho U^dag = (U (U rho)^dag)^dag.
  const CMatrix urd = (u * rho).adjoint();
  const CMatrix r = u * urd;
  return linalg::hermitize(r.adjoint());
}

inline void check_mode(int mode, int modes) {
  if (mode < 0 || mode >= modes) throw InvalidArgument("circuit: mode index out of range");
}

}  // namespace fock

/// Moments of the circuit output from the exact symplectic action of each
/// primitive. Also validates the circuit against the oracle limits.
inline GaussianState circuit_moments(const CircuitSpec& c, const fock::Limits& lim = {}) {
  const int n = c.modes;
  if (n < 1 || n > lim.max_modes) {
    throw InvalidArgument("circuit: the oracle supports 1 to " + std::to_string(lim.max_modes) + " modes");
  }
  Vector u = Vector::Zero(2 * n);
  Matrix v = 0.5 * Matrix::Identity(2 * n, 2 * n);
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const auto& op = c.ops[i];
    Matrix m = Matrix::Identity(2 * n, 2 * n);
    if (const auto* th = std::get_if<fock::ThermalInput>(&op)) {
      if (i != 0) throw InvalidArgument("circuit: thermal input must be the first primitive");
      if (static_cast<int>(th->nbar.size()) != n) throw InvalidArgument("circuit: thermal input needs one nbar per mode");
      for (int k = 0; k < n; ++k) {
        const double nb = th->nbar[static_cast<std::size_t>(k)];
        if (!(nb >= 0.0) || nb > lim.max_nbar) throw InvalidArgument("circuit: nbar outside oracle limits");
        v(k, k) = v(n + k, n + k) = nb + 0.5;
      }
      continue;
    }
    if (const auto* dp = std::get_if<fock::Displace>(&op)) {
      fock::check_mode(dp->mode, n);
      if (std::abs(dp->alpha) > lim.max_alpha) throw InvalidArgument("circuit: |alpha| outside oracle limits");
      u(dp->mode) += std::sqrt(2.0) * dp->alpha.real();
      u(n + dp->mode) += std::sqrt(2.0) * dp->alpha.imag();
      continue;
    }
    if (const auto* sq = std::get_if<fock::Squeeze>(&op)) {
      fock::check_mode(sq->mode, n);
      if (std::abs(sq->r) > lim.max_squeeze) throw InvalidArgument("circuit: squeezing outside oracle limits");
      m = symplectic::squeezer(n, sq->mode, sq->r, sq->phi);
    } else if (const auto* bs = std::get_if<fock::BeamSplitter>(&op)) {
      fock::check_mode(bs->first, n);
      fock::check_mode(bs->second, n);
      if (bs->first == bs->second) throw InvalidArgument("circuit: beam splitter needs two distinct modes");
      m = symplectic::beam_splitter(n, bs->first, bs->second, bs->theta, bs->phi);
    } else if (const auto* ph = std::get_if<fock::Phase>(&op)) {
      fock::check_mode(ph->mode, n);
      m = symplectic::phase_rotation(n, ph->mode, ph->phi);
    }
    u = m * u;
    v = m * v * m.transpose();
  }
  return GaussianState(u, linalg::symmetrize(v));
}

/// Builds the Fock and Gaussian representations of the same circuit.
/// Throws TruncationError if the projected trace deficit exceeds `budget`.
inline CircuitState build_circuit_state(const CircuitSpec& c, int cutoff, int pad = 10,
                                        double budget = 1e-8, const fock::Limits& lim = {}) {
  using fock::SparseC;
  using fock::ipow;
  GaussianState gaussian = circuit_moments(c, lim);
  const int n = c.modes;
  if (cutoff < lim.min_cutoff) throw InvalidArgument("circuit: cutoff must be at least " + std::to_string(lim.min_cutoff));
  if (pad < 0) throw InvalidArgument("circuit: pad must be non-negative");
  const int cw = cutoff + pad;
  const Eigen::Index d = ipow(cw, n);
  const CMatrix a1 = fock::annihilator(cw);
  std::vector<SparseC> a;
  for (int k = 0; k < n; ++k) a.push_back(fock::embed(a1, k, n, cw));

  std::vector<double> nbar(static_cast<std::size_t>(n), 0.0);
  if (!c.ops.empty()) {
    if (const auto* th = std::get_if<fock::ThermalInput>(&c.ops.front())) nbar = th->nbar;
  }

  // Product thermal input, geometric populations per mode.
  CMatrix rho = CMatrix::Zero(d, d);
  for (Eigen::Index idx = 0; idx < d; ++idx) {
    double p = 1.0;
    Eigen::Index rest = idx;
    for (int k = n - 1; k >= 0; --k) {
      const Eigen::Index level = rest % cw;
      rest /= cw;
      const double nb = nbar[static_cast<std::size_t>(k)];
      p *= std::pow(nb, static_cast<double>(level)) / std::pow(1.0 + nb, static_cast<double>(level) + 1.0);
    }
    rho(idx, idx) = p;
  }

  for (const auto& op : c.ops) {
    SparseC gen;
    if (std::holds_alternative<fock::ThermalInput>(op)) continue;
    if (const auto* dp = std::get_if<fock::Displace>(&op)) {
      const SparseC& ak = a[static_cast<std::size_t>(dp->mode)];
      gen = dp->alpha * SparseC(ak.adjoint()) - std::conj(dp->alpha) * ak;
    } else if (const auto* sq = std::get_if<fock::Squeeze>(&op)) {
      const Complex xi = std::polar(sq->r, sq->phi);
      const SparseC& ak = a[static_cast<std::size_t>(sq->mode)];
      const SparseC a2 = ak * ak;
      gen = 0.5 * (std::conj(xi) * a2 - xi * SparseC(a2.adjoint()));
    } else if (const auto* bs = std::get_if<fock::BeamSplitter>(&op)) {
      const SparseC& aj = a[static_cast<std::size_t>(bs->first)];
      const SparseC& ak = a[static_cast<std::size_t>(bs->second)];
      const Complex e = std::polar(1.0, bs->phi);
      const SparseC jk = aj * SparseC(ak.adjoint());
      gen = bs->theta * (e * jk - std::conj(e) * SparseC(jk.adjoint()));
    } else if (const auto* ph = std::get_if<fock::Phase>(&op)) {
      const SparseC& ak = a[static_cast<std::size_t>(ph->mode)];
      gen = Complex(0.0, ph->phi) * (SparseC(ak.adjoint()) * ak);
    }
    rho = fock::conjugate(fock::exp_antihermitian(gen), rho);
  }

  // Project onto the cutoff.
  const Eigen::Index dc = ipow(cutoff, n);
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(dc));
  for (Eigen::Index idx = 0; idx < d; ++idx) {
    Eigen::Index rest = idx;
    bool inside = true;
    for (int k = 0; k < n; ++k) {
      if (rest % cw >= cutoff) inside = false;
      rest /= cw;
    }
    if (inside) keep.push_back(idx);
  }
  CircuitState out{FockDensityMatrix{}, std::move(gaussian)};
  out.fock.n_modes = n;
  out.fock.cutoff = cutoff;
  out.fock.rho.resize(dc, dc);
  for (Eigen::Index i = 0; i < dc; ++i)
    for (Eigen::Index j = 0; j < dc; ++j) out.fock.rho(i, j) = rho(keep[i], keep[j]);
  out.fock.trace_deficit = 1.0 - out.fock.rho.trace().real();
  if (out.fock.trace_deficit > budget) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "circuit: trace deficit %.3g exceeds the budget %.3g; raise the cutoff",
                  out.fock.trace_deficit, budget);
    throw TruncationError(buf,
                          out.fock.trace_deficit);
  }
  return out;
}

struct FockFidelity {
  double F = 0.0;
  /// Largest magnitude of a negative eigenvalue clamped to zero.
  double clamped = 0.0;
};

namespace fock {

inline CMatrix sqrt_density(const CMatrix& rho, double& clamped) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitize(rho));
  if (es.info() != Eigen::Success) throw NumericalFailure("fock: density eigendecomposition failed");
  const Vector& lam = es.eigenvalues();
  const double top = std::max(lam.maxCoeff(), 0.0);
  const double floor = static_cast<double>(rho.rows()) * std::numeric_limits<double>::epsilon() * top;
  Vector root(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -1e-8) {
      throw NumericalFailure("fock: density matrix has eigenvalue " + num(lam(i)));
    }
    if (lam(i) < floor) {
      clamped = std::max(clamped, std::abs(lam(i)));
      root(i) = 0.0;
    } else {
      root(i) = std::sqrt(lam(i));
    }
  }
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace fock

/// Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)), evaluated as the sum of singular
/// values of sqrt(rho1) sqrt(rho2), which is the same quantity.
inline FockFidelity uhlmann_fidelity_report(const FockDensityMatrix& r1, const FockDensityMatrix& r2) {
  if (r1.rho.rows() != r2.rho.rows() || r1.rho.cols() != r2.rho.cols()) {
    throw InvalidArgument("uhlmann_fidelity_matrix: dimension mismatch");
  }
  FockFidelity out;
  const CMatrix s1 = fock::sqrt_density(r1.rho, out.clamped);
  const CMatrix s2 = fock::sqrt_density(r2.rho, out.clamped);
  Eigen::BDCSVD<CMatrix> svd(s1 * s2);
  out.F = svd.singularValues().sum();
  return out;
}

inline double uhlmann_fidelity_matrix(const FockDensityMatrix& r1, const FockDensityMatrix& r2) {
  return uhlmann_fidelity_report(r1, r2).F;
}

/// The textbook route, Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)).
inline double uhlmann_fidelity_direct(const FockDensityMatrix& r1, const FockDensityMatrix& r2) {
  double clamped = 0.0;
  const CMatrix s1 = fock::sqrt_density(r1.rho, clamped);
  const CMatrix inner = linalg::hermitize(s1 * r2.rho * s1);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(inner, Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) f += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  return f;
}

/// Mean and covariance of a Fock-space state, normalized by its trace.
inline GaussianState moments_from_fock(const FockDensityMatrix& r) {
  using fock::SparseC;
  const int n = r.n_modes;
  const CMatrix a1 = fock::annihilator(r.cutoff);
  const double s2 = 1.0 / std::sqrt(2.0);
  std::vector<SparseC> q(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    const SparseC ak = fock::embed(a1, k, n, r.cutoff);
    const SparseC ad = SparseC(ak.adjoint());
    q[static_cast<std::size_t>(k)] = s2 * (ak + ad);
    q[static_cast<std::size_t>(n + k)] = Complex(0.0, -s2) * (ak - ad);
  }
  // Tr(rho X) = sum_ij rho_ji X_ij over the nonzeros of X.
  auto expect = [&](const SparseC& x) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index k = 0; k < x.outerSize(); ++k)
      for (SparseC::InnerIterator it(x, k); it; ++it) acc += r.rho(it.col(), it.row()) * it.value();
    return acc.real();
  };
  const double tr = r.rho.trace().real();
  Vector u(2 * n);
  for (int k = 0; k < 2 * n; ++k) u(k) = expect(q[static_cast<std::size_t>(k)]) / tr;
  Matrix v(2 * n, 2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    for (int l = k; l < 2 * n; ++l) {
      // The real part of Tr(rho Q_k Q_l) is the symmetrized moment.
      const SparseC qq = q[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(l)];
      v(k, l) = v(l, k) = expect(qq) / tr - u(k) * u(l);
    }
  }
  return GaussianState(u, v);
}

/// Random circuit: thermal input, squeezers, beam splitter, displacements and
/// phases, with magnitudes bounded by the arguments.
inline CircuitSpec random_circuit(int modes, std::uint64_t seed, double max_nbar, double max_squeeze,
                                  double max_alpha) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uni = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  constexpr double pi = 3.14159265358979323846;
  CircuitSpec c;
  c.modes = modes;
  fock::ThermalInput th;
  for (int k = 0; k < modes; ++k) th.nbar.push_back(uni(0.0, max_nbar));
  c.ops.emplace_back(th);
  for (int k = 0; k < modes; ++k) c.ops.emplace_back(fock::Squeeze{uni(0.0, max_squeeze), uni(0.0, 2 * pi), k});
  if (modes == 2) c.ops.emplace_back(fock::BeamSplitter{uni(0.0, pi / 2), uni(0.0, 2 * pi), 0, 1});
  for (int k = 0; k < modes; ++k) {
    c.ops.emplace_back(fock::Displace{std::polar(uni(0.0, max_alpha), uni(0.0, 2 * pi)), k});
    c.ops.emplace_back(fock::Phase{uni(0.0, 2 * pi), k});
  }
  return c;
}

}  // namespace gaussfid
