// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qwalk/combinatorics.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/trajectory.hpp"
#include "qwalk/walk_config.hpp"

namespace qwalk {

using cplx = std::complex<double>;

// Coin direction relative to the Hamming weight of the vertex: R points to
// a 0-bit (the shift raises the weight), L to a 1-bit (the shift lowers it).
enum class Coin { R, L };

// Position of |coin, x> in the ordering
// (R,0), (L,1), (R,1), (L,2), ..., (R,m-1), (L,m).
inline int line_index(Coin coin, int x, int m) {
  if (coin == Coin::R && (x < 0 || x > m - 1)) {
    throw InvalidArgument("line_index: |R,x> needs 0 <= x <= m-1");
  }
  if (coin == Coin::L && (x < 1 || x > m)) {
    throw InvalidArgument("line_index: |L,x> needs 1 <= x <= m");
  }
  return coin == Coin::R ? 2 * x : 2 * x - 1;
}

// Amplitudes of a bit-swap-symmetric state over the 2m line basis states.
struct CollapsedState {
  int m = 0;
  Eigen::VectorXcd amplitudes;

  CollapsedState() = default;
  explicit CollapsedState(int m_) : m(m_), amplitudes(Eigen::VectorXcd::Zero(2 * m_)) {}

  cplx amplitude(Coin coin, int x) const { return amplitudes[line_index(coin, x, m)]; }
  cplx& amplitude(Coin coin, int x) { return amplitudes[line_index(coin, x, m)]; }

  // |R,x>|^2 + |L,x>|^2: total probability on Hamming shell x.
  double shell_probability(int x) const {
    double p = 0.0;
    if (x <= m - 1) p += std::norm(amplitude(Coin::R, x));
    if (x >= 1) p += std::norm(amplitude(Coin::L, x));
    return p;
  }

  double norm() const { return amplitudes.norm(); }

  static CollapsedState basis(int m, Coin coin, int x) {
    CollapsedState s(m);
    s.amplitude(coin, x) = 1.0;
    return s;
  }
};

// The diffusion coin restricted to the symmetric coin pair (up = R,
// down = L) on shell x. Shells 0 and m only carry one coin state, so the
// block is 1x1 there.
struct CoinBlock {
  int size = 2;
  Eigen::Matrix2cd entries = Eigen::Matrix2cd::Zero();
};

inline CoinBlock coin_block(int x, const WalkConfig& cfg) {
  const int m = cfg.m();
  if (x < 0 || x > m) throw InvalidArgument("coin_block: shell index out of range");
  const cplx g = cfg.diffusion_weight();
  CoinBlock block;
  if (x == 0 || x == m) {
    block.size = 1;
    block.entries(0, 0) = g - 1.0;
    return block;
  }
  const double md = m;
  const double off = std::sqrt(static_cast<double>(x) * (m - x)) / md;
  block.entries(0, 0) = g * ((m - x) / md) - 1.0;
  block.entries(1, 1) = g * (x / md) - 1.0;
  block.entries(0, 1) = g * off;
  block.entries(1, 0) = g * off;
  return block;
}

struct StepOperators {
  Eigen::MatrixXcd u;         // S * C0
  Eigen::MatrixXcd u_marked;  // S * C', with C1 = -I on the marked vertex
};

// Collapsed step operators. The shift maps |R,x> -> |L,x+1> and
// |L,x> -> |R,x-1>, which in line order swaps indices (2k, 2k+1).
inline StepOperators build_step_operators(const WalkConfig& cfg) {
  const int m = cfg.m();
  const int dim = 2 * m;
  Eigen::MatrixXcd coin = Eigen::MatrixXcd::Zero(dim, dim);
  for (int x = 0; x <= m; ++x) {
    const CoinBlock b = coin_block(x, cfg);
    if (b.size == 1) {
      const int i = x == 0 ? line_index(Coin::R, 0, m) : line_index(Coin::L, m, m);
      coin(i, i) = b.entries(0, 0);
      continue;
    }
    const int r = line_index(Coin::R, x, m);
    const int l = line_index(Coin::L, x, m);
    coin(r, r) = b.entries(0, 0);
    coin(r, l) = b.entries(0, 1);
    coin(l, r) = b.entries(1, 0);
    coin(l, l) = b.entries(1, 1);
  }
  StepOperators ops;
  ops.u.resize(dim, dim);
  for (int k = 0; k < dim; k += 2) {
    ops.u.row(k) = coin.row(k + 1);
    ops.u.row(k + 1) = coin.row(k);
  }
  ops.u_marked = ops.u;
  ops.u_marked(line_index(Coin::L, 1, m), line_index(Coin::R, 0, m)) -= cfg.diffusion_weight();
  return ops;
}

// One full iteration: U' first, then U.
inline void apply_iteration(const StepOperators& ops, Eigen::VectorXcd& psi) {
  Eigen::VectorXcd half = ops.u_marked * psi;
  psi.noalias() = ops.u * half;
}

// The parity-projected uniform state written in the line basis; valid for
// any m. Even shells only:
//   <R,x| = sqrt(C(m-1,x) / 2^(m-1)),  <L,x| = sqrt(C(m-1,x-1) / 2^(m-1)).
inline CollapsedState parity_projected_state(int m) {
  if (m < 2) throw InvalidArgument("parity_projected_state: m must be >= 2");
  CollapsedState s(m);
  const double db = pow2(m - 1);
  for (int x = 0; x <= m; x += 2) {
    if (x <= m - 1) s.amplitude(Coin::R, x) = std::sqrt(binomial(m - 1, x) / db);
    if (x >= 1) s.amplitude(Coin::L, x) = std::sqrt(binomial(m - 1, x - 1) / db);
  }
  return s;
}

// Initial state psi_0^(e) in the closed form used by the spectral analysis;
// defined for even m.
inline CollapsedState initial_state(const WalkConfig& cfg) {
  const int m = cfg.m();
  if (m % 2 != 0) {
    throw InvalidArgument("initial_state: m must be even; use parity_projected_state for odd m");
  }
  CollapsedState s(m);
  const double db = pow2(m - 1);
  s.amplitude(Coin::R, 0) = 1.0 / std::sqrt(db);
  s.amplitude(Coin::L, m) = 1.0 / std::sqrt(db);
  for (int x = 1; x <= m / 2 - 1; ++x) {
    s.amplitude(Coin::R, 2 * x) = std::sqrt(binomial(m - 1, 2 * x) / db);
    s.amplitude(Coin::L, 2 * x) = std::sqrt(binomial(m - 1, 2 * x - 1) / db);
  }
  return s;
}

inline double success_probability(const CollapsedState& state) {
  return std::norm(state.amplitude(Coin::R, 0));
}

// p(vertex 0) minus the largest single-vertex probability elsewhere. By the
// bit-swap symmetry each shell's probability is shared equally by its
// C(m,x) vertices.
inline double probability_gap(const CollapsedState& state) {
  double rest = 0.0;
  for (int x = 1; x <= state.m; ++x) {
    rest = std::max(rest, state.shell_probability(x) / binomial(state.m, x));
  }
  return success_probability(state) - rest;
}

inline Trajectory evolve_from(const WalkConfig& cfg, CollapsedState state, int t_max) {
  if (t_max < 0) throw InvalidArgument("evolve: t_max must be >= 0");
  if (state.m != cfg.m()) throw InvalidArgument("evolve: state dimension does not match config");
  const StepOperators ops = build_step_operators(cfg);
  // Each row holds at most two non-zeros.
  const Eigen::SparseMatrix<cplx> u = ops.u.sparseView();
  const Eigen::SparseMatrix<cplx> u_marked = ops.u_marked.sparseView();
  Eigen::VectorXcd half(state.amplitudes.size());
  Trajectory traj;
  traj.initial = {0, success_probability(state), probability_gap(state)};
  traj.rows.reserve(static_cast<std::size_t>(t_max));
  for (int t = 1; t <= t_max; ++t) {
    half.noalias() = u_marked * state.amplitudes;
    state.amplitudes.noalias() = u * half;
    traj.rows.push_back({t, success_probability(state), probability_gap(state)});
  }
  return traj;
}

// Runs t_max iterations from the parity-projected initial state.
inline Trajectory evolve(const WalkConfig& cfg, int t_max) {
  return evolve_from(cfg, parity_projected_state(cfg.m()), t_max);
}

// Default iteration budget: ceil(2.5 * (pi/4) * sqrt(2^m)).
inline int default_step_budget(int m) {
  return static_cast<int>(std::ceil(2.5 * (std::numbers::pi / 4.0) * std::sqrt(pow2(m))));
}

}  // namespace qwalk
