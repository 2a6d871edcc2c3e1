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
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qwalk/collapsed_walk.hpp"
#include "qwalk/combinatorics.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/trajectory.hpp"
#include "qwalk/walk_config.hpp"

namespace qwalk {

inline constexpr int kMaxFullDimension = 16;

// Amplitudes over coin (x) vertex, m * 2^m entries. The coin block of a
// vertex is contiguous: index = vertex * m + (d - 1), d = 1..m. Direction d
// flips bit d-1 of the vertex label.
struct FullState {
  int m = 0;
  std::vector<cplx> amplitudes;

  FullState() = default;
  explicit FullState(int m_) : m(m_), amplitudes(static_cast<std::size_t>(m_) << m_) {}

  std::uint64_t vertex_count() const { return std::uint64_t{1} << m; }
  std::size_t index(int d, std::uint64_t vertex) const {
    return static_cast<std::size_t>(vertex) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(d - 1);
  }
  cplx amplitude(int d, std::uint64_t vertex) const { return amplitudes[index(d, vertex)]; }
  cplx& amplitude(int d, std::uint64_t vertex) { return amplitudes[index(d, vertex)]; }

  double vertex_probability(std::uint64_t vertex) const {
    double p = 0.0;
    for (int d = 1; d <= m; ++d) p += std::norm(amplitude(d, vertex));
    return p;
  }

  double norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }
};

struct MarkedSpec {
  std::uint64_t vertex = 0;
};

inline void check_full_dimension(int m) {
  if (m < 2) throw InvalidArgument("hypercube: m must be >= 2");
  if (m > kMaxFullDimension) {
    throw InvalidArgument("hypercube: m too large for the dense full-space representation (max 16)");
  }
}

inline void check_marked(const MarkedSpec& marked, int m) {
  if (marked.vertex >= (std::uint64_t{1} << m)) {
    throw InvalidArgument("MarkedSpec: vertex out of range");
  }
  // Database items sit on even vertices; an odd marked vertex would never
  // carry amplitude when the marking coin is applied.
  if (hamming_weight(marked.vertex) % 2 != 0) {
    throw InvalidArgument("MarkedSpec: marked vertex must have even Hamming weight");
  }
}

// |d, x> -> |d, x xor e_d>.
inline FullState apply_shift(const FullState& state) {
  FullState out(state.m);
  const std::uint64_t n = state.vertex_count();
  for (std::uint64_t x = 0; x < n; ++x) {
    for (int d = 1; d <= state.m; ++d) {
      out.amplitude(d, x ^ (std::uint64_t{1} << (d - 1))) = state.amplitude(d, x);
    }
  }
  return out;
}

// Diffusion coin (1 - e^{i theta}) |S^C><S^C| - I at every vertex; with a
// marked vertex, C1 = -I there instead.
inline void apply_coin_in_place(FullState& state, const WalkConfig& cfg,
                                std::optional<MarkedSpec> marked) {
  const int m = state.m;
  const cplx g = cfg.diffusion_weight();
  const std::uint64_t n = state.vertex_count();
  for (std::uint64_t x = 0; x < n; ++x) {
    cplx* block = state.amplitudes.data() + state.index(1, x);
    if (marked && x == marked->vertex) {
      for (int d = 0; d < m; ++d) block[d] = -block[d];
      continue;
    }
    cplx mean = 0.0;
    for (int d = 0; d < m; ++d) mean += block[d];
    mean /= static_cast<double>(m);
    const cplx common = g * mean;
    for (int d = 0; d < m; ++d) block[d] = common - block[d];
  }
}

inline FullState apply_coin(FullState state, const WalkConfig& cfg,
                            std::optional<MarkedSpec> marked = std::nullopt) {
  if (state.m != cfg.m()) throw InvalidArgument("apply_coin: dimension mismatch");
  apply_coin_in_place(state, cfg, marked);
  return state;
}

// One full iteration U U' = S (C0 x I) S C'.
inline FullState apply_iteration_full(FullState state, const WalkConfig& cfg,
                                      const MarkedSpec& marked) {
  apply_coin_in_place(state, cfg, marked);
  state = apply_shift(state);
  apply_coin_in_place(state, cfg, std::nullopt);
  return apply_shift(state);
}

// Orthogonal projection onto even-weight vertices, renormalised.
inline FullState parity_project(FullState state) {
  double kept = 0.0;
  for (std::uint64_t x = 0; x < state.vertex_count(); ++x) {
    const bool even = hamming_weight(x) % 2 == 0;
    for (int d = 1; d <= state.m; ++d) {
      cplx& a = state.amplitude(d, x);
      if (!even) a = 0.0;
      kept += std::norm(a);
    }
  }
  if (kept == 0.0) throw InvalidArgument("parity_project: state has no even-vertex support");
  const double scale = 1.0 / std::sqrt(kept);
  for (cplx& a : state.amplitudes) a *= scale;
  return state;
}

inline FullState uniform_full_state(int m) {
  check_full_dimension(m);
  FullState s(m);
  const double amp = 1.0 / std::sqrt(static_cast<double>(s.amplitudes.size()));
  std::fill(s.amplitudes.begin(), s.amplitudes.end(), cplx(amp, 0.0));
  return s;
}

inline FullState initial_state_full(const WalkConfig& cfg) {
  return parity_project(uniform_full_state(cfg.m()));
}

inline double full_probability_gap(const FullState& state, const MarkedSpec& marked) {
  double rest = 0.0;
  for (std::uint64_t x = 0; x < state.vertex_count(); ++x) {
    if (x != marked.vertex) rest = std::max(rest, state.vertex_probability(x));
  }
  return state.vertex_probability(marked.vertex) - rest;
}

inline Trajectory evolve_full(const WalkConfig& cfg, const MarkedSpec& marked, int t_max) {
  check_full_dimension(cfg.m());
  check_marked(marked, cfg.m());
  if (t_max < 0) throw InvalidArgument("evolve_full: t_max must be >= 0");
  FullState state = initial_state_full(cfg);
  Trajectory traj;
  traj.initial = {0, state.vertex_probability(marked.vertex), full_probability_gap(state, marked)};
  for (int t = 1; t <= t_max; ++t) {
    state = apply_iteration_full(std::move(state), cfg, marked);
    traj.rows.push_back({t, state.vertex_probability(marked.vertex),
                         full_probability_gap(state, marked)});
  }
  return traj;
}

// P_ij: swaps vertex bits i and j together with coin directions i and j.
inline FullState apply_bit_swap(const FullState& state, int i, int j) {
  const int m = state.m;
  if (i < 1 || i > m || j < 1 || j > m) throw InvalidArgument("bit swap: index out of range");
  const auto perm_dir = [&](int d) { return d == i ? j : (d == j ? i : d); };
  const std::uint64_t bi = std::uint64_t{1} << (i - 1);
  const std::uint64_t bj = std::uint64_t{1} << (j - 1);
  FullState out(m);
  for (std::uint64_t x = 0; x < state.vertex_count(); ++x) {
    std::uint64_t y = x & ~(bi | bj);
    if (x & bi) y |= bj;
    if (x & bj) y |= bi;
    for (int d = 1; d <= m; ++d) out.amplitude(perm_dir(d), y) = state.amplitude(d, x);
  }
  return out;
}

// max |(P^+ UU' P - UU') e_k| over the probe states e_k (marked vertex 0).
// Probes are every basis state for m*2^m <= 4096, otherwise a fixed set of
// pseudo-random unit vectors.
inline double permutation_conjugation_check(const WalkConfig& cfg, int i, int j) {
  const int m = cfg.m();
  check_full_dimension(m);
  if (i < 1 || i > m || j < 1 || j > m) {
    throw InvalidArgument("permutation_conjugation_check: bit index out of range");
  }
  if (i == j) throw InvalidArgument("permutation_conjugation_check: i must differ from j");
  const MarkedSpec marked{0};
  const std::size_t dim = static_cast<std::size_t>(m) << m;

  std::vector<FullState> probes;
  if (dim <= 4096) {
    for (std::size_t k = 0; k < dim; ++k) {
      FullState e(m);
      e.amplitudes[k] = 1.0;
      probes.push_back(std::move(e));
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    for (int k = 0; k < 8; ++k) {
      FullState v(m);
      for (cplx& a : v.amplitudes) a = {normal(rng), normal(rng)};
      const double n = v.norm();
      for (cplx& a : v.amplitudes) a /= n;
      probes.push_back(std::move(v));
    }
  }

  double worst = 0.0;
  for (const FullState& probe : probes) {
    const FullState direct = apply_iteration_full(probe, cfg, marked);
    // P is an involution, so P^+ = P.
    const FullState conj =
        apply_bit_swap(apply_iteration_full(apply_bit_swap(probe, i, j), cfg, marked), i, j);
    for (std::size_t k = 0; k < dim; ++k) {
      worst = std::max(worst, std::abs(conj.amplitudes[k] - direct.amplitudes[k]));
    }
  }
  return worst;
}

// Projects a bit-swap-symmetric state onto the 2m line basis states. The
// amplitude of |d, x> of a symmetric state depends only on (|x|, x_d), so
// each class must be constant; the input is rejected otherwise.
inline CollapsedState collapse_state(const FullState& state, double tolerance = 1e-10) {
  const int m = state.m;
  CollapsedState out(m);
  std::vector<cplx> sum(static_cast<std::size_t>(2 * m), 0.0);
  std::vector<double> count(static_cast<std::size_t>(2 * m), 0.0);
  const auto class_of = [&](int d, std::uint64_t x) {
    const int w = hamming_weight(x);
    const bool bit = (x >> (d - 1)) & 1U;
    return static_cast<std::size_t>(line_index(bit ? Coin::L : Coin::R, w, m));
  };
  for (std::uint64_t x = 0; x < state.vertex_count(); ++x) {
    for (int d = 1; d <= m; ++d) {
      const std::size_t c = class_of(d, x);
      sum[c] += state.amplitude(d, x);
      count[c] += 1.0;
    }
  }
  for (std::uint64_t x = 0; x < state.vertex_count(); ++x) {
    for (int d = 1; d <= m; ++d) {
      const std::size_t c = class_of(d, x);
      if (std::abs(state.amplitude(d, x) - sum[c] / count[c]) > tolerance) {
        throw InvalidArgument("collapse_state: state is not symmetric under bit swaps");
      }
    }
  }
  for (std::size_t c = 0; c < sum.size(); ++c) {
    out.amplitudes[static_cast<Eigen::Index>(c)] = sum[c] / std::sqrt(count[c]);
  }
  return out;
}

// Inverse of collapse_state: spreads each line amplitude uniformly over its
// class of (direction, vertex) pairs.
inline FullState expand_state(const CollapsedState& state) {
  const int m = state.m;
  check_full_dimension(m);
  FullState out(m);
  for (std::uint64_t x = 0; x < out.vertex_count(); ++x) {
    const int w = hamming_weight(x);
    for (int d = 1; d <= m; ++d) {
      const bool bit = (x >> (d - 1)) & 1U;
      const Coin coin = bit ? Coin::L : Coin::R;
      const double size = binomial(m, w) * (bit ? w : m - w);
      out.amplitude(d, x) = state.amplitude(coin, w) / std::sqrt(size);
    }
  }
  return out;
}

}  // namespace qwalk
