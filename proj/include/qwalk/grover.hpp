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
#include <numbers>
#include <vector>

#include "qwalk/combinatorics.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/trajectory.hpp"

// Grover search over 2^n items with the same systematic phase error as the
// walk. The diffusion phase is pi + delta and the oracle phase pi - delta,
// a relative mismatch of 2 delta per iteration like the walk's two errored
// coins; this reproduces 4 / (4 + delta^2 2^n) for the peak.

namespace qwalk {

inline constexpr int kMaxGroverExponent = 24;

struct GroverState {
  int n_db = 0;
  std::uint64_t marked = 0;
  std::vector<std::complex<double>> amplitudes;

  std::uint64_t size() const { return std::uint64_t{1} << n_db; }
  double marked_probability() const { return std::norm(amplitudes[marked]); }
  double norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }
  // Largest |a_i - a_j| over unmarked items.
  double unmarked_spread() const {
    double lo_re = INFINITY, hi_re = -INFINITY, lo_im = INFINITY, hi_im = -INFINITY;
    for (std::uint64_t i = 0; i < size(); ++i) {
      if (i == marked) continue;
      lo_re = std::min(lo_re, amplitudes[i].real());
      hi_re = std::max(hi_re, amplitudes[i].real());
      lo_im = std::min(lo_im, amplitudes[i].imag());
      hi_im = std::max(hi_im, amplitudes[i].imag());
    }
    return std::hypot(hi_re - lo_re, hi_im - lo_im);
  }
  double gap() const {
    double best = 0.0;
    for (std::uint64_t i = 0; i < size(); ++i) {
      if (i != marked) best = std::max(best, std::norm(amplitudes[i]));
    }
    return marked_probability() - best;
  }
};

inline void check_grover_exponent(int n_db) {
  if (n_db < 1 || n_db > kMaxGroverExponent) {
    throw InvalidArgument("grover: n_db must lie in [1, 24]");
  }
}

inline GroverState grover_initial_state(int n_db, std::uint64_t marked = 0) {
  check_grover_exponent(n_db);
  GroverState s;
  s.n_db = n_db;
  if (marked >= s.size()) throw InvalidArgument("grover: marked item out of range");
  s.marked = marked;
  s.amplitudes.assign(s.size(), std::complex<double>(1.0 / std::sqrt(pow2(n_db)), 0.0));
  return s;
}

inline void grover_iteration(GroverState& s, double delta) {
  s.amplitudes[s.marked] *= std::polar(1.0, std::numbers::pi - delta);
  // (1 - e^{i(pi + delta)}) |s><s| - I
  const std::complex<double> weight = 1.0 - std::polar(1.0, std::numbers::pi + delta);
  std::complex<double> sum = 0.0;
  for (const auto& a : s.amplitudes) sum += a;
  const std::complex<double> shift = weight * sum / pow2(s.n_db);
  for (auto& a : s.amplitudes) a = shift - a;
}

inline int grover_step_budget(int n_db) {
  return static_cast<int>(std::ceil(2.0 * std::numbers::pi / 4.0 * std::sqrt(pow2(n_db))));
}

inline Trajectory grover_run(int n_db, double delta, int t_max, std::uint64_t marked = 0) {
  if (t_max < 0) throw InvalidArgument("grover_run: t_max must be >= 0");
  GroverState s = grover_initial_state(n_db, marked);
  Trajectory traj;
  traj.initial = {0, s.marked_probability(), s.gap()};
  traj.rows.reserve(static_cast<std::size_t>(t_max));
  for (int t = 1; t <= t_max; ++t) {
    grover_iteration(s, delta);
    traj.rows.push_back({t, s.marked_probability(), s.gap()});
  }
  return traj;
}

struct GroverPeak {
  int t = 0;
  double p_max = 0.0;
  double gap = 0.0;
};

// Window maximum over [1, ceil(2 (pi/4) sqrt(2^n))] and the gap there.
inline GroverPeak grover_peak(int n_db, double delta) {
  const int budget = grover_step_budget(n_db);
  const Trajectory traj = grover_run(n_db, delta, budget);
  const Peak top = window_maximum(traj, budget);
  return {top.t, top.p, traj.at(top.t).p_gap};
}

inline double grover_gap(int n_db, double delta) { return grover_peak(n_db, delta).gap; }

}  // namespace qwalk
