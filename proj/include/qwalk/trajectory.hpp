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

#include <cstddef>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

struct TrajectoryRow {
  int t = 0;
  double p_success = 0.0;
  double p_gap = 0.0;
};

// Success probability and probability gap after every full iteration.
// `initial` holds the t = 0 values; `rows` starts at t = 1.
struct Trajectory {
  TrajectoryRow initial;
  std::vector<TrajectoryRow> rows;

  std::size_t size() const { return rows.size(); }
  const TrajectoryRow& at(int t) const {
    if (t == 0) return initial;
    if (t < 0 || static_cast<std::size_t>(t) > rows.size()) {
      throw InvalidArgument("Trajectory::at: step out of range");
    }
    return rows[static_cast<std::size_t>(t) - 1];
  }
};

struct Peak {
  int t = 0;
  double p = 0.0;
};

// Largest success probability over t in [1, t_last]; ties go to smaller t.
inline Peak window_maximum(const Trajectory& traj, int t_last) {
  if (t_last < 1 || static_cast<std::size_t>(t_last) > traj.rows.size()) {
    throw InvalidArgument("window_maximum: window outside trajectory");
  }
  Peak best{traj.rows[0].t, traj.rows[0].p_success};
  for (int i = 1; i < t_last; ++i) {
    const auto& row = traj.rows[static_cast<std::size_t>(i)];
    if (row.p_success > best.p) best = {row.t, row.p_success};
  }
  return best;
}

// The first oscillation peak: the earliest local maximum over [1, t_last]
// whose height is at least half the window maximum. Later oscillation
// periods can rise marginally higher than the first, which would otherwise
// move the iteration count by a whole period.
inline Peak first_major_peak(const Trajectory& traj, int t_last) {
  const Peak top = window_maximum(traj, t_last);
  const auto p = [&](int t) { return traj.at(t).p_success; };
  for (int t = 1; t <= t_last; ++t) {
    const bool rising = p(t) >= p(t - 1);
    const bool falling = t == t_last || p(t) > p(t + 1);
    if (rising && falling && p(t) >= 0.5 * top.p) return {t, p(t)};
  }
  return top;
}

}  // namespace qwalk
