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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <Eigen/Dense>

#include "qwalk/error_model.hpp"
#include "qwalk/grover.hpp"

namespace qwalk {
namespace {

// Two-level oracle: the iteration restricted to span{|marked>, |rest>},
// |rest> the uniform state over the other N-1 items.
Eigen::Matrix2cd grover_two_level(int n_db, double delta) {
  const double N = std::ldexp(1.0, n_db);
  const double a = 1.0 / std::sqrt(N), b = std::sqrt((N - 1.0) / N);  // |s> = a|m> + b|r>
  const cplx w = 1.0 - std::polar(1.0, std::numbers::pi + delta);
  Eigen::Matrix2cd diffusion;
  diffusion << w * a * a - 1.0, w * a * b, w * a * b, w * b * b - 1.0;
  Eigen::Matrix2cd oracle = Eigen::Matrix2cd::Identity();
  oracle(0, 0) = std::polar(1.0, std::numbers::pi - delta);
  return diffusion * oracle;
}

TEST(Grover, InitialProbability) {
  const Trajectory t = grover_run(6, 0.0, 0);
  EXPECT_NEAR(t.initial.p_success, 1.0 / 64.0, 1e-15);
}

TEST(Grover, MatchesTwoLevelOracle) {
  for (double delta : {0.0, 0.05, 0.3}) {
    const int n = 8;
    const Eigen::Matrix2cd step = grover_two_level(n, delta);
    Eigen::Vector2cd v(1.0 / 16.0, std::sqrt(255.0 / 256.0));
    GroverState s = grover_initial_state(n);
    for (int t = 1; t <= 40; ++t) {
      v = step * v;
      grover_iteration(s, delta);
      ASSERT_LT(std::abs(s.amplitudes[0] - v[0]), 1e-12) << delta << " " << t;
      ASSERT_LT(std::abs(s.amplitudes[1] - v[1] / std::sqrt(255.0)), 1e-12);
    }
  }
}

TEST(Grover, ErrorFreeSearch) {
  const Trajectory t = grover_run(10, 0.0, 50);
  const Peak p = window_maximum(t, 50);
  EXPECT_EQ(p.t, 25);
  EXPECT_GE(p.p, 0.999);
  EXPECT_NEAR(grover_gap(10, 0.0), 1.0, 1e-3);
}

TEST(Grover, HalfPeakAtUnitErrorScale) {
  const GroverPeak p = grover_peak(10, 0.0625);
  EXPECT_NEAR(p.p_max, 0.5, 0.05);
  EXPECT_NEAR(p.gap, 0.4995, 0.05);
}

TEST(Grover, PeakMatchesClosedForm) {
  for (int n : {8, 10, 12}) {
    for (double delta : {0.0, 0.001, 0.01, 0.05}) {
      EXPECT_NEAR(grover_peak(n, delta).p_max, grover_pmax_model(n, delta), 0.03) << n << " " << delta;
    }
  }
}

TEST(Grover, GapIdentity) {
  for (int n : {8, 10}) {
    for (double delta : {0.0, 0.01, 0.05}) {
      const GroverPeak p = grover_peak(n, delta);
      EXPECT_NEAR(p.gap, grover_gap_closed_form(p.p_max, n), 1e-6);
    }
  }
}

TEST(Grover, UnmarkedAmplitudesStayEqualAndNormHolds) {
  GroverState s = grover_initial_state(7, 5);
  for (int t = 0; t < 30; ++t) {
    grover_iteration(s, 0.2);
    ASSERT_LT(s.unmarked_spread(), 1e-12);
    ASSERT_NEAR(s.norm(), 1.0, 1e-12);
  }
}

TEST(Grover, Guards) {
  EXPECT_THROW(grover_run(25, 0.0, 1), InvalidArgument);
  EXPECT_THROW(grover_run(0, 0.0, 1), InvalidArgument);
  EXPECT_THROW(grover_initial_state(4, 16), InvalidArgument);
  EXPECT_EQ(grover_step_budget(10), 51);
}

}  // namespace
}  // namespace qwalk
