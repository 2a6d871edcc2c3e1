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
#include <complex>
#include <Eigen/Dense>

#include "qwalk/collapsed_walk.hpp"
#include "qwalk/combinatorics.hpp"

namespace qwalk {
namespace {

// Coin-space oracle: at a vertex of weight x the symmetric coin states are
// the uniform superpositions over the m-x "up" directions and the x "down"
// directions. Restrict (1 - e^{i theta}) |s><s| - I to them directly.
Eigen::Matrix2cd restricted_coin(int m, int x, double delta) {
  const cplx g = 1.0 - std::polar(1.0, std::numbers::pi + delta);
  Eigen::MatrixXcd coin = g * Eigen::MatrixXcd::Constant(m, m, 1.0 / m) - Eigen::MatrixXcd::Identity(m, m);
  Eigen::VectorXcd up = Eigen::VectorXcd::Zero(m), down = Eigen::VectorXcd::Zero(m);
  for (int d = 0; d < m; ++d) (d < m - x ? up : down)[d] = 1.0;
  if (m - x > 0) up /= std::sqrt(m - x);
  if (x > 0) down /= std::sqrt(x);
  Eigen::Matrix2cd out;
  out << up.dot(coin * up), up.dot(coin * down), down.dot(coin * up), down.dot(coin * down);
  return out;
}

TEST(CollapsedWalk, LineIndexOrder) {
  EXPECT_EQ(line_index(Coin::R, 0, 8), 0);
  EXPECT_EQ(line_index(Coin::L, 1, 8), 1);
  EXPECT_EQ(line_index(Coin::R, 1, 8), 2);
  EXPECT_EQ(line_index(Coin::L, 8, 8), 15);
  EXPECT_THROW(line_index(Coin::L, 0, 8), InvalidArgument);
  EXPECT_THROW(line_index(Coin::R, 8, 8), InvalidArgument);
}

TEST(CollapsedWalk, CoinBlocksMatchRestrictedFullCoin) {
  for (int m : {4, 5, 8}) {
    for (double delta : {0.0, 0.2, -0.7}) {
      const WalkConfig cfg(m, delta);
      for (int x = 0; x <= m; ++x) {
        const CoinBlock b = coin_block(x, cfg);
        const Eigen::Matrix2cd ref = restricted_coin(m, x, delta);
        if (x == 0) {
          ASSERT_EQ(b.size, 1);
          EXPECT_LT(std::abs(b.entries(0, 0) - ref(0, 0)), 1e-14);
        } else if (x == m) {
          ASSERT_EQ(b.size, 1);
          EXPECT_LT(std::abs(b.entries(0, 0) - ref(1, 1)), 1e-14);
        } else {
          ASSERT_EQ(b.size, 2);
          EXPECT_LT((b.entries - ref).cwiseAbs().maxCoeff(), 1e-14) << m << " " << x;
        }
      }
    }
  }
}

TEST(CollapsedWalk, ErrorFreeCoinIsReflection) {
  const int m = 8;
  const WalkConfig cfg(m, 0.0);
  for (int x = 1; x < m; ++x) {
    const CoinBlock b = coin_block(x, cfg);
    Eigen::Matrix2cd expect;
    const double s = 2.0 * std::sqrt(static_cast<double>(x * (m - x))) / m;
    expect << 2.0 * (m - x) / m - 1.0, s, s, 2.0 * x / m - 1.0;
    EXPECT_LT((b.entries - expect).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((b.entries * b.entries - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(CollapsedWalk, StepOperatorsUnitary) {
  for (int m : {4, 7, 8, 16}) {
    for (double delta : {0.0, 0.05, 0.3, 1.0}) {
      const StepOperators ops = build_step_operators(WalkConfig(m, delta));
      const auto id = Eigen::MatrixXcd::Identity(2 * m, 2 * m);
      EXPECT_LT((ops.u.adjoint() * ops.u - id).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((ops.u_marked.adjoint() * ops.u_marked - id).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(CollapsedWalk, MarkedStepFlipsShellZero) {
  // C1 = -I at the marked vertex: |R,0> -> -|L,1> after the shift.
  const StepOperators ops = build_step_operators(WalkConfig(6, 0.3));
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(12);
  e[0] = 1.0;
  const Eigen::VectorXcd out = ops.u_marked * e;
  EXPECT_LT(std::abs(out[1] + 1.0), 1e-15);
  EXPECT_NEAR(out.norm(), 1.0, 1e-15);
}

TEST(CollapsedWalk, InitialStateMatchesParityProjection) {
  for (int m : {4, 6, 8, 12}) {
    const CollapsedState a = initial_state(WalkConfig(m, 0.0));
    const CollapsedState b = parity_projected_state(m);
    EXPECT_NEAR(a.norm(), 1.0, 1e-14);
    EXPECT_LT((a.amplitudes - b.amplitudes).norm(), 1e-14);
  }
  EXPECT_THROW(initial_state(WalkConfig(7, 0.0)), InvalidArgument);
  EXPECT_NEAR(parity_projected_state(7).norm(), 1.0, 1e-14);
}

TEST(CollapsedWalk, InitialSuccessProbability) {
  const Trajectory t = evolve(WalkConfig(4, 0.0), 0);
  EXPECT_NEAR(t.initial.p_success, 1.0 / 8.0, 1e-15);
  EXPECT_EQ(t.size(), 0u);
}

TEST(CollapsedWalk, NormPreservedAlongTrajectory) {
  const WalkConfig cfg(10, 0.2);
  const StepOperators ops = build_step_operators(cfg);
  Eigen::VectorXcd psi = parity_projected_state(10).amplitudes;
  for (int t = 0; t < 200; ++t) {
    apply_iteration(ops, psi);
    ASSERT_NEAR(psi.norm(), 1.0, 1e-12);
  }
}

TEST(CollapsedWalk, SparseAndDenseIterationAgree) {
  const WalkConfig cfg(9, 0.1);
  const StepOperators ops = build_step_operators(cfg);
  Eigen::VectorXcd psi = parity_projected_state(9).amplitudes;
  const Trajectory traj = evolve(cfg, 60);
  for (int t = 1; t <= 60; ++t) {
    apply_iteration(ops, psi);
    EXPECT_NEAR(std::norm(psi[0]), traj.at(t).p_success, 1e-14);
  }
}

// Peak positions of the exact walk (marked vertex 0, database 2^(m-1)).
TEST(CollapsedWalk, PeakPositions) {
  const Trajectory a = evolve(WalkConfig(8, 0.0), 40);
  const Peak pa = window_maximum(a, 40);
  EXPECT_EQ(pa.t, 9);
  EXPECT_NEAR(pa.p, 0.8689, 1e-4);

  const Trajectory b = evolve(WalkConfig(8, 0.2), 40);
  EXPECT_EQ(window_maximum(b, 40).t, 6);
  EXPECT_NEAR(window_maximum(b, 40).p, 0.3335, 1e-4);

  // database of 2^8 items: 13 and 6 iterations
  EXPECT_EQ(first_major_peak(evolve(WalkConfig(9, 0.0), 40), 40).t, 13);
  EXPECT_EQ(first_major_peak(evolve(WalkConfig(9, 0.2), 40), 40).t, 6);
}

TEST(CollapsedWalk, GapIsBoundedBySuccess) {
  const Trajectory t = evolve(WalkConfig(8, 0.1), 40);
  for (const auto& row : t.rows) {
    EXPECT_LE(row.p_gap, row.p_success + 1e-15);
    EXPECT_GE(row.p_success, 0.0);
    EXPECT_LE(row.p_success, 1.0 + 1e-12);
  }
}

TEST(CollapsedWalk, DefaultBudget) {
  EXPECT_EQ(default_step_budget(8), 32);  // ceil(2.5 * pi/4 * 16) = ceil(31.4)
  EXPECT_EQ(default_step_budget(4), 8);   // ceil(7.85)
}

}  // namespace
}  // namespace qwalk
