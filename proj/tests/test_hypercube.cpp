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
#include <random>

#include "qwalk/collapsed_walk.hpp"
#include "qwalk/hypercube.hpp"

namespace qwalk {
namespace {

FullState random_state(int m, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n;
  FullState s(m);
  for (auto& a : s.amplitudes) a = {n(rng), n(rng)};
  const double norm = s.norm();
  for (auto& a : s.amplitudes) a /= norm;
  return s;
}

double max_diff(const FullState& a, const FullState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
  }
  return worst;
}

TEST(Hypercube, ShiftIsInvolution) {
  const FullState s = random_state(4, 1);
  EXPECT_LT(max_diff(apply_shift(apply_shift(s)), s), 1e-15);
  EXPECT_NEAR(apply_shift(s).norm(), 1.0, 1e-14);
}

TEST(Hypercube, ShiftFlipsDirectionBit) {
  FullState s(4);
  s.amplitude(1, 0) = 1.0;
  const FullState out = apply_shift(s);
  EXPECT_EQ(out.amplitude(1, 0b0001), cplx(1.0));
  FullState t(4);
  t.amplitude(3, 0b0101) = 1.0;
  EXPECT_EQ(apply_shift(t).amplitude(3, 0b0001), cplx(1.0));
}

TEST(Hypercube, ErrorFreeCoinSquaresToIdentity) {
  const FullState s = random_state(5, 2);
  const WalkConfig cfg(5, 0.0);
  EXPECT_LT(max_diff(apply_coin(apply_coin(s, cfg), cfg), s), 1e-14);
}

TEST(Hypercube, ErroredCoinBlockFormula) {
  const int m = 4;
  const WalkConfig cfg(m, 0.3);
  const FullState s = random_state(m, 3);
  const FullState out = apply_coin(s, cfg);
  for (std::uint64_t x = 0; x < 16; ++x) {
    cplx mean = 0.0;
    for (int d = 1; d <= m; ++d) mean += s.amplitude(d, x);
    mean /= static_cast<double>(m);
    for (int d = 1; d <= m; ++d) {
      const cplx expect = (1.0 + std::polar(1.0, 0.3)) * mean - s.amplitude(d, x);
      EXPECT_LT(std::abs(out.amplitude(d, x) - expect), 1e-15);
    }
  }
  EXPECT_NEAR(out.norm(), 1.0, 1e-12);
}

TEST(Hypercube, MarkedCoinIsMinusIdentity) {
  const FullState s = random_state(4, 4);
  for (double delta : {0.0, 0.3, -1.2}) {
    const FullState out = apply_coin(s, WalkConfig(4, delta), MarkedSpec{0b0110});
    for (int d = 1; d <= 4; ++d) EXPECT_EQ(out.amplitude(d, 0b0110), -s.amplitude(d, 0b0110));
  }
}

TEST(Hypercube, InitialStateFull) {
  const FullState s = initial_state_full(WalkConfig(4, 0.0));
  EXPECT_NEAR(std::abs(s.amplitude(2, 0b0011)), 1.0 / std::sqrt(32.0), 1e-15);
  EXPECT_EQ(s.amplitude(1, 0b0111), cplx(0.0));
  EXPECT_EQ(s.amplitude(4, 0b0001), cplx(0.0));
  EXPECT_NEAR(s.norm(), 1.0, 1e-14);
}

TEST(Hypercube, CollapseOfInitialState) {
  for (int m : {4, 8}) {
    const CollapsedState c = collapse_state(initial_state_full(WalkConfig(m, 0.0)));
    EXPECT_LT((c.amplitudes - initial_state(WalkConfig(m, 0.0)).amplitudes).norm(), 1e-12);
  }
  // odd m goes through the parity-projected closed form
  const CollapsedState c7 = collapse_state(initial_state_full(WalkConfig(7, 0.0)));
  EXPECT_LT((c7.amplitudes - parity_projected_state(7).amplitudes).norm(), 1e-12);
}

TEST(Hypercube, CollapseShellZero) {
  FullState s(5);
  for (int d = 1; d <= 5; ++d) s.amplitude(d, 0) = 1.0 / std::sqrt(5.0);
  const CollapsedState c = collapse_state(s);
  EXPECT_NEAR(std::abs(c.amplitude(Coin::R, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(c.norm(), 1.0, 1e-15);
}

TEST(Hypercube, CollapseRejectsAsymmetric) {
  FullState s(4);
  s.amplitude(1, 0b0001) = 1.0;
  EXPECT_THROW(collapse_state(s), InvalidArgument);
}

TEST(Hypercube, ExpandCollapseRoundTrip) {
  const CollapsedState c = parity_projected_state(6);
  const FullState f = expand_state(c);
  EXPECT_NEAR(f.norm(), 1.0, 1e-14);
  EXPECT_LT((collapse_state(f).amplitudes - c.amplitudes).norm(), 1e-14);
}

TEST(Hypercube, FullAndCollapsedEvolutionAgree) {
  const int m = 6;
  const WalkConfig cfg(m, 0.2);
  const StepOperators ops = build_step_operators(cfg);
  FullState full = initial_state_full(cfg);
  Eigen::VectorXcd line = initial_state(cfg).amplitudes;
  for (int t = 1; t <= 50; ++t) {
    full = apply_iteration_full(std::move(full), cfg, MarkedSpec{0});
    apply_iteration(ops, line);
    ASSERT_NEAR(full.norm(), 1.0, 1e-12);
    // never rejected: the evolution keeps the bit-swap symmetry
    const CollapsedState c = collapse_state(full);
    ASSERT_LT((c.amplitudes - line).norm(), 1e-10) << t;
  }
}

TEST(Hypercube, TrajectoriesAgreeIncludingGap) {
  for (int m : {4, 5, 6}) {
    const WalkConfig cfg(m, 0.1);
    const Trajectory a = evolve_full(cfg, MarkedSpec{0}, 50);
    const Trajectory b = evolve(cfg, 50);
    for (int t = 0; t <= 50; ++t) {
      ASSERT_NEAR(a.at(t).p_success, b.at(t).p_success, 1e-10);
      ASSERT_NEAR(a.at(t).p_gap, b.at(t).p_gap, 1e-10);
    }
  }
}

TEST(Hypercube, MarkedVertexInvariance) {
  for (double delta : {0.0, 0.2}) {
    const WalkConfig cfg(8, delta);
    const Trajectory a = evolve_full(cfg, MarkedSpec{0}, 30);
    const Trajectory b = evolve_full(cfg, MarkedSpec{0b11000011}, 30);
    const Trajectory c = evolve_full(cfg, MarkedSpec{39}, 30);
    for (int t = 0; t <= 30; ++t) {
      EXPECT_NEAR(a.at(t).p_success, b.at(t).p_success, 1e-12);
      EXPECT_NEAR(a.at(t).p_success, c.at(t).p_success, 1e-12);
      EXPECT_NEAR(a.at(t).p_gap, b.at(t).p_gap, 1e-12);
    }
  }
}

TEST(Hypercube, OddWeightMarkedVertexRejected) {
  EXPECT_THROW(evolve_full(WalkConfig(8, 0.0), MarkedSpec{37}, 1), InvalidArgument);
  EXPECT_THROW(evolve_full(WalkConfig(4, 0.0), MarkedSpec{16}, 1), InvalidArgument);
  EXPECT_THROW(evolve_full(WalkConfig(17, 0.0), MarkedSpec{0}, 1), InvalidArgument);
}

TEST(Hypercube, PermutationConjugationAllPairs) {
  for (int m : {4, 6}) {
    for (double delta : {0.0, 0.2, 0.4, 0.5}) {
      for (int i = 1; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
          EXPECT_LT(permutation_conjugation_check(WalkConfig(m, delta), i, j), 1e-13)
              << m << " " << delta << " " << i << " " << j;
        }
      }
    }
  }
}

TEST(Hypercube, PermutationConjugationRejectsBadIndices) {
  EXPECT_THROW(permutation_conjugation_check(WalkConfig(4, 0.0), 2, 2), InvalidArgument);
  EXPECT_THROW(permutation_conjugation_check(WalkConfig(4, 0.0), 0, 2), InvalidArgument);
  EXPECT_THROW(permutation_conjugation_check(WalkConfig(4, 0.0), 1, 5), InvalidArgument);
}

TEST(Hypercube, BitSwapDetectsAsymmetry) {
  // a state that is not swap symmetric changes under P_12
  FullState s(4);
  s.amplitude(1, 0b0001) = 1.0;
  EXPECT_GT(max_diff(apply_bit_swap(s, 1, 2), s), 0.5);
  EXPECT_LT(max_diff(apply_bit_swap(apply_bit_swap(s, 1, 2), 1, 2), s), 1e-15);
}

}  // namespace
}  // namespace qwalk
