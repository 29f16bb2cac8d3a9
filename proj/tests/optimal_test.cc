// Copyright 2026 The cellgame Authors
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

#include "cellgame/optimal.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cellgame/errors.h"
#include "cellgame/game.h"
#include "cellgame/metrics.h"
#include "test_util.h"

namespace cellgame {
namespace {

using testing::MakeScenario;
using testing::SetLevel;

Assignment FromLevels(const Scenario& s, const StrategyProfile& p) {
  return Assignment::FromProfile(s, p);
}

TEST(FeasibleTest, Examples) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}, {{30, 0}, {1}}},
                                  {{10, 0}, {20, 0}}, 2);
  EXPECT_TRUE(Feasible(Assignment::Empty(s), s));

  StrategyProfile p(s);
  SetLevel(s, p, 0, 0, 0, 1);
  SetLevel(s, p, 0, 1, 1, 1);
  EXPECT_FALSE(Feasible(FromLevels(s, p), s));  // two serving nodes

  p = StrategyProfile(s);
  SetLevel(s, p, 0, 0, 0, 1);
  SetLevel(s, p, 1, 0, 0, 1);
  EXPECT_FALSE(Feasible(FromLevels(s, p), s));  // shared (node, channel)

  p = StrategyProfile(s);
  SetLevel(s, p, 0, 0, 0, 3);
  SetLevel(s, p, 1, 1, 1, 2);
  EXPECT_TRUE(Feasible(FromLevels(s, p), s));
}

TEST(FeasibleTest, VariableCoupling) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{10, 0}}, 1);
  Assignment a = Assignment::Empty(s);
  a.channel[0] = 1;  // y without x
  a.level[0] = 1;
  EXPECT_FALSE(Feasible(a, s));
  a.serve[0] = 1;
  EXPECT_TRUE(Feasible(a, s));
  a.level[0] = 0;  // y without power
  EXPECT_FALSE(Feasible(a, s));
  a.level[0] = 5;  // above Q
  EXPECT_FALSE(Feasible(a, s));
  a.channel[0] = 0;
  a.level[0] = 1;  // power without y
  EXPECT_FALSE(Feasible(a, s));
  a.serve.push_back(0);  // wrong shape
  EXPECT_FALSE(Feasible(a, s));
}

TEST(FeasibleTest, JointInterferenceBreaksAlpha) {
  // Each link alone is fine; together both sit at SINR 0.99968 < 1.
  const Scenario s = MakeScenario({{{0, 0}, {0}}, {{200, 0}, {0}}},
                                  {{100, 0}, {100, 0.001}}, 1);
  StrategyProfile alone(s);
  SetLevel(s, alone, 0, 0, 0, 4);
  EXPECT_TRUE(Feasible(FromLevels(s, alone), s));
  StrategyProfile both = alone;
  SetLevel(s, both, 1, 1, 0, 4);
  EXPECT_FALSE(Feasible(FromLevels(s, both), s));
}

TEST(AssignmentTest, ProfileRoundTrip) {
  const Scenario s = SampleScenario(Scenario2Spec(3), 2);
  StrategyProfile p(s);
  SetLevel(s, p, 0, 1, 0, 2);
  SetLevel(s, p, 2, 3, 2, 1);
  const Assignment a = Assignment::FromProfile(s, p);
  EXPECT_EQ(a.ToProfile(s), p);
  EXPECT_EQ(a.serve[s.layout().GroupOf(0, 1)], 1);
  EXPECT_EQ(a.serve[s.layout().GroupOf(0, 0)], 0);
}

TEST(SolveExhaustiveTest, LoneLinkPrefersLowPower) {
  RadioConfig radio;
  radio.power_levels_q = 2;
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{100, 0}}, 1,
                                  AssociationPolicy::kAllInRange, radio);
  const OptResult r = SolveExhaustive(s);
  EXPECT_NEAR(r.nu, std::log(7), 1e-15);
  EXPECT_EQ(r.assignment.level, std::vector<std::uint8_t>{1});
  EXPECT_EQ(r.explored, 3u);
  EXPECT_EQ(SolveBranchAndBound(s).assignment, r.assignment);
}

TEST(SolveExhaustiveTest, NoUsers) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {}, 1);
  EXPECT_EQ(SolveExhaustive(s).nu, 0);
  EXPECT_EQ(SolveBranchAndBound(s).nu, 0);
}

TEST(SolveExhaustiveTest, ResultIsFeasibleAndAttained) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scenario s = SampleScenario(Scenario2Spec(1 + seed % 3), seed);
    const OptResult r = SolveExhaustive(s);
    EXPECT_TRUE(Feasible(r.assignment, s));
    EXPECT_NEAR(NetworkUtility(ReferenceUserCapacities(s, r.assignment.ToProfile(s))),
                r.nu, 1e-12);
  }
}

TEST(SolveExhaustiveTest, ParallelIsBitIdentical) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Scenario s = SampleScenario(Scenario2Spec(1 + seed % 3), 40 + seed);
    const OptResult serial = SolveExhaustive(s);
    const OptResult parallel = SolveExhaustiveParallel(s);
    EXPECT_EQ(serial.nu, parallel.nu);
    EXPECT_EQ(serial.assignment, parallel.assignment);
    EXPECT_EQ(serial.explored, parallel.explored);
  }
}

TEST(SolveBranchAndBoundTest, AgreesWithExhaustive) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scenario s = SampleScenario(Scenario2Spec(1 + seed % 3), 100 + seed);
    const OptResult exhaustive = SolveExhaustive(s);
    const OptResult bb = SolveBranchAndBound(s);
    EXPECT_NEAR(bb.nu, exhaustive.nu, 1e-9) << "seed " << seed;
    EXPECT_TRUE(Feasible(bb.assignment, s));
    EXPECT_NEAR(NetworkUtility(ReferenceUserCapacities(s, bb.assignment.ToProfile(s))),
                bb.nu, 1e-12);
  }
}

TEST(SolveBranchAndBoundTest, PrunesWithDominantUser) {
  // One user close to a node, the others far away on the same channels.
  const Scenario s = MakeScenario(
      {{{0, 0}, {0, 1, 2}, 30}, {{200, 0}, {0, 1, 2}, 30}},
      {{5, 0}, {100, 80}, {120, 90}}, 3);
  const OptResult exhaustive = SolveExhaustive(s);
  const OptResult bb = SolveBranchAndBound(s);
  EXPECT_NEAR(bb.nu, exhaustive.nu, 1e-9);
  EXPECT_LT(bb.explored, exhaustive.explored);
  EXPECT_GT(bb.pruned_by_bound, 0u);
}

TEST(SolveBranchAndBoundTest, ChannelConflictNeverReachesALeaf) {
  // The exhaustive search enumerates only channel-exclusive leaves, so the
  // leaf count equals the exclusive assignments; the tree search never
  // creates a conflicting child in the first place.
  RadioConfig radio;
  radio.power_levels_q = 1;
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{10, 0}, {20, 0}}, 1,
                                  AssociationPolicy::kAllInRange, radio);
  EXPECT_EQ(SolveExhaustive(s).explored, 3u);  // none, user 0, user 1
}

TEST(UpperBoundTest, DominatesBestCompletion) {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Scenario s = SampleScenario(Scenario2Spec(3), 300 + seed);
    // Random channel-exclusive prefixes on the first k users.
    for (int trial = 0; trial < 6; ++trial) {
      const int k = rng() % 3;
      StrategyProfile prefix(s);
      for (int i = 0; i < k; ++i) {
        const std::vector<int>& nodes = s.candidates(i);
        if (nodes.empty() || rng() % 3 == 0) continue;
        const int j = nodes[rng() % nodes.size()];
        for (int r : s.nodes()[j].channels) {
          if (NodeChannelLevel(s, prefix, j, r) == 0 && rng() % 2) {
            SetLevel(s, prefix, i, j, r, 1 + rng() % 2);
          }
        }
      }
      const double bound = BranchAndBoundUpperBound(s, prefix, k);
      const OptResult best = SolveExhaustiveFrom(s, prefix, k);
      if (std::isinf(bound)) {
        EXPECT_FALSE(Feasible(Assignment::FromProfile(s, prefix), s));
      } else {
        EXPECT_GE(bound, best.nu - 1e-12) << "seed " << seed << " k " << k;
      }
    }
  }
}

TEST(SolverBudgetTest, ExceededBudgetsThrow) {
  const Scenario s = SampleScenario(Scenario2Spec(3), 1);
  SolverBudget budget;
  budget.max_assignments = 100;
  EXPECT_THROW(SolveExhaustive(s, budget), BudgetExceeded);
  EXPECT_THROW(SolveExhaustiveParallel(s, budget), BudgetExceeded);
  budget.max_nodes = 5;
  EXPECT_THROW(SolveBranchAndBound(s, budget), BudgetExceeded);
}

TEST(OptimalityGapTest, Examples) {
  OptimalityGap g = ComputeOptimalityGap(2.0, 2.0);
  EXPECT_EQ(g.gap, 0);
  EXPECT_TRUE(g.exact);
  g = ComputeOptimalityGap(1.8, 2.0);
  EXPECT_NEAR(g.gap, 0.1, 1e-15);
  EXPECT_FALSE(g.exact);
  g = ComputeOptimalityGap(0, 0);
  EXPECT_EQ(g.gap, 0);
  EXPECT_TRUE(g.exact);
  EXPECT_THROW(ComputeOptimalityGap(2.1, 2.0), InvalidArgument);
}

TEST(OptimalityGapTest, GamesNeverBeatTheOptimum) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Scenario s = SampleScenario(Scenario2Spec(1 + seed % 4), 500 + seed);
    const double opt = SolveBranchAndBound(s).nu;
    for (GameKind game : {GameKind::kChannel, GameKind::kUser}) {
      GameConfig config;
      config.game = game;
      const GameOutcome out = Play(s, config);
      EXPECT_TRUE(Feasible(Assignment::FromProfile(s, out.profile), s));
      EXPECT_LE(out.metrics.nu, opt + 1e-9);
      EXPECT_GE(ComputeOptimalityGap(out.metrics.nu, opt).gap, 0);
    }
  }
}

}  // namespace
}  // namespace cellgame
