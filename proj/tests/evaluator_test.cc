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

#include "cellgame/evaluator.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cellgame/metrics.h"
#include "test_util.h"

namespace cellgame {
namespace {

// Random profile that is single-serving and channel-exclusive.
StrategyProfile RandomFeasibleProfile(const Scenario& s, std::mt19937_64& rng) {
  StrategyProfile p(s);
  const SlotLayout& layout = s.layout();
  const int q = s.radio().power_levels_q;
  for (int i = 0; i < s.num_users(); ++i) {
    const int groups = layout.user_group_end(i) - layout.user_group_begin(i);
    if (groups == 0 || rng() % 4 == 0) continue;
    const int g = layout.user_group_begin(i) + rng() % groups;
    for (int k = layout.group_begin(g); k < layout.group_end(g); ++k) {
      const Slot& slot = layout.slot(k);
      if (NodeChannelLevel(s, p, slot.node, slot.channel) == 0 && rng() % 2) {
        p.set_level(k, 1 + rng() % q);
      }
    }
  }
  return p;
}

TEST(NetworkEvaluatorTest, MatchesReferencePath) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const Scenario s = SampleScenario(
        trial % 2 ? Scenario1Spec(1 + trial % 13) : Scenario2Spec(1 + trial % 6),
        trial);
    NetworkEvaluator evaluator(s);
    for (int k = 0; k < 10; ++k) {
      const StrategyProfile p = RandomFeasibleProfile(s, rng);
      const std::vector<double> reference = ReferenceUserCapacities(s, p);
      evaluator.Evaluate(p.levels());
      ASSERT_EQ(evaluator.user_capacity().size(), reference.size());
      for (std::size_t i = 0; i < reference.size(); ++i) {
        EXPECT_NEAR(evaluator.user_capacity()[i], reference[i], 1e-12);
      }
      EXPECT_NEAR(evaluator.Utility(UtilityKind::kLog), NetworkUtility(reference),
                  1e-12);
      EXPECT_NEAR(evaluator.Utility(UtilityKind::kCapacity),
                  TotalCapacity(reference), 1e-12);
      for (int slot = 0; slot < p.size(); ++slot) {
        const Slot& sl = s.layout().slot(slot);
        EXPECT_NEAR(evaluator.slot_sinr()[slot],
                    Sinr(p, s, sl.user, sl.node, sl.channel),
                    1e-12 * std::max(1.0, evaluator.slot_sinr()[slot]));
      }
    }
  }
}

TEST(NetworkEvaluatorTest, LoneUserExamples) {
  const Scenario s = testing::MakeScenario({{{0, 0}, {0, 1}, 10}}, {{100, 0}}, 2);
  NetworkEvaluator evaluator(s);
  StrategyProfile p(s);
  EXPECT_EQ(evaluator.Evaluate(p.levels(), UtilityKind::kLog), 0);
  testing::SetLevel(s, p, 0, 0, 0, 4);
  EXPECT_NEAR(evaluator.Evaluate(p.levels(), UtilityKind::kLog), std::log(7), 1e-15);
  EXPECT_EQ(evaluator.Evaluate(p.levels(), UtilityKind::kCapacity), 6);
  testing::SetLevel(s, p, 0, 0, 1, 1);
  evaluator.Evaluate(p.levels());
  EXPECT_EQ(evaluator.group_access()[0], 12);
  EXPECT_EQ(evaluator.group_actual()[0], 10);
  EXPECT_NEAR(evaluator.Utility(UtilityKind::kLog), std::log(11), 1e-15);
}

TEST(NetworkEvaluatorTest, AlphaCheck) {
  const Scenario s = testing::MakeScenario({{{0, 0}, {0}}, {{200, 0}, {0}}},
                                           {{100, 0}, {250, 0}}, 1);
  NetworkEvaluator evaluator(s);
  StrategyProfile p(s);
  testing::SetLevel(s, p, 0, 0, 0, 4);
  evaluator.Evaluate(p.levels());
  EXPECT_TRUE(evaluator.AllPoweredMeetAlpha());
  testing::SetLevel(s, p, 1, 1, 0, 4);
  evaluator.Evaluate(p.levels());
  EXPECT_FALSE(evaluator.AllPoweredMeetAlpha());
}

}  // namespace
}  // namespace cellgame
