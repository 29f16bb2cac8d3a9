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

#include "cellgame/game.h"

#include <cmath>

#include <gtest/gtest.h>

#include "cellgame/errors.h"
#include "cellgame/metrics.h"
#include "test_util.h"

namespace cellgame {
namespace {

using testing::MakeScenario;
using testing::SetLevel;

GameConfig Config(GameKind game, UtilityKind utility = UtilityKind::kLog) {
  GameConfig config;
  config.game = game;
  config.utility = utility;
  return config;
}

// Scenario-1 style instance small enough for the U-Game.
Scenario SmallUGameScenario(int users, std::uint64_t seed) {
  ScenarioSpec spec = Scenario1Spec(users);
  spec.num_channels = 4;
  spec.min_channels_per_node = 2;
  spec.max_channels_per_node = 4;
  return SampleScenario(spec, seed);
}

double ReferenceNu(const Scenario& s, const StrategyProfile& p) {
  return NetworkUtility(ReferenceUserCapacities(s, p));
}

TEST(EvaluateUtilityTest, Examples) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{100, 0}}, 1);
  StrategyProfile p(s);
  EXPECT_EQ(EvaluateUtility(s, p, UtilityKind::kLog), 0);
  SetLevel(s, p, 0, 0, 0, 4);
  EXPECT_NEAR(EvaluateUtility(s, p, UtilityKind::kLog), std::log(7), 1e-15);
  EXPECT_EQ(EvaluateUtility(s, p, UtilityKind::kCapacity), 6);
}

TEST(EvaluateUtilityTest, MaskZeroesSlotsAndInfeasibleThrows) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}, {{200, 0}, {1}}},
                                  {{100, 0}}, 2);
  StrategyProfile p(s);
  SetLevel(s, p, 0, 0, 0, 1);
  SetLevel(s, p, 0, 1, 1, 1);
  EXPECT_THROW(EvaluateUtility(s, p, UtilityKind::kLog), InvalidArgument);
  const std::vector<int> mask = StepOneMask(s, 0, 0);
  EXPECT_EQ(mask, std::vector<int>{s.layout().SlotOf(0, 1, 1)});
  EXPECT_NEAR(EvaluateUtility(s, p, UtilityKind::kLog, mask), std::log(7), 1e-15);
}

TEST(EnumerateStrategiesTest, ChannelGame) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{10, 0}, {20, 0}}, 1);
  StrategyProfile p(s);
  const PlayerId player{0, 0, 0};
  const std::vector<Strategy> free = EnumerateStrategies(player, p, s, GameKind::kChannel);
  ASSERT_EQ(free.size(), 5u);
  for (int q = 0; q <= 4; ++q) EXPECT_EQ(free[q].levels, std::vector<std::uint8_t>{static_cast<std::uint8_t>(q)});

  SetLevel(s, p, 1, 0, 0, 2);
  const std::vector<Strategy> held = EnumerateStrategies(player, p, s, GameKind::kChannel);
  ASSERT_EQ(held.size(), 1u);
  EXPECT_EQ(held[0].levels, std::vector<std::uint8_t>{0});
}

TEST(EnumerateStrategiesTest, UserGameSingleChannel) {
  RadioConfig radio;
  radio.power_levels_q = 2;
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{10, 0}}, 1,
                                  AssociationPolicy::kAllInRange, radio);
  const std::vector<Strategy> list =
      EnumerateStrategies(PlayerId{0}, StrategyProfile(s), s, GameKind::kUser);
  // The all-zero strategy appears once, as "unserved".
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[0].TotalLevel(), 0);
  EXPECT_EQ(list[1], (Strategy{0, {1}}));
  EXPECT_EQ(list[2], (Strategy{0, {2}}));
}

TEST(EnumerateStrategiesTest, UserGameOrderAndPinnedChannels) {
  RadioConfig radio;
  radio.power_levels_q = 2;
  const Scenario s = MakeScenario({{{0, 0}, {0, 1}}, {{50, 0}, {0}}},
                                  {{10, 0}, {20, 0}}, 2,
                                  AssociationPolicy::kAllInRange, radio);
  StrategyProfile p(s);
  std::vector<Strategy> list = EnumerateStrategies(PlayerId{0}, p, s, GameKind::kUser);
  // 1 + (3^2 - 1) + (3 - 1).
  ASSERT_EQ(list.size(), 11u);
  for (std::size_t k = 1; k < list.size(); ++k) {
    EXPECT_LE(list[k - 1].TotalLevel(), list[k].TotalLevel());
  }
  EXPECT_EQ(list[1], (Strategy{0, {0, 1}}));
  EXPECT_EQ(list[2], (Strategy{0, {1, 0}}));
  EXPECT_EQ(list[3], (Strategy{1, {1}}));

  SetLevel(s, p, 1, 0, 1, 1);  // user 1 holds channel 1 at node 0
  list = EnumerateStrategies(PlayerId{0}, p, s, GameKind::kUser);
  ASSERT_EQ(list.size(), 5u);
  for (const Strategy& strategy : list) {
    if (strategy.node == 0) EXPECT_EQ(strategy.levels[1], 0);
  }
}

TEST(BetterResponseStepTest, LoneUserAdoptsLowestImprovingLevel) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{100, 0}}, 1);
  StrategyProfile p(s);
  for (GameKind game : {GameKind::kChannel, GameKind::kUser}) {
    p = StrategyProfile(s);
    const PlayerId player = game == GameKind::kChannel ? PlayerId{0, 0, 0} : PlayerId{0};
    StepResult step = BetterResponseStep(s, player, p, Config(game));
    EXPECT_TRUE(step.changed);
    EXPECT_EQ(p.level(0), 1);
    EXPECT_NEAR(step.utility_after, std::log(7), 1e-15);
    step = BetterResponseStep(s, player, p, Config(game));
    EXPECT_FALSE(step.changed);
    EXPECT_EQ(p.level(0), 1);
  }
}

TEST(BetterResponseStepTest, UnreachableUserStaysOff) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{2000, 0}}, 1,
                                  AssociationPolicy::kNearest);
  StrategyProfile p(s);
  EXPECT_FALSE(BetterResponseStep(s, PlayerId{0, 0, 0}, p, Config(GameKind::kChannel)).changed);
  EXPECT_FALSE(BetterResponseStep(s, PlayerId{0}, p, Config(GameKind::kUser)).changed);
  EXPECT_EQ(p.TotalLevel(), 0);
}

TEST(BetterResponseStepTest, ChannelGameUsesStepOneMask) {
  // The user is served by node 0; its node-1 player sees node 0 switched off.
  const Scenario s = MakeScenario({{{0, 0}, {0}}, {{200, 0}, {1}}},
                                  {{100, 0}}, 2);
  StrategyProfile p(s);
  SetLevel(s, p, 0, 0, 0, 1);
  const StepResult step =
      BetterResponseStep(s, PlayerId{0, 1, 1}, p, Config(GameKind::kChannel));
  EXPECT_TRUE(step.masked);
  EXPECT_TRUE(step.changed);
  EXPECT_EQ(step.utility_before, 0);
  EXPECT_NEAR(step.utility_after, std::log(7), 1e-15);
}

class ArbitrationTest : public ::testing::Test {
 protected:
  // Node 0 offers one channel, node 1 two; both 100 m from the user.
  Scenario s_ = MakeScenario({{{0, 0}, {0}}, {{200, 0}, {1, 2}}}, {{100, 0}}, 3);
};

TEST_F(ArbitrationTest, BetterCandidateAdopted) {
  StrategyProfile p(s_);
  SetLevel(s_, p, 0, 0, 0, 1);
  SetLevel(s_, p, 0, 1, 1, 1);
  SetLevel(s_, p, 0, 1, 2, 1);
  const ArbitrationResult r = ArbitrateNodeSwitch(s_, 0, 1, p, UtilityKind::kLog);
  EXPECT_TRUE(r.compared);
  EXPECT_TRUE(r.candidate_adopted);
  EXPECT_NEAR(r.candidate_utility, std::log(13), 1e-15);
  EXPECT_NEAR(r.incumbent_utility, std::log(7), 1e-15);
  EXPECT_EQ(ServingNodes(s_, p, 0), std::vector<int>{1});
  EXPECT_EQ(p.TotalLevel(), 2);
}

TEST_F(ArbitrationTest, TieKeepsIncumbent) {
  StrategyProfile p(s_);
  SetLevel(s_, p, 0, 0, 0, 1);
  SetLevel(s_, p, 0, 1, 1, 2);
  const ArbitrationResult r = ArbitrateNodeSwitch(s_, 0, 1, p, UtilityKind::kLog);
  EXPECT_TRUE(r.compared);
  EXPECT_FALSE(r.candidate_adopted);
  EXPECT_EQ(ServingNodes(s_, p, 0), std::vector<int>{0});
  EXPECT_EQ(p.TotalLevel(), 1);
}

TEST_F(ArbitrationTest, UnservedUserKeepsCandidate) {
  StrategyProfile p(s_);
  SetLevel(s_, p, 0, 1, 1, 1);
  const ArbitrationResult r = ArbitrateNodeSwitch(s_, 0, 1, p, UtilityKind::kLog);
  EXPECT_FALSE(r.compared);
  EXPECT_TRUE(r.candidate_adopted);
  EXPECT_EQ(ServingNodes(s_, p, 0), std::vector<int>{1});
}

TEST(PlayTest, BackhaulCapsLoneUser) {
  const Scenario s = MakeScenario({{{0, 0}, {0, 1}, 10}}, {{100, 0}}, 2);
  for (GameKind game : {GameKind::kChannel, GameKind::kUser}) {
    const GameOutcome out = Play(s, Config(game));
    EXPECT_TRUE(out.converged);
    ASSERT_EQ(out.user_capacity.size(), 1u);
    EXPECT_DOUBLE_EQ(out.user_capacity[0], 10);
    EXPECT_NEAR(out.metrics.nu, std::log(11), 1e-15);
    // The U-Game reaches (1, 1) one channel at a time: (1, 0) comes first in
    // ascending-power order.
    const int rounds = game == GameKind::kChannel ? 2 : 3;
    EXPECT_EQ(out.rounds, rounds);
    EXPECT_EQ(out.metrics.rounds, rounds);
  }
}

TEST(PlayTest, EmptyUserSet) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {}, 1);
  for (GameKind game : {GameKind::kChannel, GameKind::kUser}) {
    const GameOutcome out = Play(s, Config(game));
    EXPECT_TRUE(out.converged);
    EXPECT_EQ(out.rounds, 1);
    EXPECT_EQ(out.metrics.nu, 0);
  }
}

TEST(PlayTest, RejectsZeroRounds) {
  const Scenario s = MakeScenario({{{0, 0}, {0}}}, {{1, 1}}, 1);
  GameConfig config;
  config.max_rounds = 0;
  EXPECT_THROW(Play(s, config), InvalidArgument);
}

TEST(PlayTest, RoundLimitIsFlagged) {
  const Scenario s = SampleScenario(Scenario2Spec(4), 3);
  GameConfig config;
  config.max_rounds = 1;
  const GameOutcome out = Play(s, config);
  EXPECT_FALSE(out.converged);
  EXPECT_FALSE(out.metrics.converged);
  EXPECT_EQ(out.rounds, 1);
}

TEST(PlayTest, ExtraRoundChangesNothing) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (GameKind game : {GameKind::kChannel, GameKind::kUser}) {
      const Scenario s = game == GameKind::kUser ? SmallUGameScenario(5, seed)
                                                 : SampleScenario(Scenario2Spec(5), seed);
      const GameConfig config = Config(game);
      const GameOutcome out = Play(s, config);
      ASSERT_TRUE(out.converged);
      StrategyProfile p = out.profile;
      if (game == GameKind::kUser) {
        for (int i = 0; i < s.num_users(); ++i) {
          EXPECT_FALSE(BetterResponseStep(s, PlayerId{i}, p, config).changed);
        }
      } else {
        for (const PlayerId& player : ChannelGamePlayers(s)) {
          // Non-serving nodes are probed by step 1 and undone by arbitration.
          const std::vector<int> serving = ServingNodes(s, p, player.user);
          if (!serving.empty() && serving[0] != player.node) continue;
          EXPECT_FALSE(BetterResponseStep(s, player, p, config).changed);
        }
      }
      EXPECT_EQ(p, out.profile);
    }
  }
}

TEST(PlayTest, OutcomesAreFeasibleEquilibria) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (UtilityKind utility : {UtilityKind::kLog, UtilityKind::kCapacity}) {
      for (GameKind game : {GameKind::kChannel, GameKind::kUser}) {
        const Scenario s = game == GameKind::kUser
                               ? SmallUGameScenario(4, seed)
                               : SampleScenario(Scenario2Spec(4), seed);
        const GameConfig config = Config(game, utility);
        const GameOutcome out = Play(s, config);
        ASSERT_TRUE(out.converged);
        EXPECT_TRUE(IsSingleServing(s, out.profile));
        EXPECT_TRUE(IsChannelExclusive(s, out.profile));
        NetworkEvaluator evaluator(s);
        evaluator.Evaluate(out.profile.levels());
        EXPECT_TRUE(evaluator.AllPoweredMeetAlpha());
        EXPECT_FALSE(FindImprovingDeviation(s, out.profile, config).has_value())
            << "seed " << seed;
      }
    }
  }
}

TEST(FindImprovingDeviationTest, FindsDeviationsAwayFromEquilibrium) {
  const Scenario s = MakeScenario({{{0, 0}, {0, 1}, 30}}, {{100, 0}}, 2);
  for (GameKind game : {GameKind::kChannel, GameKind::kUser}) {
    StrategyProfile p(s);
    std::optional<Deviation> d = FindImprovingDeviation(s, p, Config(game));
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(d->current_utility, 0);
    EXPECT_NEAR(d->deviation_utility, std::log(7), 1e-12);
    // One channel lit, the other free: lighting it too improves.
    SetLevel(s, p, 0, 0, 0, 1);
    d = FindImprovingDeviation(s, p, Config(game));
    ASSERT_TRUE(d.has_value());
    EXPECT_NEAR(d->deviation_utility, std::log(13), 1e-12);
    SetLevel(s, p, 0, 0, 1, 1);
    EXPECT_FALSE(FindImprovingDeviation(s, p, Config(game)).has_value());
  }
}

TEST(PlayTest, UserGameMovesTrackNetworkUtility) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Scenario s = SmallUGameScenario(6, seed);
    double nu = 0;
    int moves = 0;
    Play(s, Config(GameKind::kUser), [&](const MoveEvent& e) {
      const double after = ReferenceNu(s, *e.profile);
      if (e.kind == MoveEvent::Kind::kMove) {
        EXPECT_NEAR(e.utility_after - e.utility_before, after - nu, 1e-9);
        EXPECT_GT(after, nu);
        ++moves;
      } else {
        EXPECT_GE(after, nu - 1e-12);
      }
      nu = after;
    });
    EXPECT_GT(moves, 0);
  }
}

TEST(PlayTest, ChannelGameNuNeverDecreases) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scenario s = SampleScenario(Scenario2Spec(5), seed);
    double nu = 0;
    Play(s, Config(GameKind::kChannel), [&](const MoveEvent& e) {
      if (e.kind == MoveEvent::Kind::kMove && e.masked) return;
      if (!IsSingleServing(s, *e.profile)) return;  // mid step 1
      const double after = ReferenceNu(s, *e.profile);
      if (e.kind == MoveEvent::Kind::kMove) {
        // Vacuous mask: the step-1 utility is the network utility.
        EXPECT_NEAR(e.utility_after - e.utility_before, after - nu, 1e-9);
      }
      EXPECT_GE(after, nu - 1e-12);
      nu = after;
    });
  }
}

TEST(PlayTest, ParallelScanMatchesSerial) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Scenario s = SmallUGameScenario(6, seed);
    GameConfig serial = Config(GameKind::kUser);
    GameConfig parallel = serial;
    parallel.scan = ScanMode::kParallel;
    const GameOutcome a = Play(s, serial);
    const GameOutcome b = Play(s, parallel);
    EXPECT_EQ(a.profile, b.profile);
    EXPECT_EQ(a.rounds, b.rounds);
    EXPECT_EQ(a.metrics.nu, b.metrics.nu);
  }
}

TEST(PlayTest, Deterministic) {
  const Scenario s = SampleScenario(Scenario1Spec(10), 4);
  const GameOutcome a = Play(s, Config(GameKind::kChannel));
  const GameOutcome b = Play(s, Config(GameKind::kChannel));
  EXPECT_EQ(a.profile, b.profile);
  EXPECT_EQ(a.metrics.nu, b.metrics.nu);
}

TEST(SwitchOffDeadSlotsTest, ZeroesOnlySubAlphaSlots) {
  const Scenario s = MakeScenario({{{0, 0}, {0, 1}}, {{200, 0}, {1}}},
                                  {{100, 0}, {190, 0}}, 2);
  StrategyProfile p(s);
  SetLevel(s, p, 0, 0, 0, 4);
  SetLevel(s, p, 0, 0, 1, 1);
  SetLevel(s, p, 1, 1, 1, 4);
  EXPECT_TRUE(SwitchOffDeadSlots(s, Config(GameKind::kChannel), p));
  EXPECT_EQ(LevelAt(s, p, 0, 0, 0), 4);
  EXPECT_EQ(LevelAt(s, p, 0, 0, 1), 0);
  EXPECT_EQ(LevelAt(s, p, 1, 1, 1), 4);
  EXPECT_FALSE(SwitchOffDeadSlots(s, Config(GameKind::kChannel), p));
}

TEST(ChannelGamePlayersTest, CoversEverySlot) {
  const Scenario s = SampleScenario(Scenario1Spec(5), 1);
  const std::vector<PlayerId> players = ChannelGamePlayers(s);
  ASSERT_EQ(static_cast<int>(players.size()), s.layout().num_slots());
  for (std::size_t k = 0; k < players.size(); ++k) {
    EXPECT_EQ(s.layout().SlotOf(players[k].user, players[k].node, players[k].channel),
              static_cast<int>(k));
  }
}

}  // namespace
}  // namespace cellgame
