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

#include <optional>

#include "cellgame/evaluator.h"
#include "cellgame/game.h"

namespace cellgame {
namespace {

double ReferenceUtility(const Scenario& scenario, const StrategyProfile& profile,
                        UtilityKind kind) {
  return UtilityOf(ReferenceUserCapacities(scenario, profile), kind);
}

}  // namespace

std::optional<Deviation> FindImprovingDeviation(const Scenario& scenario,
                                                const StrategyProfile& profile,
                                                const GameConfig& config) {
  const double current = ReferenceUtility(scenario, profile, config.utility);
  std::vector<PlayerId> players;
  if (config.game == GameKind::kUser) {
    for (int i = 0; i < scenario.num_users(); ++i) players.push_back({i});
  } else {
    players = ChannelGamePlayers(scenario);
  }
  for (const PlayerId& player : players) {
    if (player.node >= 0) {
      // A user already served elsewhere pins this player to level 0.
      const std::vector<int> serving = ServingNodes(scenario, profile, player.user);
      if (!serving.empty() && serving.front() != player.node) continue;
    }
    for (const Strategy& strategy :
         EnumerateStrategies(player, profile, scenario, config.game)) {
      StrategyProfile deviated = profile;
      ApplyStrategy(scenario, player, strategy, deviated);
      const double u = ReferenceUtility(scenario, deviated, config.utility);
      if (StrictlyImproves(u, current)) {
        return Deviation{player, strategy, current, u};
      }
    }
  }
  return std::nullopt;
}

}  // namespace cellgame
