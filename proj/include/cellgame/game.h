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

#ifndef CELLGAME_GAME_H_
#define CELLGAME_GAME_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cellgame/evaluator.h"
#include "cellgame/metrics.h"
#include "cellgame/radio.h"
#include "cellgame/scenario.h"

namespace cellgame {

// U-Game players are users (node == channel == -1). C-Game players are
// (user, node, channel) triples with node in M_user and channel in R_node.
struct PlayerId {
  int user = 0;
  int node = -1;
  int channel = -1;
  bool operator==(const PlayerId&) const = default;
};

// All C-Game players in play order: users ascending, then candidate nodes,
// then channels.
std::vector<PlayerId> ChannelGamePlayers(const Scenario& scenario);

enum class ScanMode { kSerial, kParallel };

struct GameConfig {
  GameKind game = GameKind::kChannel;
  UtilityKind utility = UtilityKind::kLog;
  int max_rounds = 1000;
  // How the U-Game candidate list is scanned. Both modes adopt the same
  // strategy; kParallel evaluates blocks of candidates with OpenMP.
  ScanMode scan = ScanMode::kSerial;
};

// U-Game: serving node (-1 = unserved) and one level per channel of R_node.
// C-Game: node is the player's node and `levels` holds the single level.
struct Strategy {
  int node = -1;
  std::vector<std::uint8_t> levels;
  int TotalLevel() const;
  bool operator==(const Strategy&) const = default;
};

// Candidate strategies ordered by ascending total power; equal totals keep
// node order, then lexicographic level order (channel 0 most significant).
// U-Game lists "unserved" once, first; channels held by another user at a
// node are pinned to 0. A C-Game player gets {0..Q}, or {0} when another user
// holds its (node, channel).
std::vector<Strategy> EnumerateStrategies(const PlayerId& player,
                                          const StrategyProfile& profile,
                                          const Scenario& scenario,
                                          GameKind game);

// Writes `strategy` for `player` into `profile`. For the U-Game every slot of
// the user is reset first.
void ApplyStrategy(const Scenario& scenario, const PlayerId& player,
                   const Strategy& strategy, StrategyProfile& profile);

// Strict improvement with a 1e-12 relative guard against rounding noise.
bool StrictlyImproves(double candidate, double current);

// Utility of `profile` with every slot in `masked_slots` treated as powered
// off. Throws InvalidArgument if the masked profile breaks single serving or
// channel exclusivity.
double EvaluateUtility(const Scenario& scenario, const StrategyProfile& profile,
                       UtilityKind kind, std::span<const int> masked_slots = {});

// Slots (user, node' != node, *) zeroed by the C-Game's step-1 utility.
std::vector<int> StepOneMask(const Scenario& scenario, int user, int node);

struct StepResult {
  bool changed = false;
  double utility_before = 0.0;
  double utility_after = 0.0;
  // True when the step-1 mask actually zeroed a powered slot.
  bool masked = false;
};

// One better-response turn: adopt the first strictly improving strategy in
// EnumerateStrategies order, or keep the current one.
StepResult BetterResponseStep(const Scenario& scenario, const PlayerId& player,
                              StrategyProfile& profile, const GameConfig& config);

struct ArbitrationResult {
  // False when the user had no other powered node, so nothing was compared.
  bool compared = false;
  bool candidate_adopted = true;
  double candidate_utility = 0.0;
  double incumbent_utility = 0.0;
};

// C-Game step 2 for group (user, node): compare the network with only the
// candidate group serving the user against the network with only the
// incumbent node(s) serving it; zero the loser. Ties keep the incumbent.
ArbitrationResult ArbitrateNodeSwitch(const Scenario& scenario, int user,
                                      int node, StrategyProfile& profile,
                                      UtilityKind utility);

// kSwitchOff: after a quiet round, every powered slot below alpha was set to
// level 0 (player is unset). Play then continues until a quiet round leaves
// no such slot.
struct MoveEvent {
  enum class Kind { kMove, kArbitration, kSwitchOff };
  Kind kind = Kind::kMove;
  PlayerId player;
  double utility_before = 0.0;
  double utility_after = 0.0;
  bool masked = false;
  const StrategyProfile* profile = nullptr;  // state after the event
};
using MoveObserver = std::function<void(const MoveEvent&)>;

struct GameOutcome {
  StrategyProfile profile;
  std::vector<double> user_capacity;
  int rounds = 0;
  bool converged = false;
  MetricRecord metrics;
};

// Sequential round-robin better-response play from the all-zero profile
// until a full round changes nothing and no powered slot sits below alpha
// (converged), or max_rounds is hit.
// `rounds` counts completed passes, including the final quiet one.
GameOutcome Play(const Scenario& scenario, const GameConfig& config,
                 const MoveObserver& observer = {});

// Zeroes every powered slot whose SINR is below alpha. Returns whether any
// slot changed.
bool SwitchOffDeadSlots(const Scenario& scenario, const GameConfig& config,
                        StrategyProfile& profile,
                        const MoveObserver& observer = {});

// Exhaustive unilateral-deviation check at `profile` using the reference
// evaluation path. Returns the first player with a strictly improving
// feasible deviation, if any.
struct Deviation {
  PlayerId player;
  Strategy strategy;
  double current_utility = 0.0;
  double deviation_utility = 0.0;
};
std::optional<Deviation> FindImprovingDeviation(const Scenario& scenario,
                                                const StrategyProfile& profile,
                                                const GameConfig& config);

}  // namespace cellgame

#endif  // CELLGAME_GAME_H_
