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

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>

#include <omp.h>

#include "cellgame/errors.h"

namespace cellgame {
namespace {

bool HeldByOther(const Scenario& scenario, const StrategyProfile& profile,
                 int user, int node, int channel) {
  for (int s : scenario.layout().SlotsOnNodeChannel(node, channel)) {
    if (scenario.layout().slot(s).user != user && profile.level(s) > 0) {
      return true;
    }
  }
  return false;
}

// Candidate scan for one U-Game turn. Returns the index of the first strategy
// whose utility strictly beats `current`, or -1.
int FirstImprovingSerial(const Scenario& scenario, int user,
                         const std::vector<Strategy>& strategies,
                         const StrategyProfile& base, UtilityKind kind,
                         double current, NetworkEvaluator& evaluator,
                         double* found_utility) {
  StrategyProfile work = base;
  const PlayerId player{user};
  for (std::size_t k = 0; k < strategies.size(); ++k) {
    ApplyStrategy(scenario, player, strategies[k], work);
    const double u = evaluator.Evaluate(work.levels(), kind);
    if (StrictlyImproves(u, current)) {
      *found_utility = u;
      return static_cast<int>(k);
    }
  }
  return -1;
}

// Same contract as FirstImprovingSerial. Candidates are evaluated in blocks;
// the lowest improving index of the first block that has one wins, so the
// adopted strategy matches the serial scan exactly.
int FirstImprovingParallel(const Scenario& scenario, int user,
                           const std::vector<Strategy>& strategies,
                           const StrategyProfile& base, UtilityKind kind,
                           double current, double* found_utility) {
  const int n = static_cast<int>(strategies.size());
  const int block = 64 * std::max(1, omp_get_max_threads());
  const PlayerId player{user};
  for (int start = 0; start < n; start += block) {
    const int stop = std::min(n, start + block);
    int found = INT_MAX;
#pragma omp parallel reduction(min : found)
    {
      NetworkEvaluator evaluator(scenario);
      StrategyProfile work = base;
#pragma omp for schedule(static)
      for (int k = start; k < stop; ++k) {
        ApplyStrategy(scenario, player, strategies[k], work);
        const double u = evaluator.Evaluate(work.levels(), kind);
        if (StrictlyImproves(u, current) && k < found) found = k;
      }
    }
    if (found != INT_MAX) {
      StrategyProfile work = base;
      ApplyStrategy(scenario, player, strategies[found], work);
      NetworkEvaluator evaluator(scenario);
      *found_utility = evaluator.Evaluate(work.levels(), kind);
      return found;
    }
  }
  return -1;
}

class Engine {
 public:
  Engine(const Scenario& scenario, const GameConfig& config)
      : scenario_(scenario), config_(config), evaluator_(scenario) {}

  StepResult Step(const PlayerId& player, StrategyProfile& profile) {
    return player.node < 0 ? StepUser(player, profile)
                           : StepChannel(player, profile);
  }

  ArbitrationResult Arbitrate(int user, int node, StrategyProfile& profile) {
    ArbitrationResult result;
    const SlotLayout& layout = scenario_.layout();
    const std::vector<int> others = StepOneMask(scenario_, user, node);
    const bool other_powered = std::any_of(
        others.begin(), others.end(), [&](int s) { return profile.level(s) > 0; });
    if (!other_powered) return result;

    const int g = layout.GroupOf(user, node);
    StrategyProfile candidate = profile;
    for (int s : others) candidate.set_level(s, 0);
    StrategyProfile incumbent = profile;
    for (int s = layout.group_begin(g); s < layout.group_end(g); ++s) {
      incumbent.set_level(s, 0);
    }
    result.compared = true;
    result.candidate_utility =
        evaluator_.Evaluate(candidate.levels(), config_.utility);
    result.incumbent_utility =
        evaluator_.Evaluate(incumbent.levels(), config_.utility);
    result.candidate_adopted =
        StrictlyImproves(result.candidate_utility, result.incumbent_utility);
    profile = result.candidate_adopted ? std::move(candidate) : std::move(incumbent);
    return result;
  }

 private:
  StepResult StepUser(const PlayerId& player, StrategyProfile& profile) {
    StepResult result;
    result.utility_before = evaluator_.Evaluate(profile.levels(), config_.utility);
    result.utility_after = result.utility_before;
    const std::vector<Strategy> strategies =
        EnumerateStrategies(player, profile, scenario_, GameKind::kUser);
    double found_utility = 0.0;
    const int k =
        config_.scan == ScanMode::kParallel
            ? FirstImprovingParallel(scenario_, player.user, strategies, profile,
                                     config_.utility, result.utility_before,
                                     &found_utility)
            : FirstImprovingSerial(scenario_, player.user, strategies, profile,
                                   config_.utility, result.utility_before,
                                   evaluator_, &found_utility);
    if (k >= 0) {
      ApplyStrategy(scenario_, player, strategies[k], profile);
      result.changed = true;
      result.utility_after = found_utility;
    }
    return result;
  }

  StepResult StepChannel(const PlayerId& player, StrategyProfile& profile) {
    StepResult result;
    const int slot =
        scenario_.layout().SlotOf(player.user, player.node, player.channel);
    StrategyProfile masked = profile;
    for (int s : StepOneMask(scenario_, player.user, player.node)) {
      if (masked.level(s) > 0) {
        result.masked = true;
        masked.set_level(s, 0);
      }
    }
    result.utility_before = evaluator_.Evaluate(masked.levels(), config_.utility);
    result.utility_after = result.utility_before;
    const int current = profile.level(slot);
    for (const Strategy& strategy :
         EnumerateStrategies(player, profile, scenario_, GameKind::kChannel)) {
      const int level = strategy.levels.front();
      if (level == current) continue;
      masked.set_level(slot, level);
      const double u = evaluator_.Evaluate(masked.levels(), config_.utility);
      if (StrictlyImproves(u, result.utility_before)) {
        profile.set_level(slot, level);
        result.changed = true;
        result.utility_after = u;
        return result;
      }
    }
    return result;
  }

  const Scenario& scenario_;
  GameConfig config_;
  NetworkEvaluator evaluator_;
};

std::vector<std::uint8_t> UserLevels(const Scenario& scenario,
                                     const StrategyProfile& profile, int user) {
  const SlotLayout& layout = scenario.layout();
  return {profile.levels().begin() + layout.user_slot_begin(user),
          profile.levels().begin() + layout.user_slot_end(user)};
}

}  // namespace

std::vector<PlayerId> ChannelGamePlayers(const Scenario& scenario) {
  std::vector<PlayerId> players;
  for (const Slot& slot : scenario.layout().slots()) {
    players.push_back({slot.user, slot.node, slot.channel});
  }
  return players;
}

int Strategy::TotalLevel() const {
  return std::accumulate(levels.begin(), levels.end(), 0);
}

std::vector<Strategy> EnumerateStrategies(const PlayerId& player,
                                          const StrategyProfile& profile,
                                          const Scenario& scenario,
                                          GameKind game) {
  const int q = scenario.radio().power_levels_q;
  std::vector<Strategy> out;
  if (game == GameKind::kChannel) {
    const bool held =
        HeldByOther(scenario, profile, player.user, player.node, player.channel);
    const int top = held ? 0 : q;
    for (int level = 0; level <= top; ++level) {
      out.push_back({player.node, {static_cast<std::uint8_t>(level)}});
    }
    return out;
  }

  out.push_back({-1, {}});
  for (int j : scenario.candidates(player.user)) {
    const std::vector<int>& channels = scenario.nodes()[j].channels;
    std::vector<int> free;
    for (std::size_t k = 0; k < channels.size(); ++k) {
      if (!HeldByOther(scenario, profile, player.user, j, channels[k])) {
        free.push_back(static_cast<int>(k));
      }
    }
    std::vector<int> digits(free.size(), 0);
    // Odometer with the last free channel varying fastest: lexicographic.
    while (true) {
      int pos = static_cast<int>(digits.size()) - 1;
      while (pos >= 0 && digits[pos] == q) digits[pos--] = 0;
      if (pos < 0) break;
      ++digits[pos];
      Strategy strategy{j, std::vector<std::uint8_t>(channels.size(), 0)};
      for (std::size_t k = 0; k < free.size(); ++k) {
        strategy.levels[free[k]] = static_cast<std::uint8_t>(digits[k]);
      }
      out.push_back(std::move(strategy));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Strategy& a, const Strategy& b) {
                     return a.TotalLevel() < b.TotalLevel();
                   });
  return out;
}

void ApplyStrategy(const Scenario& scenario, const PlayerId& player,
                   const Strategy& strategy, StrategyProfile& profile) {
  const SlotLayout& layout = scenario.layout();
  if (player.node >= 0) {
    profile.set_level(layout.SlotOf(player.user, player.node, player.channel),
                      strategy.levels.front());
    return;
  }
  for (int s = layout.user_slot_begin(player.user);
       s < layout.user_slot_end(player.user); ++s) {
    profile.set_level(s, 0);
  }
  if (strategy.node < 0) return;
  const int g = layout.GroupOf(player.user, strategy.node);
  for (int s = layout.group_begin(g), k = 0; s < layout.group_end(g); ++s, ++k) {
    profile.set_level(s, strategy.levels[k]);
  }
}

bool StrictlyImproves(double candidate, double current) {
  return candidate > current + 1e-12 * std::max(1.0, std::abs(current));
}

double EvaluateUtility(const Scenario& scenario, const StrategyProfile& profile,
                       UtilityKind kind, std::span<const int> masked_slots) {
  StrategyProfile masked = profile;
  for (int s : masked_slots) masked.set_level(s, 0);
  if (!IsSingleServing(scenario, masked) ||
      !IsChannelExclusive(scenario, masked)) {
    throw InvalidArgument("infeasible strategy profile");
  }
  NetworkEvaluator evaluator(scenario);
  return evaluator.Evaluate(masked.levels(), kind);
}

std::vector<int> StepOneMask(const Scenario& scenario, int user, int node) {
  const SlotLayout& layout = scenario.layout();
  std::vector<int> mask;
  for (int g = layout.user_group_begin(user); g < layout.user_group_end(user);
       ++g) {
    if (layout.group_node(g) == node) continue;
    for (int s = layout.group_begin(g); s < layout.group_end(g); ++s) {
      mask.push_back(s);
    }
  }
  return mask;
}

StepResult BetterResponseStep(const Scenario& scenario, const PlayerId& player,
                              StrategyProfile& profile,
                              const GameConfig& config) {
  Engine engine(scenario, config);
  return engine.Step(player, profile);
}

ArbitrationResult ArbitrateNodeSwitch(const Scenario& scenario, int user,
                                      int node, StrategyProfile& profile,
                                      UtilityKind utility) {
  GameConfig config;
  config.utility = utility;
  Engine engine(scenario, config);
  return engine.Arbitrate(user, node, profile);
}

bool SwitchOffDeadSlots(const Scenario& scenario, const GameConfig& config,
                        StrategyProfile& profile, const MoveObserver& observer) {
  NetworkEvaluator evaluator(scenario);
  evaluator.Evaluate(profile.levels());
  const double before = evaluator.Utility(config.utility);
  bool any = false;
  for (int s = 0; s < profile.size(); ++s) {
    if (profile.level(s) > 0 &&
        evaluator.slot_sinr()[s] < scenario.radio().sinr_alpha) {
      profile.set_level(s, 0);
      any = true;
    }
  }
  if (any && observer) {
    const double after = evaluator.Evaluate(profile.levels(), config.utility);
    observer({MoveEvent::Kind::kSwitchOff, PlayerId{}, before, after, false,
              &profile});
  }
  return any;
}

GameOutcome Play(const Scenario& scenario, const GameConfig& config,
                 const MoveObserver& observer) {
  if (config.max_rounds < 1) throw InvalidArgument("max_rounds must be >= 1");
  Engine engine(scenario, config);
  const SlotLayout& layout = scenario.layout();
  GameOutcome outcome;
  outcome.profile = StrategyProfile(scenario);
  StrategyProfile& profile = outcome.profile;

  auto notify_move = [&](const PlayerId& player, const StepResult& step) {
    if (!observer || !step.changed) return;
    observer({MoveEvent::Kind::kMove, player, step.utility_before,
              step.utility_after, step.masked, &profile});
  };

  for (int round = 1; round <= config.max_rounds; ++round) {
    bool changed = false;
    if (config.game == GameKind::kUser) {
      for (int i = 0; i < scenario.num_users(); ++i) {
        const PlayerId player{i};
        const StepResult step = engine.Step(player, profile);
        changed |= step.changed;
        notify_move(player, step);
      }
    } else {
      for (int x = 0; x < scenario.num_users(); ++x) {
        for (int g = layout.user_group_begin(x); g < layout.user_group_end(x);
             ++g) {
          const int y = layout.group_node(g);
          const std::vector<std::uint8_t> before = UserLevels(scenario, profile, x);
          for (int s = layout.group_begin(g); s < layout.group_end(g); ++s) {
            const PlayerId player{x, y, layout.slot(s).channel};
            notify_move(player, engine.Step(player, profile));
          }
          const ArbitrationResult arbitration = engine.Arbitrate(x, y, profile);
          if (observer && arbitration.compared) {
            observer({MoveEvent::Kind::kArbitration,
                      PlayerId{x, y},
                      arbitration.incumbent_utility,
                      arbitration.candidate_adopted ? arbitration.candidate_utility
                                                    : arbitration.incumbent_utility,
                      false, &profile});
          }
          changed |= UserLevels(scenario, profile, x) != before;
        }
      }
    }
    outcome.rounds = round;
    if (!changed && SwitchOffDeadSlots(scenario, config, profile, observer)) {
      changed = true;
    }
    if (!changed) {
      outcome.converged = true;
      break;
    }
  }

  NetworkEvaluator evaluator(scenario);
  evaluator.Evaluate(profile.levels());
  outcome.user_capacity.assign(evaluator.user_capacity().begin(),
                               evaluator.user_capacity().end());
  outcome.metrics = ComputeMetrics(outcome.user_capacity);
  outcome.metrics.rounds = outcome.rounds;
  outcome.metrics.converged = outcome.converged;
  return outcome;
}

}  // namespace cellgame
