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

#ifndef CELLGAME_EVALUATOR_H_
#define CELLGAME_EVALUATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cellgame/radio.h"
#include "cellgame/scenario.h"

namespace cellgame {

enum class UtilityKind { kLog, kCapacity };

// Hot-path evaluation of a whole profile: SINR of every powered slot, step
// capacities, per-(user, node) access capacity, per-cluster max-min backhaul
// allocation and the resulting per-user actual capacity. Scratch buffers are
// reused between calls, so one evaluator must not be shared across threads.
//
// The composable functions in radio.h / backhaul.h / metrics.h compute the
// same quantities one at a time and serve as the reference for this kernel.
class NetworkEvaluator {
 public:
  explicit NetworkEvaluator(const Scenario& scenario);

  void Evaluate(std::span<const std::uint8_t> levels);
  double Evaluate(std::span<const std::uint8_t> levels, UtilityKind kind) {
    Evaluate(levels);
    return Utility(kind);
  }

  // Valid after Evaluate.
  double Utility(UtilityKind kind) const;
  std::span<const double> user_capacity() const { return user_capacity_; }
  std::span<const double> group_access() const { return group_access_; }
  std::span<const double> group_actual() const { return group_actual_; }
  // 0 for unpowered slots.
  std::span<const double> slot_sinr() const { return slot_sinr_; }
  // True when every powered slot has SINR >= alpha.
  bool AllPoweredMeetAlpha() const;

  const Scenario& scenario() const { return scenario_; }
  const EfficiencyTable& table() const { return table_; }

 private:
  const Scenario& scenario_;
  EfficiencyTable table_;
  std::vector<double> rx_per_level_;  // [user][node]: gain * Pmax / Q
  std::vector<int> node_channel_level_;
  std::vector<double> slot_sinr_;
  std::vector<double> group_access_;
  std::vector<double> group_actual_;
  std::vector<double> user_capacity_;
  std::vector<std::vector<int>> cluster_groups_;
  std::vector<double> caps_scratch_;
  std::vector<double> shares_scratch_;
  std::vector<int> order_scratch_;
};

// Reference evaluation through radio.h / backhaul.h only. Requires a
// single-serving profile; returns per-user actual capacities.
std::vector<double> ReferenceUserCapacities(const Scenario& scenario,
                                            const StrategyProfile& profile);

double UtilityOf(std::span<const double> user_capacity, UtilityKind kind);

}  // namespace cellgame

#endif  // CELLGAME_EVALUATOR_H_
