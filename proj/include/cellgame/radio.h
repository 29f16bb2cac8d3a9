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

#ifndef CELLGAME_RADIO_H_
#define CELLGAME_RADIO_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cellgame/scenario.h"

namespace cellgame {

// Stepwise SINR -> spectral efficiency map. thresholds[m] = 2^eta_m - 1.
struct EfficiencyTable {
  std::vector<double> thresholds;
  std::vector<double> efficiencies;
};

EfficiencyTable BuildEfficiencyTable(std::span<const double> efficiencies);

// Step capacity in Mbps: 0 up to and including the first threshold,
// eta_m * bandwidth on (thresholds[m], thresholds[m+1]], eta_C * bandwidth
// above the last threshold.
double ChannelCapacity(double sinr, const EfficiencyTable& table,
                       double bandwidth_mhz);

// Power level q[i][j][r] in {0..Q} for every slot of a scenario's layout.
// Feasibility (single serving node per user, one user per node-channel) is
// checked by the helpers below rather than enforced on write, because the
// channel game passes through profiles where a user is powered at two nodes.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(const Scenario& scenario)
      : levels_(scenario.layout().num_slots(), 0) {}

  int level(int slot) const { return levels_[slot]; }
  void set_level(int slot, int level) {
    levels_[slot] = static_cast<std::uint8_t>(level);
  }
  std::span<const std::uint8_t> levels() const { return levels_; }
  std::span<std::uint8_t> mutable_levels() { return levels_; }
  int size() const { return static_cast<int>(levels_.size()); }
  int TotalLevel() const;

  bool operator==(const StrategyProfile&) const = default;

 private:
  std::vector<std::uint8_t> levels_;
};

// Level at (user, node, channel); 0 for triples outside the layout.
int LevelAt(const Scenario& scenario, const StrategyProfile& profile, int user,
            int node, int channel);

// Total level sum over users at (node, channel).
int NodeChannelLevel(const Scenario& scenario, const StrategyProfile& profile,
                     int node, int channel);

// Nodes with at least one powered slot for user, ascending.
std::vector<int> ServingNodes(const Scenario& scenario,
                              const StrategyProfile& profile, int user);

bool IsSingleServing(const Scenario& scenario, const StrategyProfile& profile);
bool IsChannelExclusive(const Scenario& scenario,
                        const StrategyProfile& profile);

// SINR at user i served by node j on channel r. 0 when q[i][j][r] = 0.
// Throws InvalidArgument when (i, j, r) is not a slot.
double Sinr(const StrategyProfile& profile, const Scenario& scenario, int user,
            int node, int channel);

// Sum of step capacities over R_j for user i at node j, in Mbps.
double AccessCapacity(const StrategyProfile& profile, const Scenario& scenario,
                      int user, int node, const EfficiencyTable& table);

}  // namespace cellgame

#endif  // CELLGAME_RADIO_H_
