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

#include "cellgame/backhaul.h"
#include "cellgame/errors.h"
#include "cellgame/metrics.h"

namespace cellgame {

NetworkEvaluator::NetworkEvaluator(const Scenario& scenario)
    : scenario_(scenario),
      table_(BuildEfficiencyTable(scenario.radio().efficiency_steps)) {
  const int n = scenario.num_users();
  const int m = scenario.num_nodes();
  const double unit = scenario.radio().LevelPowerMw();
  rx_per_level_.resize(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      rx_per_level_[static_cast<std::size_t>(i) * m + j] =
          unit * scenario.gain(i, j);
    }
  }
  const SlotLayout& layout = scenario.layout();
  node_channel_level_.assign(static_cast<std::size_t>(m) * scenario.num_channels(),
                             0);
  slot_sinr_.assign(layout.num_slots(), 0.0);
  group_access_.assign(layout.num_groups(), 0.0);
  group_actual_.assign(layout.num_groups(), 0.0);
  user_capacity_.assign(n, 0.0);
  cluster_groups_.resize(scenario.num_clusters());
}

void NetworkEvaluator::Evaluate(std::span<const std::uint8_t> levels) {
  const Scenario& sc = scenario_;
  const SlotLayout& layout = sc.layout();
  const int m = sc.num_nodes();
  const int num_channels = sc.num_channels();
  const double noise = sc.radio().noise_mw;
  const double bandwidth = sc.radio().channel_bandwidth_mhz;
  const std::span<const Slot> slots = layout.slots();

  std::fill(node_channel_level_.begin(), node_channel_level_.end(), 0);
  for (int s = 0; s < layout.num_slots(); ++s) {
    if (levels[s]) {
      node_channel_level_[slots[s].node * num_channels + slots[s].channel] +=
          levels[s];
    }
  }

  std::fill(group_access_.begin(), group_access_.end(), 0.0);
  for (int s = 0; s < layout.num_slots(); ++s) {
    if (!levels[s]) {
      slot_sinr_[s] = 0.0;
      continue;
    }
    const Slot& slot = slots[s];
    const double* rx = &rx_per_level_[static_cast<std::size_t>(slot.user) * m];
    double interference = noise;
    for (int k = 0; k < m; ++k) {
      if (k != slot.node) {
        interference += node_channel_level_[k * num_channels + slot.channel] * rx[k];
      }
    }
    const double sinr =
        node_channel_level_[slot.node * num_channels + slot.channel] *
        rx[slot.node] / interference;
    slot_sinr_[s] = sinr;
    group_access_[layout.slot_group(s)] += ChannelCapacity(sinr, table_, bandwidth);
  }

  for (auto& members : cluster_groups_) members.clear();
  for (int g = 0; g < layout.num_groups(); ++g) {
    group_actual_[g] = 0.0;
    if (group_access_[g] > 0) {
      cluster_groups_[sc.cluster_index(layout.group_node(g))].push_back(g);
    }
  }
  const double beta = sc.backhaul_beta();
  for (int z = 0; z < sc.num_clusters(); ++z) {
    const std::vector<int>& members = cluster_groups_[z];
    if (members.empty()) continue;
    caps_scratch_.resize(members.size());
    shares_scratch_.resize(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      caps_scratch_[k] = beta * group_access_[members[k]];
    }
    AllocateClusterInto(caps_scratch_, sc.clusters()[z].capacity_mbps,
                        shares_scratch_, order_scratch_);
    for (std::size_t k = 0; k < members.size(); ++k) {
      group_actual_[members[k]] = shares_scratch_[k];
    }
  }

  for (int i = 0; i < sc.num_users(); ++i) {
    double total = 0.0;
    for (int g = layout.user_group_begin(i); g < layout.user_group_end(i); ++g) {
      total += group_actual_[g];
    }
    user_capacity_[i] = total;
  }
}

double NetworkEvaluator::Utility(UtilityKind kind) const {
  return UtilityOf(user_capacity_, kind);
}

bool NetworkEvaluator::AllPoweredMeetAlpha() const {
  // slot_sinr_ is 0 exactly for unpowered slots; a powered slot always has a
  // positive signal term.
  const double alpha = scenario_.radio().sinr_alpha;
  for (double s : slot_sinr_) {
    if (s != 0.0 && s < alpha) return false;
  }
  return true;
}

double UtilityOf(std::span<const double> user_capacity, UtilityKind kind) {
  double total = 0.0;
  if (kind == UtilityKind::kLog) {
    for (double c : user_capacity) total += std::log1p(c);
  } else {
    for (double c : user_capacity) total += c;
  }
  return total;
}

std::vector<double> ReferenceUserCapacities(const Scenario& scenario,
                                            const StrategyProfile& profile) {
  const EfficiencyTable table =
      BuildEfficiencyTable(scenario.radio().efficiency_steps);
  std::vector<UserDemand> demands(scenario.num_users());
  for (int i = 0; i < scenario.num_users(); ++i) {
    const std::vector<int> serving = ServingNodes(scenario, profile, i);
    if (serving.size() > 1) {
      throw InvalidArgument("reference evaluation needs a single-serving profile");
    }
    if (serving.empty()) continue;
    demands[i].node = serving.front();
    demands[i].access_mbps =
        AccessCapacity(profile, scenario, i, serving.front(), table);
  }
  return AllocateAll(scenario, demands).actual;
}

}  // namespace cellgame
