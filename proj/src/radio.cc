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

#include "cellgame/radio.h"

#include <cmath>
#include <numeric>
#include <string>

#include "cellgame/errors.h"

namespace cellgame {

EfficiencyTable BuildEfficiencyTable(std::span<const double> efficiencies) {
  if (efficiencies.empty()) throw InvalidArgument("efficiency table is empty");
  EfficiencyTable table;
  for (std::size_t m = 0; m < efficiencies.size(); ++m) {
    if (!(efficiencies[m] > 0) ||
        (m > 0 && !(efficiencies[m] > efficiencies[m - 1]))) {
      throw InvalidArgument("efficiencies must be positive and ascending");
    }
    table.efficiencies.push_back(efficiencies[m]);
    table.thresholds.push_back(std::exp2(efficiencies[m]) - 1.0);
  }
  return table;
}

double ChannelCapacity(double sinr, const EfficiencyTable& table,
                       double bandwidth_mhz) {
  // Number of thresholds strictly below sinr; equality stays on the lower step.
  std::size_t m = 0;
  while (m < table.thresholds.size() && sinr > table.thresholds[m]) ++m;
  return m == 0 ? 0.0 : table.efficiencies[m - 1] * bandwidth_mhz;
}

int StrategyProfile::TotalLevel() const {
  return std::accumulate(levels_.begin(), levels_.end(), 0);
}

int LevelAt(const Scenario& scenario, const StrategyProfile& profile, int user,
            int node, int channel) {
  const int s = scenario.layout().SlotOf(user, node, channel);
  return s < 0 ? 0 : profile.level(s);
}

int NodeChannelLevel(const Scenario& scenario, const StrategyProfile& profile,
                     int node, int channel) {
  int total = 0;
  for (int s : scenario.layout().SlotsOnNodeChannel(node, channel)) {
    total += profile.level(s);
  }
  return total;
}

std::vector<int> ServingNodes(const Scenario& scenario,
                              const StrategyProfile& profile, int user) {
  const SlotLayout& layout = scenario.layout();
  std::vector<int> nodes;
  for (int g = layout.user_group_begin(user); g < layout.user_group_end(user);
       ++g) {
    for (int s = layout.group_begin(g); s < layout.group_end(g); ++s) {
      if (profile.level(s) > 0) {
        nodes.push_back(layout.group_node(g));
        break;
      }
    }
  }
  return nodes;
}

bool IsSingleServing(const Scenario& scenario, const StrategyProfile& profile) {
  for (int i = 0; i < scenario.num_users(); ++i) {
    if (ServingNodes(scenario, profile, i).size() > 1) return false;
  }
  return true;
}

bool IsChannelExclusive(const Scenario& scenario,
                        const StrategyProfile& profile) {
  for (int j = 0; j < scenario.num_nodes(); ++j) {
    for (int r : scenario.nodes()[j].channels) {
      int holders = 0;
      for (int s : scenario.layout().SlotsOnNodeChannel(j, r)) {
        holders += profile.level(s) > 0;
      }
      if (holders > 1) return false;
    }
  }
  return true;
}

double Sinr(const StrategyProfile& profile, const Scenario& scenario, int user,
            int node, int channel) {
  if (user < 0 || user >= scenario.num_users() || node < 0 ||
      node >= scenario.num_nodes() || channel < 0 ||
      channel >= scenario.num_channels() ||
      scenario.layout().SlotOf(user, node, channel) < 0) {
    throw InvalidArgument("(" + std::to_string(user) + ", " +
                          std::to_string(node) + ", " +
                          std::to_string(channel) + ") is not a slot");
  }
  if (LevelAt(scenario, profile, user, node, channel) == 0) return 0.0;
  const double unit = scenario.radio().LevelPowerMw();
  double interference = scenario.radio().noise_mw;
  for (int k = 0; k < scenario.num_nodes(); ++k) {
    if (k == node) continue;
    interference += NodeChannelLevel(scenario, profile, k, channel) * unit *
                    scenario.gain(user, k);
  }
  const double signal =
      NodeChannelLevel(scenario, profile, node, channel) * unit *
      scenario.gain(user, node);
  return signal / interference;
}

double AccessCapacity(const StrategyProfile& profile, const Scenario& scenario,
                      int user, int node, const EfficiencyTable& table) {
  if (scenario.layout().GroupOf(user, node) < 0) {
    throw InvalidArgument("node " + std::to_string(node) +
                          " is not a candidate of user " +
                          std::to_string(user));
  }
  double total = 0.0;
  for (int r : scenario.nodes()[node].channels) {
    total += ChannelCapacity(Sinr(profile, scenario, user, node, r), table,
                             scenario.radio().channel_bandwidth_mhz);
  }
  return total;
}

}  // namespace cellgame
