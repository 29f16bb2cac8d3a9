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

#include "cellgame/backhaul.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cellgame/errors.h"

namespace cellgame {

void AllocateClusterInto(std::span<const double> access_caps, double capacity,
                         std::span<double> out, std::vector<int>& order) {
  if (!(capacity > 0)) throw InvalidArgument("cluster capacity must be positive");
  const int n = static_cast<int>(access_caps.size());
  order.resize(n);
  for (int k = 0; k < n; ++k) {
    if (!(access_caps[k] >= 0)) {
      throw InvalidArgument("access capacities must be non-negative");
    }
    order[k] = k;
  }
  // Insertion sort: clusters hold a handful of users and the sort is stable.
  for (int k = 1; k < n; ++k) {
    const int v = order[k];
    int p = k - 1;
    while (p >= 0 && access_caps[order[p]] > access_caps[v]) {
      order[p + 1] = order[p];
      --p;
    }
    order[p + 1] = v;
  }
  double used = 0.0;
  for (int k = 0; k < n; ++k) {
    const double share = (capacity - used) / (n - k);
    const double c = std::min(access_caps[order[k]], share);
    out[order[k]] = c;
    used += c;
  }
}

std::vector<double> AllocateCluster(std::span<const double> access_caps,
                                    double capacity) {
  std::vector<double> out(access_caps.size());
  std::vector<int> order;
  AllocateClusterInto(access_caps, capacity, out, order);
  return out;
}

AllocationResult AllocateAll(const Scenario& scenario,
                             std::span<const UserDemand> demands) {
  AllocationResult result;
  result.actual.assign(demands.size(), 0.0);
  result.cluster_totals.assign(scenario.num_clusters(), 0.0);
  std::vector<std::vector<int>> members(scenario.num_clusters());
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const UserDemand& d = demands[i];
    if (d.node < 0) continue;
    if (d.node >= scenario.num_nodes()) {
      throw InvalidArgument("user " + std::to_string(i) +
                            " mapped to unknown node " + std::to_string(d.node));
    }
    if (d.access_mbps > 0) {
      members[scenario.cluster_index(d.node)].push_back(static_cast<int>(i));
    }
  }
  std::vector<double> caps;
  std::vector<double> shares;
  std::vector<int> order;
  for (int z = 0; z < scenario.num_clusters(); ++z) {
    if (members[z].empty()) continue;
    caps.clear();
    for (int i : members[z]) {
      caps.push_back(scenario.backhaul_beta() * demands[i].access_mbps);
    }
    shares.resize(caps.size());
    AllocateClusterInto(caps, scenario.clusters()[z].capacity_mbps, shares,
                        order);
    for (std::size_t k = 0; k < members[z].size(); ++k) {
      result.actual[members[z][k]] = shares[k];
      result.cluster_totals[z] += shares[k];
    }
  }
  return result;
}

}  // namespace cellgame
