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

#ifndef CELLGAME_BACKHAUL_H_
#define CELLGAME_BACKHAUL_H_

#include <span>
#include <vector>

#include "cellgame/scenario.h"

namespace cellgame {

// Max-min share of a cluster's backhaul capacity. With the caps sorted
// nondecreasing, position k receives
//   min(cap(k), (capacity - sum_{l<k} c(l)) / (n - k + 1)),
// which maximizes sum ln(1 + c) subject to c <= cap and sum c <= capacity.
// Results come back in the caller's order; ties keep input order.
std::vector<double> AllocateCluster(std::span<const double> access_caps,
                                    double capacity);

// Allocation-free variant for hot loops. `order` is scratch space.
void AllocateClusterInto(std::span<const double> access_caps, double capacity,
                         std::span<double> out, std::vector<int>& order);

struct UserDemand {
  int node = -1;  // serving node, -1 when unserved
  double access_mbps = 0.0;
};

struct AllocationResult {
  std::vector<double> actual;          // per user, Mbps
  std::vector<double> cluster_totals;  // per cluster index, Mbps
};

// Runs AllocateCluster independently per cluster on caps scaled by the
// scenario's backhaul_beta. Users with zero access capacity receive 0.
AllocationResult AllocateAll(const Scenario& scenario,
                             std::span<const UserDemand> demands);

}  // namespace cellgame

#endif  // CELLGAME_BACKHAUL_H_
