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

#ifndef CELLGAME_METRICS_H_
#define CELLGAME_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>

namespace cellgame {

struct MetricRecord {
  double nu = 0.0;
  double total_capacity_mbps = 0.0;
  double blocking_prob = 0.0;
  std::optional<double> jain;  // nullopt when nobody carries traffic
  int rounds = 0;
  bool converged = false;
};

// sum_i ln(1 + c_i), c in Mbps.
double NetworkUtility(std::span<const double> caps);

// Per-link form sum_i sum_j ln(1 + c_ij); equals NetworkUtility on the
// per-user sums whenever every user has at most one positive link.
double NetworkUtilityByLink(std::span<const double> link_caps);

// (sum c)^2 / (|N| sum c^2), counting zero-capacity users in |N|.
// nullopt when every capacity is zero.
std::optional<double> JainIndex(std::span<const double> caps);

// Fraction of users with capacity exactly 0.
double BlockingProbability(std::span<const double> caps);

double TotalCapacity(std::span<const double> caps);

MetricRecord ComputeMetrics(std::span<const double> caps);

enum class GameKind { kUser, kChannel };

// Per-round operation bound: U-Game m*N^2*R*Q^R, C-Game m*N^2*R^2*Q.
// Throws std::overflow_error when the count does not fit in 64 bits.
std::uint64_t ComplexityBound(GameKind game, std::uint64_t max_nodes_per_user,
                              std::uint64_t num_users,
                              std::uint64_t num_channels,
                              std::uint64_t power_levels);

}  // namespace cellgame

#endif  // CELLGAME_METRICS_H_
