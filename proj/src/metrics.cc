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

#include "cellgame/metrics.h"

#include <cmath>
#include <stdexcept>

#include "cellgame/errors.h"

namespace cellgame {
namespace {

void RequireNonNegative(std::span<const double> caps) {
  for (double c : caps) {
    if (!(c >= 0)) throw InvalidArgument("capacities must be non-negative");
  }
}

std::uint64_t CheckedMul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("complexity bound overflows 64 bits");
  }
  return out;
}

}  // namespace

double NetworkUtility(std::span<const double> caps) {
  RequireNonNegative(caps);
  double nu = 0.0;
  for (double c : caps) nu += std::log1p(c);
  return nu;
}

double NetworkUtilityByLink(std::span<const double> link_caps) {
  return NetworkUtility(link_caps);
}

std::optional<double> JainIndex(std::span<const double> caps) {
  if (caps.empty()) throw InvalidArgument("Jain's index needs at least one user");
  RequireNonNegative(caps);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double c : caps) {
    sum += c;
    sum_sq += c * c;
  }
  if (sum_sq == 0.0) return std::nullopt;
  return sum * sum / (static_cast<double>(caps.size()) * sum_sq);
}

double BlockingProbability(std::span<const double> caps) {
  if (caps.empty()) return 0.0;
  int blocked = 0;
  for (double c : caps) blocked += (c == 0.0);
  return static_cast<double>(blocked) / static_cast<double>(caps.size());
}

double TotalCapacity(std::span<const double> caps) {
  double total = 0.0;
  for (double c : caps) total += c;
  return total;
}

MetricRecord ComputeMetrics(std::span<const double> caps) {
  MetricRecord record;
  record.nu = NetworkUtility(caps);
  record.total_capacity_mbps = TotalCapacity(caps);
  record.blocking_prob = BlockingProbability(caps);
  if (!caps.empty()) record.jain = JainIndex(caps);
  return record;
}

std::uint64_t ComplexityBound(GameKind game, std::uint64_t max_nodes_per_user,
                              std::uint64_t num_users,
                              std::uint64_t num_channels,
                              std::uint64_t power_levels) {
  if (max_nodes_per_user < 1 || num_users < 1 || num_channels < 1 ||
      power_levels < 1) {
    throw InvalidArgument("complexity bound arguments must be >= 1");
  }
  std::uint64_t bound = CheckedMul(max_nodes_per_user,
                                   CheckedMul(num_users, num_users));
  bound = CheckedMul(bound, num_channels);
  if (game == GameKind::kUser) {
    for (std::uint64_t r = 0; r < num_channels; ++r) {
      bound = CheckedMul(bound, power_levels);
    }
  } else {
    bound = CheckedMul(CheckedMul(bound, num_channels), power_levels);
  }
  return bound;
}

}  // namespace cellgame
