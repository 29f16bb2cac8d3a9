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

#include "cellgame/scenario.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "cellgame/errors.h"

namespace cellgame {
namespace {

void Require(bool condition, const std::string& what) {
  if (!condition) throw InvalidArgument(what);
}

}  // namespace

void RadioConfig::Validate() const {
  Require(std::isfinite(max_power_mw) && max_power_mw > 0,
          "max_power_mw must be positive");
  Require(power_levels_q >= 1, "power_levels_q must be >= 1");
  Require(std::isfinite(noise_mw) && noise_mw > 0, "noise_mw must be positive");
  Require(std::isfinite(path_loss_gamma) && path_loss_gamma > 0,
          "path_loss_gamma must be positive");
  Require(std::isfinite(channel_bandwidth_mhz) && channel_bandwidth_mhz > 0,
          "channel_bandwidth_mhz must be positive");
  Require(!efficiency_steps.empty(), "efficiency_steps must not be empty");
  for (std::size_t m = 0; m < efficiency_steps.size(); ++m) {
    Require(std::isfinite(efficiency_steps[m]) && efficiency_steps[m] > 0,
            "efficiency_steps must be positive");
    Require(m == 0 || efficiency_steps[m] > efficiency_steps[m - 1],
            "efficiency_steps must be strictly increasing");
  }
  Require(std::isfinite(sinr_alpha) && sinr_alpha > 0,
          "sinr_alpha must be positive");
  Require(std::isfinite(min_distance_m) && min_distance_m > 0,
          "min_distance_m must be positive");
}

double DbmToMw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double Distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string_view ToString(AssociationPolicy policy) {
  return policy == AssociationPolicy::kNearest ? "nearest" : "all";
}

AssociationPolicy ParseAssociationPolicy(std::string_view text) {
  if (text == "nearest" || text == "1an") return AssociationPolicy::kNearest;
  if (text == "all" || text == "4an") return AssociationPolicy::kAllInRange;
  throw InvalidArgument("unknown association policy '" + std::string(text) +
                        "'");
}

double ChannelGain(double distance_m, double gamma, double min_distance_m) {
  Require(std::isfinite(distance_m) && std::isfinite(gamma) &&
              std::isfinite(min_distance_m),
          "channel gain inputs must be finite");
  Require(distance_m >= 0 && gamma > 0 && min_distance_m > 0,
          "channel gain needs distance >= 0, gamma > 0, min_distance > 0");
  return std::pow(std::max(distance_m, min_distance_m), -gamma);
}

double CoverageRange(const RadioConfig& radio, double sinr_target) {
  // max_power * d^-gamma / noise = target
  return std::pow(radio.max_power_mw / (radio.noise_mw * sinr_target),
                  1.0 / radio.path_loss_gamma);
}

// ---------------------------------------------------------------------------
// SlotLayout

SlotLayout::SlotLayout(int num_users, int num_nodes, int num_channels,
                       const std::vector<std::vector<int>>& candidates,
                       const std::vector<AccessNode>& nodes)
    : num_nodes_(num_nodes), num_channels_(num_channels) {
  slot_index_.assign(
      static_cast<std::size_t>(num_users) * num_nodes * num_channels, -1);
  group_index_.assign(static_cast<std::size_t>(num_users) * num_nodes, -1);
  for (int i = 0; i < num_users; ++i) {
    for (int j : candidates[i]) {
      group_index_[static_cast<std::size_t>(i) * num_nodes + j] =
          static_cast<int>(group_user_.size());
      group_user_.push_back(i);
      group_node_.push_back(j);
      for (int r : nodes[j].channels) {
        slot_index_[(static_cast<std::size_t>(i) * num_nodes + j) *
                        num_channels +
                    r] = static_cast<int>(slots_.size());
        slot_group_.push_back(static_cast<int>(group_user_.size()) - 1);
        slots_.push_back({i, j, r});
      }
      group_begin_.push_back(static_cast<int>(slots_.size()));
    }
    user_group_begin_.push_back(static_cast<int>(group_user_.size()));
  }
  // Bucket slots by (node, channel), keeping user order.
  std::vector<int> counts(static_cast<std::size_t>(num_nodes) * num_channels, 0);
  for (const Slot& s : slots_) ++counts[s.node * num_channels + s.channel];
  node_channel_begin_.assign(counts.size() + 1, 0);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    node_channel_begin_[k + 1] = node_channel_begin_[k] + counts[k];
  }
  node_channel_slots_.resize(slots_.size());
  std::vector<int> fill(node_channel_begin_.begin(), node_channel_begin_.end() - 1);
  for (int s = 0; s < num_slots(); ++s) {
    const Slot& slot = slots_[s];
    node_channel_slots_[fill[slot.node * num_channels + slot.channel]++] = s;
  }
}

std::span<const int> SlotLayout::SlotsOnNodeChannel(int node,
                                                    int channel) const {
  const int k = node * num_channels_ + channel;
  return std::span<const int>(node_channel_slots_)
      .subspan(node_channel_begin_[k],
               node_channel_begin_[k + 1] - node_channel_begin_[k]);
}

// ---------------------------------------------------------------------------
// Scenario

Scenario Scenario::Create(Parts parts) {
  Scenario scenario;
  scenario.parts_ = std::move(parts);
  scenario.Derive();
  return scenario;
}

Scenario Scenario::CreateWithGains(
    Parts parts, const std::vector<std::vector<double>>& gains) {
  Scenario scenario = Create(std::move(parts));
  Require(static_cast<int>(gains.size()) == scenario.num_users(),
          "gains must have one row per user");
  for (int i = 0; i < scenario.num_users(); ++i) {
    Require(static_cast<int>(gains[i].size()) == scenario.num_nodes(),
            "gains row " + std::to_string(i) + " must have one entry per node");
    for (int j = 0; j < scenario.num_nodes(); ++j) {
      const double expected = scenario.gain(i, j);
      if (!(std::abs(gains[i][j] - expected) <= 1e-12 * std::abs(expected))) {
        throw InvalidArgument("gains[" + std::to_string(i) + "][" +
                              std::to_string(j) +
                              "] inconsistent with node/user positions");
      }
    }
  }
  return scenario;
}

Scenario Scenario::WithPolicy(AssociationPolicy policy) const {
  Parts parts = parts_;
  parts.policy = policy;
  return Create(std::move(parts));
}

bool Scenario::operator==(const Scenario& other) const {
  const Parts& a = parts_;
  const Parts& b = other.parts_;
  return a.radio.max_power_mw == b.radio.max_power_mw &&
         a.radio.power_levels_q == b.radio.power_levels_q &&
         a.radio.noise_mw == b.radio.noise_mw &&
         a.radio.path_loss_gamma == b.radio.path_loss_gamma &&
         a.radio.channel_bandwidth_mhz == b.radio.channel_bandwidth_mhz &&
         a.radio.efficiency_steps == b.radio.efficiency_steps &&
         a.radio.sinr_alpha == b.radio.sinr_alpha &&
         a.radio.min_distance_m == b.radio.min_distance_m &&
         a.nodes == b.nodes && a.users == b.users &&
         a.num_channels == b.num_channels && a.clusters == b.clusters &&
         a.policy == b.policy && a.seed == b.seed &&
         a.backhaul_beta == b.backhaul_beta && gains_ == other.gains_ &&
         candidates_ == other.candidates_;
}

void Scenario::Derive() {
  Parts& p = parts_;
  p.radio.Validate();
  Require(p.num_channels >= 0, "channel count must be >= 0");
  Require(std::isfinite(p.backhaul_beta) && p.backhaul_beta > 0,
          "backhaul_beta must be positive");

  std::unordered_map<int, int> cluster_by_id;
  for (std::size_t z = 0; z < p.clusters.size(); ++z) {
    Require(cluster_by_id.emplace(p.clusters[z].id, static_cast<int>(z)).second,
            "duplicate cluster id " + std::to_string(p.clusters[z].id));
    Require(std::isfinite(p.clusters[z].capacity_mbps) &&
                p.clusters[z].capacity_mbps > 0,
            "cluster capacities must be positive");
  }
  node_cluster_index_.clear();
  for (std::size_t j = 0; j < p.nodes.size(); ++j) {
    AccessNode& node = p.nodes[j];
    auto it = cluster_by_id.find(node.cluster);
    Require(it != cluster_by_id.end(), "node " + std::to_string(j) +
                                           " references unknown cluster " +
                                           std::to_string(node.cluster));
    node_cluster_index_.push_back(it->second);
    Require(std::is_sorted(node.channels.begin(), node.channels.end()) &&
                std::adjacent_find(node.channels.begin(), node.channels.end()) ==
                    node.channels.end(),
            "node " + std::to_string(j) + " channels must be ascending");
    for (int r : node.channels) {
      Require(r >= 0 && r < p.num_channels,
              "node " + std::to_string(j) + " channel outside R");
    }
  }

  const int n = num_users();
  const int m = num_nodes();
  gains_.assign(static_cast<std::size_t>(n) * m, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      gains_[static_cast<std::size_t>(i) * m + j] =
          ChannelGain(Distance(p.users[i], p.nodes[j].position),
                      p.radio.path_loss_gamma, p.radio.min_distance_m);
    }
  }
  candidates_.assign(n, {});
  for (int i = 0; i < n; ++i) candidates_[i] = CandidateNodes(*this, i, p.policy);
  layout_ = SlotLayout(n, m, p.num_channels, candidates_, p.nodes);
}

std::vector<int> CandidateNodes(const Scenario& scenario, int user,
                                AssociationPolicy policy) {
  std::vector<int> result;
  const int m = scenario.num_nodes();
  if (m == 0) return result;
  if (policy == AssociationPolicy::kNearest) {
    int best = 0;
    for (int j = 1; j < m; ++j) {
      if (scenario.gain(user, j) > scenario.gain(user, best)) best = j;
    }
    result.push_back(best);
    return result;
  }
  const RadioConfig& radio = scenario.radio();
  for (int j = 0; j < m; ++j) {
    const double sinr = radio.max_power_mw * scenario.gain(user, j) / radio.noise_mw;
    if (sinr >= radio.sinr_alpha) result.push_back(j);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<Point> NodePositions(NodeLayout layout) {
  if (layout == NodeLayout::kLiteral) {
    return {{50, 50}, {100, 50}, {50, 150}, {150, 150}};
  }
  return {{50, 50}, {150, 50}, {50, 150}, {150, 150}};
}

ScenarioSpec Scenario1Spec(int num_users, NodeLayout layout) {
  ScenarioSpec spec;
  spec.node_positions = NodePositions(layout);
  spec.num_users = num_users;
  return spec;
}

ScenarioSpec Scenario2Spec(int num_users, NodeLayout layout) {
  ScenarioSpec spec = Scenario1Spec(num_users, layout);
  spec.num_channels = 3;
  spec.min_channels_per_node = 3;
  spec.max_channels_per_node = 3;
  spec.radio.power_levels_q = 2;
  return spec;
}

Scenario SampleScenario(const ScenarioSpec& spec, std::uint64_t seed) {
  Require(spec.num_users >= 0, "user count must be >= 0");
  Require(!spec.capacity_choices_mbps.empty(),
          "capacity choice set must not be empty");
  Require(spec.num_channels >= 1, "need at least one channel");
  Require(spec.min_channels_per_node >= 1 &&
              spec.min_channels_per_node <= spec.max_channels_per_node &&
              spec.max_channels_per_node <= spec.num_channels,
          "channels-per-node range must lie within [1, |R|]");
  Require(spec.area_width_m > 0 && spec.area_height_m > 0,
          "area must be non-empty");

  std::mt19937_64 rng(seed);
  Scenario::Parts parts;
  parts.radio = spec.radio;
  parts.num_channels = spec.num_channels;
  parts.policy = spec.policy;
  parts.seed = seed;
  parts.backhaul_beta = spec.backhaul_beta;

  std::vector<int> all_channels(spec.num_channels);
  std::iota(all_channels.begin(), all_channels.end(), 0);
  std::uniform_int_distribution<int> subset_size(spec.min_channels_per_node,
                                                 spec.max_channels_per_node);
  std::uniform_int_distribution<std::size_t> capacity_pick(
      0, spec.capacity_choices_mbps.size() - 1);
  for (std::size_t j = 0; j < spec.node_positions.size(); ++j) {
    AccessNode node;
    node.position = spec.node_positions[j];
    node.cluster = static_cast<int>(j);
    const int k = subset_size(rng);
    std::vector<int> pool = all_channels;
    std::shuffle(pool.begin(), pool.end(), rng);
    node.channels.assign(pool.begin(), pool.begin() + k);
    std::sort(node.channels.begin(), node.channels.end());
    parts.nodes.push_back(std::move(node));
    parts.clusters.push_back(
        {static_cast<int>(j), spec.capacity_choices_mbps[capacity_pick(rng)]});
  }
  std::uniform_real_distribution<double> ux(0.0, spec.area_width_m);
  std::uniform_real_distribution<double> uy(0.0, spec.area_height_m);
  for (int i = 0; i < spec.num_users; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    parts.users.push_back({x, y});
  }
  return Scenario::Create(std::move(parts));
}

}  // namespace cellgame
