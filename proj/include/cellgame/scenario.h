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

#ifndef CELLGAME_SCENARIO_H_
#define CELLGAME_SCENARIO_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cellgame {

// Radio constants shared network-wide. Units: mW for power, linear ratios for
// SINR and gain, MHz for bandwidth, meters for distance.
struct RadioConfig {
  double max_power_mw = 100.0;  // 20 dBm per channel
  int power_levels_q = 4;
  double noise_mw = 3.1622776601683794e-11;  // -105 dBm
  double path_loss_gamma = 4.5;
  double channel_bandwidth_mhz = 1.0;
  std::vector<double> efficiency_steps = {1.0, 1.5, 2.0, 3.0, 4.0, 4.5, 6.0};
  double sinr_alpha = 1.0;  // 0 dB
  double min_distance_m = 1.0;

  // Throws InvalidArgument when an invariant does not hold.
  void Validate() const;
  double LevelPowerMw() const { return max_power_mw / power_levels_q; }
};

double DbmToMw(double dbm);

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

double Distance(const Point& a, const Point& b);

struct AccessNode {
  Point position;
  std::vector<int> channels;  // R_j, ascending
  int cluster = 0;            // cluster id
  bool operator==(const AccessNode&) const = default;
};

struct Cluster {
  int id = 0;
  double capacity_mbps = 0.0;
  bool operator==(const Cluster&) const = default;
};

enum class AssociationPolicy { kNearest, kAllInRange };

std::string_view ToString(AssociationPolicy policy);
AssociationPolicy ParseAssociationPolicy(std::string_view text);

// max(distance, min_distance)^-gamma.
double ChannelGain(double distance_m, double gamma, double min_distance_m);

// Distance at which a lone full-power transmission reaches `sinr_target`.
double CoverageRange(const RadioConfig& radio, double sinr_target);

// One transmit opportunity (user, node, channel) with node in M_user and
// channel in R_node. Slots are the unit of a strategy profile.
struct Slot {
  int user;
  int node;
  int channel;
};

// Sparse index over the valid (user, node, channel) triples of a scenario.
// Slots are ordered user-major, then node (ascending within M_i), then
// channel (ascending within R_j); a "group" is the contiguous run of slots
// sharing (user, node).
class SlotLayout {
 public:
  SlotLayout() = default;
  SlotLayout(int num_users, int num_nodes, int num_channels,
             const std::vector<std::vector<int>>& candidates,
             const std::vector<AccessNode>& nodes);

  int num_slots() const { return static_cast<int>(slots_.size()); }
  int num_groups() const { return static_cast<int>(group_user_.size()); }
  const Slot& slot(int s) const { return slots_[s]; }
  std::span<const Slot> slots() const { return slots_; }

  // -1 when the triple is not a slot.
  int SlotOf(int user, int node, int channel) const {
    return slot_index_[(static_cast<std::size_t>(user) * num_nodes_ + node) *
                           num_channels_ +
                       channel];
  }
  // -1 when node is not a candidate of user.
  int GroupOf(int user, int node) const {
    return group_index_[static_cast<std::size_t>(user) * num_nodes_ + node];
  }
  int group_user(int g) const { return group_user_[g]; }
  int group_node(int g) const { return group_node_[g]; }
  int group_begin(int g) const { return group_begin_[g]; }
  int group_end(int g) const { return group_begin_[g + 1]; }
  int slot_group(int s) const { return slot_group_[s]; }
  // Groups of one user, in node order.
  int user_group_begin(int user) const { return user_group_begin_[user]; }
  int user_group_end(int user) const { return user_group_begin_[user + 1]; }
  int user_slot_begin(int user) const {
    return group_begin_[user_group_begin_[user]];
  }
  int user_slot_end(int user) const {
    return group_begin_[user_group_begin_[user + 1]];
  }
  // Slots competing for (node, channel), in user order.
  std::span<const int> SlotsOnNodeChannel(int node, int channel) const;

 private:
  int num_nodes_ = 0;
  int num_channels_ = 0;
  std::vector<Slot> slots_;
  std::vector<int> slot_index_;
  std::vector<int> group_index_;
  std::vector<int> group_user_;
  std::vector<int> group_node_;
  std::vector<int> group_begin_{0};
  std::vector<int> slot_group_;
  std::vector<int> user_group_begin_{0};
  std::vector<int> node_channel_begin_;
  std::vector<int> node_channel_slots_;
};

// Immutable world description. Construct through Scenario::Create, which
// validates every invariant and derives gains, candidate sets and the slot
// layout. Safe to share read-only across threads.
class Scenario {
 public:
  struct Parts {
    RadioConfig radio;
    std::vector<AccessNode> nodes;
    std::vector<Point> users;
    int num_channels = 0;
    std::vector<Cluster> clusters;
    AssociationPolicy policy = AssociationPolicy::kAllInRange;
    std::uint64_t seed = 0;
    double backhaul_beta = 1.0;
  };

  static Scenario Create(Parts parts);
  // As Create, but checks `gains` against the recomputed ones (relative
  // 1e-12) and throws InvalidArgument on mismatch.
  static Scenario CreateWithGains(Parts parts,
                                  const std::vector<std::vector<double>>& gains);

  // Same world with candidate sets recomputed for another policy.
  Scenario WithPolicy(AssociationPolicy policy) const;

  const Parts& parts() const { return parts_; }
  const RadioConfig& radio() const { return parts_.radio; }
  const std::vector<AccessNode>& nodes() const { return parts_.nodes; }
  const std::vector<Point>& users() const { return parts_.users; }
  const std::vector<Cluster>& clusters() const { return parts_.clusters; }
  int num_users() const { return static_cast<int>(parts_.users.size()); }
  int num_nodes() const { return static_cast<int>(parts_.nodes.size()); }
  int num_channels() const { return parts_.num_channels; }
  int num_clusters() const { return static_cast<int>(parts_.clusters.size()); }
  AssociationPolicy policy() const { return parts_.policy; }
  std::uint64_t seed() const { return parts_.seed; }
  double backhaul_beta() const { return parts_.backhaul_beta; }

  double gain(int user, int node) const {
    return gains_[static_cast<std::size_t>(user) * num_nodes() + node];
  }
  const std::vector<std::vector<int>>& candidates() const { return candidates_; }
  const std::vector<int>& candidates(int user) const { return candidates_[user]; }
  // Index into clusters() for a node.
  int cluster_index(int node) const { return node_cluster_index_[node]; }
  const SlotLayout& layout() const { return layout_; }

  bool operator==(const Scenario& other) const;

 private:
  Scenario() = default;
  void Derive();

  Parts parts_;
  std::vector<double> gains_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> node_cluster_index_;
  SlotLayout layout_;
};

// M_i for one user. Nearest returns the closest node (lowest index on ties);
// all-in-range returns every node whose interference-free full-power SINR
// reaches sinr_alpha. Empty when the user is out of coverage.
std::vector<int> CandidateNodes(const Scenario& scenario, int user,
                                AssociationPolicy policy);

enum class NodeLayout { kEquispaced, kLiteral };

// Recipe for random instances.
struct ScenarioSpec {
  double area_width_m = 200.0;
  double area_height_m = 200.0;
  std::vector<Point> node_positions;
  int num_users = 0;
  int num_channels = 8;
  int min_channels_per_node = 3;
  int max_channels_per_node = 7;
  std::vector<double> capacity_choices_mbps = {10.0, 20.0, 30.0};
  RadioConfig radio;
  AssociationPolicy policy = AssociationPolicy::kAllInRange;
  double backhaul_beta = 1.0;
};

std::vector<Point> NodePositions(NodeLayout layout);

// 4 nodes on a 200x200 m area, |R| = 8, 3..7 channels per node, Q = 4, one
// backhaul cluster per node with capacity in {10, 20, 30} Mbps.
ScenarioSpec Scenario1Spec(int num_users,
                           NodeLayout layout = NodeLayout::kEquispaced);
// As scenario 1 but |R| = 3 available at every node and Q = 2.
ScenarioSpec Scenario2Spec(int num_users,
                           NodeLayout layout = NodeLayout::kEquispaced);

// Deterministic for a fixed (spec, seed). Node channel subsets and cluster
// capacities are drawn before user positions, so instances that differ only
// in num_users share their first users.
Scenario SampleScenario(const ScenarioSpec& spec, std::uint64_t seed);

}  // namespace cellgame

#endif  // CELLGAME_SCENARIO_H_
