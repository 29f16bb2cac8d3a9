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

#include "cellgame/optimal.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <span>

#include <omp.h>

#include "cellgame/backhaul.h"
#include "cellgame/errors.h"
#include "cellgame/evaluator.h"

namespace cellgame {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kPruneSlack = 1e-10;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Incumbent {
  bool valid = false;
  double nu = kNegInf;
  int power = 0;
  std::vector<std::uint8_t> levels;
};

// Higher NU wins; NU ties go to lower total power, then lexicographically
// smaller level vector.
bool Beats(double nu, int power, std::span<const std::uint8_t> levels,
           const Incumbent& best) {
  if (!best.valid) return true;
  if (nu > best.nu + kTieTolerance) return true;
  if (nu < best.nu - kTieTolerance) return false;
  if (power != best.power) return power < best.power;
  return std::lexicographical_compare(levels.begin(), levels.end(),
                                      best.levels.begin(), best.levels.end());
}

void Merge(const Incumbent& candidate, Incumbent& best) {
  if (candidate.valid &&
      Beats(candidate.nu, candidate.power, candidate.levels, best)) {
    best = candidate;
  }
}

// Shared bookkeeping for the two depth-first searches: current profile,
// node-channel occupancy and running power.
class SearchState {
 public:
  explicit SearchState(const Scenario& scenario)
      : scenario_(scenario),
        profile_(scenario),
        used_(static_cast<std::size_t>(scenario.num_nodes()) *
                  scenario.num_channels(),
              0) {}

  void LoadPrefix(const StrategyProfile& prefix, int first_free_user) {
    const SlotLayout& layout = scenario_.layout();
    for (int s = 0; s < layout.user_slot_begin(first_free_user); ++s) {
      if (prefix.level(s) > 0) Set(s, prefix.level(s));
    }
  }

  bool Free(int s) const { return used_[Key(s)] == 0; }
  void Set(int s, int level) {
    const int old = profile_.level(s);
    if (old == 0 && level > 0) ++used_[Key(s)];
    if (old > 0 && level == 0) --used_[Key(s)];
    power_ += level - old;
    profile_.set_level(s, level);
  }

  const StrategyProfile& profile() const { return profile_; }
  int power() const { return power_; }
  bool NodeChannelFree(int node, int channel) const {
    return used_[node * scenario_.num_channels() + channel] == 0;
  }

 private:
  int Key(int s) const {
    const Slot& slot = scenario_.layout().slot(s);
    return slot.node * scenario_.num_channels() + slot.channel;
  }

  const Scenario& scenario_;
  StrategyProfile profile_;
  std::vector<int> used_;
  int power_ = 0;
};

class BudgetGuard {
 public:
  BudgetGuard(const SolverBudget& budget, std::uint64_t limit,
              std::atomic<std::uint64_t>* shared)
      : budget_(budget), limit_(limit), shared_(shared) {}

  void Tick(const char* what) {
    ++count_;
    const std::uint64_t total =
        shared_ ? shared_->fetch_add(1, std::memory_order_relaxed) + 1 : count_;
    if (total > limit_) {
      throw BudgetExceeded(std::string(what) + " budget of " +
                           std::to_string(limit_) + " exceeded");
    }
    if ((count_ & 0xFFFF) == 0 && clock_.Seconds() > budget_.max_seconds) {
      throw BudgetExceeded("wall-time budget exceeded");
    }
  }
  std::uint64_t count() const { return count_; }
  double seconds() const { return clock_.Seconds(); }

 private:
  const SolverBudget& budget_;
  std::uint64_t limit_;
  std::atomic<std::uint64_t>* shared_;
  std::uint64_t count_ = 0;
  Stopwatch clock_;
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration

class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const Scenario& scenario, const SolverBudget& budget,
                   std::atomic<std::uint64_t>* shared_leaves = nullptr)
      : scenario_(scenario),
        state_(scenario),
        evaluator_(scenario),
        guard_(budget, budget.max_assignments, shared_leaves) {}

  void Run(const StrategyProfile& prefix, int first_free_user) {
    state_.LoadPrefix(prefix, first_free_user);
    User(first_free_user);
  }

  const Incumbent& best() const { return best_; }
  std::uint64_t leaves() const { return guard_.count(); }
  std::uint64_t infeasible() const { return infeasible_; }

 private:
  void User(int u) {
    if (u == scenario_.num_users()) {
      Leaf();
      return;
    }
    User(u + 1);  // unserved
    const SlotLayout& layout = scenario_.layout();
    for (int g = layout.user_group_begin(u); g < layout.user_group_end(u); ++g) {
      Channels(u, g, layout.group_begin(g), false);
    }
  }

  void Channels(int u, int g, int s, bool any) {
    if (s == scenario_.layout().group_end(g)) {
      if (any) User(u + 1);
      return;
    }
    Channels(u, g, s + 1, any);
    if (!state_.Free(s)) return;
    for (int level = 1; level <= scenario_.radio().power_levels_q; ++level) {
      state_.Set(s, level);
      Channels(u, g, s + 1, true);
    }
    state_.Set(s, 0);
  }

  void Leaf() {
    guard_.Tick("assignment");
    evaluator_.Evaluate(state_.profile().levels());
    if (!evaluator_.AllPoweredMeetAlpha()) {
      ++infeasible_;
      return;
    }
    const double nu = evaluator_.Utility(UtilityKind::kLog);
    if (Beats(nu, state_.power(), state_.profile().levels(), best_)) {
      best_.valid = true;
      best_.nu = nu;
      best_.power = state_.power();
      best_.levels.assign(state_.profile().levels().begin(),
                          state_.profile().levels().end());
    }
  }

  const Scenario& scenario_;
  SearchState state_;
  NetworkEvaluator evaluator_;
  BudgetGuard guard_;
  Incumbent best_;
  std::uint64_t infeasible_ = 0;
};

OptResult ToResult(const Scenario& scenario, const Incumbent& best) {
  OptResult result;
  StrategyProfile profile(scenario);
  if (best.valid) {
    for (int s = 0; s < profile.size(); ++s) profile.set_level(s, best.levels[s]);
    result.nu = best.nu;
  }
  result.assignment = Assignment::FromProfile(scenario, profile);
  return result;
}

// Every alternative of `user` given the fixed prefix, in enumeration order:
// unserved first, then per group the odometer over levels.
std::vector<StrategyProfile> UserAlternatives(const Scenario& scenario,
                                              const StrategyProfile& prefix,
                                              int user) {
  const SlotLayout& layout = scenario.layout();
  const int q = scenario.radio().power_levels_q;
  std::vector<StrategyProfile> out{prefix};
  for (int g = layout.user_group_begin(user); g < layout.user_group_end(user);
       ++g) {
    std::vector<int> free;
    for (int s = layout.group_begin(g); s < layout.group_end(g); ++s) {
      const Slot& slot = layout.slot(s);
      if (NodeChannelLevel(scenario, prefix, slot.node, slot.channel) == 0) {
        free.push_back(s);
      }
    }
    std::vector<int> digits(free.size(), 0);
    while (true) {
      int pos = static_cast<int>(digits.size()) - 1;
      while (pos >= 0 && digits[pos] == q) digits[pos--] = 0;
      if (pos < 0) break;
      ++digits[pos];
      StrategyProfile p = prefix;
      for (std::size_t k = 0; k < free.size(); ++k) p.set_level(free[k], digits[k]);
      out.push_back(std::move(p));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Branch and bound

class BranchAndBound {
 public:
  BranchAndBound(const Scenario& scenario, const SolverBudget& budget)
      : scenario_(scenario),
        state_(scenario),
        evaluator_(scenario),
        guard_(budget, budget.max_nodes, nullptr),
        serving_group_(scenario.num_users(), -1) {
    const RadioConfig& radio = scenario.radio();
    const int n = scenario.num_users();
    const int m = scenario.num_nodes();
    top_capacity_.assign(static_cast<std::size_t>(n) * m, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const double sinr =
            radio.max_power_mw * scenario.gain(i, j) / radio.noise_mw;
        top_capacity_[static_cast<std::size_t>(i) * m + j] = ChannelCapacity(
            sinr, evaluator_.table(), radio.channel_bandwidth_mhz);
      }
    }
    max_channel_capacity_ =
        radio.efficiency_steps.back() * radio.channel_bandwidth_mhz;
    node_order_.resize(n);
    for (int i = 0; i < n; ++i) {
      node_order_[i] = scenario.candidates(i);
      std::stable_sort(node_order_[i].begin(), node_order_[i].end(),
                       [&](int a, int b) {
                         return scenario.gain(i, a) > scenario.gain(i, b);
                       });
    }
    pool_.assign(scenario.num_clusters(), 0.0);
    free_count_.assign(m, 0);
  }

  void Load(const StrategyProfile& prefix, int first_free_user) {
    state_.LoadPrefix(prefix, first_free_user);
    for (int i = 0; i < first_free_user; ++i) {
      const std::vector<int> nodes = ServingNodes(scenario_, prefix, i);
      if (!nodes.empty()) {
        serving_group_[i] = scenario_.layout().GroupOf(i, nodes.front());
      }
    }
  }

  void Run(const StrategyProfile& prefix, int first_free_user) {
    Load(prefix, first_free_user);
    User(first_free_user);
  }

  // Bound for users [0, u) fixed, user u partially fixed up to slot s of
  // group g (g = -1: user u undecided too).
  double Bound(int u, int g, int s) {
    const Scenario& sc = scenario_;
    const SlotLayout& layout = sc.layout();
    const double beta = sc.backhaul_beta();
    evaluator_.Evaluate(state_.profile().levels());
    if (!evaluator_.AllPoweredMeetAlpha()) return kNegInf;

    std::fill(pool_.begin(), pool_.end(), 0.0);
    for (int j = 0; j < sc.num_nodes(); ++j) {
      int free = 0;
      for (int r : sc.nodes()[j].channels) free += state_.NodeChannelFree(j, r);
      free_count_[j] = free;
      pool_[sc.cluster_index(j)] += beta * free * max_channel_capacity_;
    }
    caps_.clear();
    for (int i = 0; i < u; ++i) {
      const int gi = serving_group_[i];
      if (gi < 0) continue;
      const int z = sc.cluster_index(layout.group_node(gi));
      const double access = beta * evaluator_.group_access()[gi];
      caps_.push_back(std::min(access, sc.clusters()[z].capacity_mbps));
      pool_[z] += access;
    }
    int first_open = u;
    if (g >= 0) {
      const int j = layout.group_node(g);
      const int z = sc.cluster_index(j);
      double remaining = 0.0;
      for (int t = s; t < layout.group_end(g); ++t) {
        if (state_.Free(t)) remaining += TopCapacity(u, j);
      }
      const double access = evaluator_.group_access()[g];
      caps_.push_back(std::min(beta * (access + remaining),
                               sc.clusters()[z].capacity_mbps));
      pool_[z] += beta * access;
      first_open = u + 1;
    }
    for (int i = first_open; i < sc.num_users(); ++i) {
      double best = 0.0;
      for (int j : sc.candidates(i)) {
        const double cap =
            std::min(sc.clusters()[sc.cluster_index(j)].capacity_mbps,
                     beta * free_count_[j] * TopCapacity(i, j));
        best = std::max(best, cap);
      }
      caps_.push_back(best);
    }
    double total_pool = 0.0;
    for (int z = 0; z < sc.num_clusters(); ++z) {
      total_pool += std::min(sc.clusters()[z].capacity_mbps, pool_[z]);
    }
    if (caps_.empty() || total_pool <= 0.0) return 0.0;
    shares_.resize(caps_.size());
    AllocateClusterInto(caps_, total_pool, shares_, order_);
    double bound = 0.0;
    for (double c : shares_) bound += std::log1p(c);
    return bound;
  }

  const Incumbent& best() const { return best_; }
  std::uint64_t nodes() const { return guard_.count(); }
  std::uint64_t pruned_by_bound() const { return pruned_by_bound_; }
  std::uint64_t pruned_infeasible() const { return pruned_infeasible_; }
  double seconds() const { return guard_.seconds(); }

 private:
  double TopCapacity(int user, int node) const {
    return top_capacity_[static_cast<std::size_t>(user) * scenario_.num_nodes() +
                         node];
  }

  bool Prune(int u, int g, int s) {
    const double bound = Bound(u, g, s);
    if (bound == kNegInf) {
      ++pruned_infeasible_;
      return true;
    }
    if (best_.valid && bound <= best_.nu + kPruneSlack) {
      ++pruned_by_bound_;
      return true;
    }
    return false;
  }

  void User(int u) {
    guard_.Tick("branch-and-bound node");
    if (u == scenario_.num_users()) {
      Leaf();
      return;
    }
    if (Prune(u, -1, -1)) return;
    const SlotLayout& layout = scenario_.layout();
    for (int j : node_order_[u]) {
      const int g = layout.GroupOf(u, j);
      serving_group_[u] = g;
      Channels(u, g, layout.group_begin(g), false);
    }
    serving_group_[u] = -1;
    User(u + 1);
  }

  void Channels(int u, int g, int s, bool any) {
    const SlotLayout& layout = scenario_.layout();
    if (s == layout.group_end(g)) {
      if (any) User(u + 1);
      return;
    }
    if (s != layout.group_begin(g)) {
      guard_.Tick("branch-and-bound node");
      if (Prune(u, g, s)) return;
    }
    if (state_.Free(s)) {
      for (int level = scenario_.radio().power_levels_q; level >= 1; --level) {
        state_.Set(s, level);
        Channels(u, g, s + 1, true);
      }
      state_.Set(s, 0);
    }
    Channels(u, g, s + 1, any);
  }

  void Leaf() {
    evaluator_.Evaluate(state_.profile().levels());
    if (!evaluator_.AllPoweredMeetAlpha()) {
      ++pruned_infeasible_;
      return;
    }
    const double nu = evaluator_.Utility(UtilityKind::kLog);
    if (Beats(nu, state_.power(), state_.profile().levels(), best_)) {
      best_.valid = true;
      best_.nu = nu;
      best_.power = state_.power();
      best_.levels.assign(state_.profile().levels().begin(),
                          state_.profile().levels().end());
    }
  }

  const Scenario& scenario_;
  SearchState state_;
  NetworkEvaluator evaluator_;
  BudgetGuard guard_;
  Incumbent best_;
  std::vector<int> serving_group_;
  std::vector<double> top_capacity_;
  double max_channel_capacity_ = 0.0;
  std::vector<std::vector<int>> node_order_;
  std::vector<double> pool_;
  std::vector<int> free_count_;
  std::vector<double> caps_;
  std::vector<double> shares_;
  std::vector<int> order_;
  std::uint64_t pruned_by_bound_ = 0;
  std::uint64_t pruned_infeasible_ = 0;
};

}  // namespace

Assignment Assignment::Empty(const Scenario& scenario) {
  const SlotLayout& layout = scenario.layout();
  return {std::vector<std::uint8_t>(layout.num_groups(), 0),
          std::vector<std::uint8_t>(layout.num_slots(), 0),
          std::vector<std::uint8_t>(layout.num_slots(), 0)};
}

Assignment Assignment::FromProfile(const Scenario& scenario,
                                   const StrategyProfile& profile) {
  const SlotLayout& layout = scenario.layout();
  Assignment a = Empty(scenario);
  for (int s = 0; s < layout.num_slots(); ++s) {
    a.level[s] = static_cast<std::uint8_t>(profile.level(s));
    a.channel[s] = profile.level(s) > 0;
    if (a.channel[s]) a.serve[layout.slot_group(s)] = 1;
  }
  return a;
}

StrategyProfile Assignment::ToProfile(const Scenario& scenario) const {
  StrategyProfile profile(scenario);
  for (int s = 0; s < profile.size(); ++s) profile.set_level(s, level[s]);
  return profile;
}

bool Feasible(const Assignment& a, const Scenario& scenario) {
  const SlotLayout& layout = scenario.layout();
  if (static_cast<int>(a.serve.size()) != layout.num_groups() ||
      static_cast<int>(a.channel.size()) != layout.num_slots() ||
      static_cast<int>(a.level.size()) != layout.num_slots()) {
    return false;
  }
  const int q = scenario.radio().power_levels_q;
  for (int i = 0; i < scenario.num_users(); ++i) {
    int served = 0;
    for (int g = layout.user_group_begin(i); g < layout.user_group_end(i); ++g) {
      if (a.serve[g] > 1) return false;
      served += a.serve[g];
    }
    if (served > 1) return false;  // one serving node
  }
  for (int s = 0; s < layout.num_slots(); ++s) {
    if (a.channel[s] > 1) return false;
    if (a.channel[s] > a.serve[layout.slot_group(s)]) return false;  // y <= x
    if (a.level[s] < a.channel[s] || a.level[s] > q * a.channel[s]) {
      return false;  // y <= q <= Q y
    }
  }
  for (int j = 0; j < scenario.num_nodes(); ++j) {
    for (int r : scenario.nodes()[j].channels) {
      int users = 0;
      for (int s : layout.SlotsOnNodeChannel(j, r)) users += a.channel[s];
      if (users > 1) return false;  // channel exclusivity
    }
  }
  const StrategyProfile profile = a.ToProfile(scenario);
  for (int s = 0; s < layout.num_slots(); ++s) {
    if (!a.channel[s]) continue;
    const Slot& slot = layout.slot(s);
    if (Sinr(profile, scenario, slot.user, slot.node, slot.channel) <
        scenario.radio().sinr_alpha) {
      return false;
    }
  }
  return true;
}

OptResult SolveExhaustiveFrom(const Scenario& scenario,
                              const StrategyProfile& prefix, int first_free_user,
                              const SolverBudget& budget) {
  Stopwatch clock;
  ExhaustiveSearch search(scenario, budget);
  search.Run(prefix, first_free_user);
  OptResult result = ToResult(scenario, search.best());
  result.explored = search.leaves();
  result.pruned_infeasible = search.infeasible();
  result.seconds = clock.Seconds();
  return result;
}

OptResult SolveExhaustive(const Scenario& scenario, const SolverBudget& budget) {
  return SolveExhaustiveFrom(scenario, StrategyProfile(scenario), 0, budget);
}

OptResult SolveExhaustiveParallel(const Scenario& scenario,
                                  const SolverBudget& budget) {
  if (scenario.num_users() == 0) return SolveExhaustive(scenario, budget);
  Stopwatch clock;
  const std::vector<StrategyProfile> tasks =
      UserAlternatives(scenario, StrategyProfile(scenario), 0);
  const int num_tasks = static_cast<int>(tasks.size());
  std::vector<Incumbent> bests(num_tasks);
  std::vector<std::uint64_t> leaves(num_tasks, 0);
  std::vector<std::uint64_t> infeasible(num_tasks, 0);
  std::atomic<std::uint64_t> shared_leaves{0};
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < num_tasks; ++t) {
    try {
      ExhaustiveSearch search(scenario, budget, &shared_leaves);
      search.Run(tasks[t], 1);
      bests[t] = search.best();
      leaves[t] = search.leaves();
      infeasible[t] = search.infeasible();
    } catch (...) {
#pragma omp critical(cellgame_exhaustive_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Incumbent best;
  for (const Incumbent& candidate : bests) Merge(candidate, best);
  OptResult result = ToResult(scenario, best);
  result.explored = std::accumulate(leaves.begin(), leaves.end(), std::uint64_t{0});
  result.pruned_infeasible =
      std::accumulate(infeasible.begin(), infeasible.end(), std::uint64_t{0});
  result.seconds = clock.Seconds();
  return result;
}

OptResult SolveBranchAndBound(const Scenario& scenario,
                              const SolverBudget& budget) {
  BranchAndBound search(scenario, budget);
  search.Run(StrategyProfile(scenario), 0);
  OptResult result = ToResult(scenario, search.best());
  result.explored = search.nodes();
  result.pruned_by_bound = search.pruned_by_bound();
  result.pruned_infeasible = search.pruned_infeasible();
  result.seconds = search.seconds();
  return result;
}

double BranchAndBoundUpperBound(const Scenario& scenario,
                                const StrategyProfile& prefix,
                                int first_free_user) {
  if (first_free_user < 0 || first_free_user > scenario.num_users()) {
    throw InvalidArgument("first_free_user out of range");
  }
  const SolverBudget budget;
  BranchAndBound search(scenario, budget);
  search.Load(prefix, first_free_user);
  return search.Bound(first_free_user, -1, -1);
}

OptimalityGap ComputeOptimalityGap(double game_nu, double opt_nu) {
  if (game_nu > opt_nu + 1e-9) {
    throw InvalidArgument("game NU exceeds the optimum: solver or feasibility bug");
  }
  OptimalityGap gap;
  gap.gap = std::max(0.0, (opt_nu - game_nu) / std::max(opt_nu, 1e-12));
  gap.exact = std::abs(opt_nu - game_nu) <= 1e-6;
  return gap;
}

}  // namespace cellgame
