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

#ifndef CELLGAME_OPTIMAL_H_
#define CELLGAME_OPTIMAL_H_

#include <cstdint>
#include <vector>

#include "cellgame/radio.h"
#include "cellgame/scenario.h"

namespace cellgame {

// Decision variables of the joint association / channel / power problem,
// indexed by the scenario's slot layout: `serve` per (user, node) group,
// `channel` and `level` per slot.
struct Assignment {
  std::vector<std::uint8_t> serve;    // x[i][j]
  std::vector<std::uint8_t> channel;  // y[i][j][r]
  std::vector<std::uint8_t> level;    // q[i][j][r]

  static Assignment Empty(const Scenario& scenario);
  // Canonical form: x = 1 exactly where the group has a powered channel.
  static Assignment FromProfile(const Scenario& scenario,
                                const StrategyProfile& profile);
  StrategyProfile ToProfile(const Scenario& scenario) const;

  bool operator==(const Assignment&) const = default;
};

// True iff: each user is served by at most one node; y <= x; each
// (node, channel) carries at most one user; y <= q <= Q*y; and every used
// channel reaches SINR >= alpha under the interference of all others.
bool Feasible(const Assignment& assignment, const Scenario& scenario);

struct SolverBudget {
  std::uint64_t max_assignments = 4'000'000'000ULL;  // exhaustive leaves
  std::uint64_t max_nodes = 2'000'000'000ULL;        // branch-and-bound nodes
  double max_seconds = 3600.0;
};

struct OptResult {
  double nu = 0.0;
  Assignment assignment;
  std::uint64_t explored = 0;  // leaves (exhaustive) or tree nodes (B&B)
  std::uint64_t pruned_by_bound = 0;
  std::uint64_t pruned_infeasible = 0;
  double seconds = 0.0;
};

// Enumerates every canonical feasible assignment and keeps the best NU; ties
// go to the lowest total power level, then the lexicographically smallest
// level vector. Throws BudgetExceeded.
OptResult SolveExhaustive(const Scenario& scenario,
                          const SolverBudget& budget = {});

// Same result as SolveExhaustive (value and tie-broken assignment), with the
// first user's alternatives explored as independent OpenMP tasks.
OptResult SolveExhaustiveParallel(const Scenario& scenario,
                                  const SolverBudget& budget = {});

// Best completion when users [0, first_free_user) are fixed as in `prefix`.
OptResult SolveExhaustiveFrom(const Scenario& scenario,
                              const StrategyProfile& prefix,
                              int first_free_user,
                              const SolverBudget& budget = {});

// Depth-first branch and bound over per-user node choice and per-channel
// level choice, pruning when the optimistic bound cannot beat the incumbent.
// Returns the exhaustive optimum value; on exact NU ties the returned
// assignment may differ from SolveExhaustive's.
OptResult SolveBranchAndBound(const Scenario& scenario,
                              const SolverBudget& budget = {});

// Optimistic NU over all completions of `prefix` with users
// [0, first_free_user) fixed. -infinity when a fixed channel already falls
// below alpha.
double BranchAndBoundUpperBound(const Scenario& scenario,
                                const StrategyProfile& prefix,
                                int first_free_user);

struct OptimalityGap {
  double gap = 0.0;
  bool exact = false;
};

// (opt - game) / max(opt, eps); exact when |opt - game| <= 1e-6.
// Throws InvalidArgument if game exceeds opt by more than 1e-9.
OptimalityGap ComputeOptimalityGap(double game_nu, double opt_nu);

}  // namespace cellgame

#endif  // CELLGAME_OPTIMAL_H_
