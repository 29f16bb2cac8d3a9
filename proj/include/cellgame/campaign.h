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

#ifndef CELLGAME_CAMPAIGN_H_
#define CELLGAME_CAMPAIGN_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellgame/evaluator.h"
#include "cellgame/metrics.h"
#include "cellgame/optimal.h"
#include "cellgame/scenario.h"

namespace cellgame {

enum class Preset { kScenario1, kScenario2 };

std::string_view ToString(Preset preset);
Preset ParsePreset(std::string_view text);
std::string_view ToString(GameKind game);        // "u" / "c"
GameKind ParseGameKind(std::string_view text);
std::string_view ToString(UtilityKind utility);  // "log" / "cap"
UtilityKind ParseUtilityKind(std::string_view text);

struct GameSetup {
  GameKind game = GameKind::kChannel;
  UtilityKind utility = UtilityKind::kLog;
  AssociationPolicy policy = AssociationPolicy::kAllInRange;
  bool operator==(const GameSetup&) const = default;
};

struct CampaignSpec {
  Preset preset = Preset::kScenario1;
  NodeLayout layout = NodeLayout::kEquispaced;
  // Overrides of the preset's |R| and |R_j| range.
  std::optional<int> num_channels;
  std::optional<int> min_channels_per_node;
  std::optional<int> max_channels_per_node;
  std::vector<int> user_counts = {4, 8, 12, 16, 20};
  std::vector<GameSetup> games = {GameSetup{}};
  int instances = 1;
  std::uint64_t base_seed = 1;
  bool compare_optimum = false;
  int max_rounds = 1000;
  int workers = 1;
  // When set, every instance plays this scenario instead of sampling one;
  // user_counts is ignored.
  std::optional<Scenario> fixed_scenario;
  SolverBudget budget;

  // Throws InvalidArgument.
  void Validate() const;
  // Sampling recipe for one user count, overrides applied.
  ScenarioSpec ScenarioFor(int num_users) const;
};

struct ResultRow {
  std::uint64_t seed = 0;
  int users = 0;
  GameSetup setup;
  double nu = 0.0;
  double total_capacity = 0.0;
  double blocking = 0.0;
  std::optional<double> jain;
  int rounds = 0;
  bool converged = false;
  std::optional<double> opt_nu;
  std::optional<double> gap;
  std::optional<bool> exact_match;
  std::string error;  // empty on success
};

// One row per user count x configuration x instance, in that nesting order.
// Instance k uses seed base_seed + k. Instances run on `workers` OpenMP
// threads; the rows do not depend on the worker count. A failing instance
// fills `error` and the campaign continues.
std::vector<ResultRow> RunCampaign(const CampaignSpec& spec);

struct CsvOptions {
  bool include_optimum = false;
  // Written as a leading "# ..." line when set.
  std::optional<std::string> header_comment;
};

void WriteCsv(std::ostream& out, const std::vector<ResultRow>& rows,
              const CsvOptions& options);

struct SummaryRow {
  int users = 0;
  GameSetup setup;
  int count = 0;   // rows without error
  int errors = 0;
  double mean_nu = 0.0;
  double mean_total_capacity = 0.0;
  double mean_blocking = 0.0;
  std::optional<double> mean_jain;  // over rows with a defined index
  double mean_rounds = 0.0;
  double converged_fraction = 0.0;
  std::optional<double> mean_opt_nu;
  std::optional<double> mean_gap;
  std::optional<double> exact_fraction;
};

struct CdfPoint {
  double value = 0.0;
  double probability = 0.0;  // fraction of samples <= value
};

struct CdfSeries {
  int users = 0;
  GameSetup setup;
  std::string metric;  // "nu", "total_capacity", "jain", "opt_nu"
  std::vector<CdfPoint> points;
};

// Groups by (users, configuration) in first-appearance order. Throws
// InvalidArgument on empty input.
std::vector<SummaryRow> Summarize(const std::vector<ResultRow>& rows);
std::vector<CdfSeries> EmpiricalCdfs(const std::vector<ResultRow>& rows);

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& summary);
void WriteCdfCsv(std::ostream& out, const std::vector<CdfSeries>& series);

}  // namespace cellgame

#endif  // CELLGAME_CAMPAIGN_H_
