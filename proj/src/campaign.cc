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

#include "cellgame/campaign.h"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <map>
#include <ostream>
#include <tuple>

#include <omp.h>

#include "cellgame/errors.h"
#include "cellgame/game.h"

namespace cellgame {
namespace {

std::string Num(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::string Quote(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

void WriteSetup(std::ostream& out, const GameSetup& setup) {
  out << ToString(setup.game) << ',' << ToString(setup.utility) << ','
      << ToString(setup.policy);
}

// Everything computed for one sampled scenario.
void RunInstance(const CampaignSpec& spec, const Scenario& base,
                 std::uint64_t seed, std::vector<ResultRow*>& rows) {
  std::map<AssociationPolicy, double> optimum;
  for (std::size_t c = 0; c < spec.games.size(); ++c) {
    ResultRow& row = *rows[c];
    row.seed = seed;
    row.users = base.num_users();
    row.setup = spec.games[c];
    try {
      const Scenario scenario =
          base.policy() == row.setup.policy ? base : base.WithPolicy(row.setup.policy);
      GameConfig config;
      config.game = row.setup.game;
      config.utility = row.setup.utility;
      config.max_rounds = spec.max_rounds;
      const GameOutcome outcome = Play(scenario, config);
      row.nu = outcome.metrics.nu;
      row.total_capacity = outcome.metrics.total_capacity_mbps;
      row.blocking = outcome.metrics.blocking_prob;
      row.jain = outcome.metrics.jain;
      row.rounds = outcome.rounds;
      row.converged = outcome.converged;
      if (spec.compare_optimum) {
        auto it = optimum.find(row.setup.policy);
        if (it == optimum.end()) {
          it = optimum
                   .emplace(row.setup.policy,
                            SolveBranchAndBound(scenario, spec.budget).nu)
                   .first;
        }
        const OptimalityGap gap = ComputeOptimalityGap(row.nu, it->second);
        row.opt_nu = it->second;
        row.gap = gap.gap;
        row.exact_match = gap.exact;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
}

}  // namespace

std::string_view ToString(Preset preset) {
  return preset == Preset::kScenario1 ? "scenario-1" : "scenario-2";
}

Preset ParsePreset(std::string_view text) {
  if (text == "scenario-1") return Preset::kScenario1;
  if (text == "scenario-2") return Preset::kScenario2;
  throw InvalidArgument("unknown preset '" + std::string(text) + "'");
}

std::string_view ToString(GameKind game) {
  return game == GameKind::kUser ? "u" : "c";
}

GameKind ParseGameKind(std::string_view text) {
  if (text == "u") return GameKind::kUser;
  if (text == "c") return GameKind::kChannel;
  throw InvalidArgument("unknown game '" + std::string(text) + "'");
}

std::string_view ToString(UtilityKind utility) {
  return utility == UtilityKind::kLog ? "log" : "cap";
}

UtilityKind ParseUtilityKind(std::string_view text) {
  if (text == "log") return UtilityKind::kLog;
  if (text == "cap") return UtilityKind::kCapacity;
  throw InvalidArgument("unknown utility '" + std::string(text) + "'");
}

void CampaignSpec::Validate() const {
  if (instances < 1) throw InvalidArgument("instances must be >= 1");
  if (max_rounds < 1) throw InvalidArgument("max_rounds must be >= 1");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  if (games.empty()) throw InvalidArgument("no game configuration");
  if (!fixed_scenario) {
    if (user_counts.empty()) throw InvalidArgument("no user count");
    for (int n : user_counts) {
      if (n < 0) throw InvalidArgument("user count must be >= 0");
    }
  }
  if (compare_optimum && !fixed_scenario && preset != Preset::kScenario2) {
    throw InvalidArgument("compare-optimum requires the scenario-2 preset");
  }
}

ScenarioSpec CampaignSpec::ScenarioFor(int num_users) const {
  ScenarioSpec s = preset == Preset::kScenario1
                       ? Scenario1Spec(num_users, layout)
                       : Scenario2Spec(num_users, layout);
  if (num_channels) {
    s.num_channels = *num_channels;
    s.min_channels_per_node = std::min(s.min_channels_per_node, *num_channels);
    s.max_channels_per_node = std::min(s.max_channels_per_node, *num_channels);
  }
  if (min_channels_per_node) s.min_channels_per_node = *min_channels_per_node;
  if (max_channels_per_node) s.max_channels_per_node = *max_channels_per_node;
  return s;
}

std::vector<ResultRow> RunCampaign(const CampaignSpec& spec) {
  spec.Validate();
  const std::vector<int> counts =
      spec.fixed_scenario ? std::vector<int>{spec.fixed_scenario->num_users()}
                          : spec.user_counts;
  const int num_configs = static_cast<int>(spec.games.size());
  const int num_items = static_cast<int>(counts.size()) * spec.instances;
  std::vector<ResultRow> rows(static_cast<std::size_t>(num_items) * num_configs);

#pragma omp parallel for schedule(dynamic, 1) num_threads(spec.workers)
  for (int item = 0; item < num_items; ++item) {
    const int u = item / spec.instances;
    const int k = item % spec.instances;
    const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(k);
    std::vector<ResultRow*> slots(num_configs);
    for (int c = 0; c < num_configs; ++c) {
      slots[c] = &rows[(static_cast<std::size_t>(u) * num_configs + c) *
                           spec.instances +
                       k];
    }
    try {
      const Scenario base = spec.fixed_scenario
                                ? *spec.fixed_scenario
                                : SampleScenario(spec.ScenarioFor(counts[u]), seed);
      RunInstance(spec, base, seed, slots);
    } catch (const std::exception& e) {
      for (int c = 0; c < num_configs; ++c) {
        slots[c]->seed = seed;
        slots[c]->users = counts[u];
        slots[c]->setup = spec.games[c];
        slots[c]->error = e.what();
      }
    }
  }
  return rows;
}

void WriteCsv(std::ostream& out, const std::vector<ResultRow>& rows,
              const CsvOptions& options) {
  if (options.header_comment) out << "# " << *options.header_comment << '\n';
  out << "seed,users,game,utility,policy,nu,total_capacity,blocking,jain,"
         "rounds,converged";
  if (options.include_optimum) out << ",opt_nu,gap,exact_match";
  out << ",error\n";
  for (const ResultRow& row : rows) {
    out << row.seed << ',' << row.users << ',';
    WriteSetup(out, row.setup);
    out << ',' << Num(row.nu) << ',' << Num(row.total_capacity) << ','
        << Num(row.blocking) << ',' << (row.jain ? Num(*row.jain) : "") << ','
        << row.rounds << ',' << (row.converged ? 1 : 0);
    if (options.include_optimum) {
      out << ',' << (row.opt_nu ? Num(*row.opt_nu) : "") << ','
          << (row.gap ? Num(*row.gap) : "") << ','
          << (row.exact_match ? (*row.exact_match ? "1" : "0") : "");
    }
    out << ',' << Quote(row.error) << '\n';
  }
}

std::vector<SummaryRow> Summarize(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw InvalidArgument("no rows to summarize");
  std::vector<SummaryRow> out;
  struct Sums {
    double jain = 0.0, opt = 0.0, gap = 0.0, exact = 0.0;
    int jain_n = 0, opt_n = 0;
  };
  std::vector<Sums> sums;
  for (const ResultRow& row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SummaryRow& s) {
      return s.users == row.users && s.setup == row.setup;
    });
    if (it == out.end()) {
      SummaryRow group;
      group.users = row.users;
      group.setup = row.setup;
      out.push_back(group);
      sums.emplace_back();
      it = out.end() - 1;
    }
    SummaryRow& s = *it;
    Sums& t = sums[it - out.begin()];
    if (!row.error.empty()) {
      ++s.errors;
      continue;
    }
    ++s.count;
    s.mean_nu += row.nu;
    s.mean_total_capacity += row.total_capacity;
    s.mean_blocking += row.blocking;
    s.mean_rounds += row.rounds;
    s.converged_fraction += row.converged;
    if (row.jain) {
      t.jain += *row.jain;
      ++t.jain_n;
    }
    if (row.opt_nu) {
      t.opt += *row.opt_nu;
      t.gap += row.gap.value_or(0.0);
      t.exact += row.exact_match.value_or(false);
      ++t.opt_n;
    }
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    SummaryRow& s = out[g];
    const Sums& t = sums[g];
    if (s.count > 0) {
      s.mean_nu /= s.count;
      s.mean_total_capacity /= s.count;
      s.mean_blocking /= s.count;
      s.mean_rounds /= s.count;
      s.converged_fraction /= s.count;
    }
    if (t.jain_n > 0) s.mean_jain = t.jain / t.jain_n;
    if (t.opt_n > 0) {
      s.mean_opt_nu = t.opt / t.opt_n;
      s.mean_gap = t.gap / t.opt_n;
      s.exact_fraction = t.exact / t.opt_n;
    }
  }
  return out;
}

std::vector<CdfSeries> EmpiricalCdfs(const std::vector<ResultRow>& rows) {
  std::vector<CdfSeries> out;
  for (const SummaryRow& group : Summarize(rows)) {
    std::map<std::string, std::vector<double>> samples;
    for (const ResultRow& row : rows) {
      if (row.users != group.users || !(row.setup == group.setup) ||
          !row.error.empty()) {
        continue;
      }
      samples["nu"].push_back(row.nu);
      samples["total_capacity"].push_back(row.total_capacity);
      if (row.jain) samples["jain"].push_back(*row.jain);
      if (row.opt_nu) samples["opt_nu"].push_back(*row.opt_nu);
    }
    for (const char* metric : {"nu", "total_capacity", "jain", "opt_nu"}) {
      std::vector<double>& values = samples[metric];
      if (values.empty()) continue;
      std::sort(values.begin(), values.end());
      CdfSeries series{group.users, group.setup, metric, {}};
      const double n = static_cast<double>(values.size());
      for (std::size_t k = 0; k < values.size(); ++k) {
        // Equal values collapse onto their last occurrence.
        if (k + 1 < values.size() && values[k + 1] == values[k]) continue;
        series.points.push_back({values[k], (k + 1) / n});
      }
      out.push_back(std::move(series));
    }
  }
  return out;
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "users,game,utility,policy,count,errors,mean_nu,mean_total_capacity,"
         "mean_blocking,mean_jain,mean_rounds,converged_fraction,mean_opt_nu,"
         "mean_gap,exact_fraction\n";
  auto opt = [](const std::optional<double>& v) { return v ? Num(*v) : ""; };
  for (const SummaryRow& s : summary) {
    out << s.users << ',';
    WriteSetup(out, s.setup);
    out << ',' << s.count << ',' << s.errors << ',' << Num(s.mean_nu) << ','
        << Num(s.mean_total_capacity) << ',' << Num(s.mean_blocking) << ','
        << opt(s.mean_jain) << ',' << Num(s.mean_rounds) << ','
        << Num(s.converged_fraction) << ',' << opt(s.mean_opt_nu) << ','
        << opt(s.mean_gap) << ',' << opt(s.exact_fraction) << '\n';
  }
}

void WriteCdfCsv(std::ostream& out, const std::vector<CdfSeries>& series) {
  out << "users,game,utility,policy,metric,value,probability\n";
  for (const CdfSeries& s : series) {
    for (const CdfPoint& p : s.points) {
      out << s.users << ',';
      WriteSetup(out, s.setup);
      out << ',' << s.metric << ',' << Num(p.value) << ',' << Num(p.probability)
          << '\n';
    }
  }
}

}  // namespace cellgame
