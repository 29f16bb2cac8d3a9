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

#include "cellgame/cli.h"

#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cellgame/campaign.h"
#include "cellgame/errors.h"
#include "cellgame/scenario_io.h"

namespace cellgame {
namespace {

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

template <typename Writer>
void WriteFile(const std::string& path, Writer&& writer) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  writer(file);
  file.flush();
  if (!file) throw Error("failed writing '" + path + "'");
}

}  // namespace

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Runs seeded game campaigns and writes per-instance metrics."};
  app.name("cellgame");

  std::string preset = "scenario-1";
  std::vector<int> users = {4, 8, 12, 16, 20};
  std::vector<std::string> games = {"c"};
  std::vector<std::string> utilities = {"log"};
  std::vector<std::string> policies = {"all"};
  int instances = 1;
  std::uint64_t seed = 1;
  bool compare_opt = false;
  int max_rounds = 1000;
  int workers = 1;
  std::string out_path;
  bool no_timestamp = false;
  std::string scenario_file;
  int channels = 0;
  std::vector<int> node_channels;
  std::string layout = "equispaced";
  std::string summary_path;
  std::string cdf_path;
  std::uint64_t max_bb_nodes = 0;

  app.add_option("--preset", preset, "scenario-1 or scenario-2")
      ->check(CLI::IsMember({"scenario-1", "scenario-2"}));
  app.add_option("--users", users, "user count(s), comma separated")
      ->delimiter(',');
  app.add_option("--game", games, "u, c or a comma list")
      ->delimiter(',')
      ->check(CLI::IsMember({"u", "c"}));
  app.add_option("--utility", utilities, "log, cap or a comma list")
      ->delimiter(',')
      ->check(CLI::IsMember({"log", "cap"}));
  app.add_option("--policy", policies, "nearest, all or a comma list")
      ->delimiter(',')
      ->check(CLI::IsMember({"nearest", "all"}));
  app.add_option("--instances", instances, "instances per point")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "base seed; instance k uses seed + k");
  app.add_flag("--compare-opt", compare_opt,
               "solve the optimum and add opt_nu, gap, exact_match");
  app.add_option("--max-rounds", max_rounds)->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "parallel instances")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "CSV output path")->required();
  app.add_flag("--no-header-timestamp", no_timestamp,
               "omit the leading timestamp comment line");
  app.add_option("--scenario-file", scenario_file,
                 "play this scenario instead of sampling")
      ->check(CLI::ExistingFile);
  app.add_option("--channels", channels, "override |R|")
      ->check(CLI::PositiveNumber);
  app.add_option("--node-channels", node_channels,
                 "override the per-node channel count range: min,max")
      ->delimiter(',')
      ->expected(2);
  app.add_option("--layout", layout, "node preset: equispaced or literal")
      ->check(CLI::IsMember({"equispaced", "literal"}));
  app.add_option("--summary", summary_path, "write group means here");
  app.add_option("--cdf", cdf_path, "write empirical CDFs here");
  app.add_option("--max-bb-nodes", max_bb_nodes,
                 "branch-and-bound node budget per solve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  std::vector<ResultRow> rows;
  try {
    CampaignSpec spec;
    spec.preset = ParsePreset(preset);
    spec.layout =
        layout == "literal" ? NodeLayout::kLiteral : NodeLayout::kEquispaced;
    if (channels > 0) spec.num_channels = channels;
    if (!node_channels.empty()) {
      spec.min_channels_per_node = node_channels[0];
      spec.max_channels_per_node = node_channels[1];
    }
    spec.user_counts = users;
    spec.games.clear();
    for (const std::string& g : games) {
      for (const std::string& u : utilities) {
        for (const std::string& p : policies) {
          spec.games.push_back({ParseGameKind(g), ParseUtilityKind(u),
                                ParseAssociationPolicy(p)});
        }
      }
    }
    spec.instances = instances;
    spec.base_seed = seed;
    spec.compare_optimum = compare_opt;
    spec.max_rounds = max_rounds;
    spec.workers = workers;
    if (max_bb_nodes > 0) spec.budget.max_nodes = max_bb_nodes;
    if (!scenario_file.empty()) spec.fixed_scenario = LoadScenario(scenario_file);

    rows = RunCampaign(spec);

    CsvOptions options;
    options.include_optimum = compare_opt;
    if (!no_timestamp) {
      options.header_comment = "cellgame campaign " + UtcTimestamp();
    }
    WriteFile(out_path, [&](std::ostream& f) { WriteCsv(f, rows, options); });
    if (!summary_path.empty()) {
      WriteFile(summary_path,
                [&](std::ostream& f) { WriteSummaryCsv(f, Summarize(rows)); });
    }
    if (!cdf_path.empty()) {
      WriteFile(cdf_path,
                [&](std::ostream& f) { WriteCdfCsv(f, EmpiricalCdfs(rows)); });
    }
  } catch (const std::exception& e) {
    err << "cellgame: " << e.what() << '\n';
    return 2;
  }

  int failed = 0;
  for (const ResultRow& row : rows) {
    if (row.error.empty()) continue;
    if (failed++ == 0) err << "cellgame: seed " << row.seed << ": " << row.error << '\n';
  }
  if (failed > 0) {
    err << "cellgame: " << failed << " of " << rows.size()
        << " rows failed; see the error column\n";
    return 3;
  }
  out << "wrote " << rows.size() << " rows to " << out_path << '\n';
  return 0;
}

}  // namespace cellgame
