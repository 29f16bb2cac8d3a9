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

#ifndef CELLGAME_SCENARIO_IO_H_
#define CELLGAME_SCENARIO_IO_H_

#include <string>

#include "cellgame/scenario.h"

namespace cellgame {

// JSON scenario document:
//
//   {
//     "seed": 7,
//     "radio": {"max_power_mw": 100, "power_levels_q": 4, "noise_mw": ...,
//               "path_loss_gamma": 4.5, "channel_bandwidth_mhz": 1,
//               "efficiency_steps": [1, 1.5, ...], "sinr_alpha": 1,
//               "min_distance_m": 1},
//     "channels": 8,                // optional, default max channel + 1
//     "association": "all",         // optional, "all" | "nearest"
//     "backhaul_beta": 1.0,         // optional
//     "clusters": [{"id": 0, "capacity_mbps": 20}, ...],
//     "nodes": [{"position": [50, 50], "channels": [0, 3], "cluster": 0}, ...],
//     "users": [{"position": [12.5, 80], "gains": [...]}, ...]
//   }
//
// Per-user "gains" is optional; when present it must match the gains implied
// by the positions. Schema violations throw SchemaError naming the field.
std::string ScenarioToJson(const Scenario& scenario);
Scenario ScenarioFromJson(const std::string& text);

Scenario LoadScenario(const std::string& path);
void SaveScenario(const Scenario& scenario, const std::string& path);

}  // namespace cellgame

#endif  // CELLGAME_SCENARIO_IO_H_
