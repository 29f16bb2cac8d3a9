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

#include "cellgame/scenario_io.h"

#include <fstream>
#include <sstream>

#include "cellgame/errors.h"
#include "json.hpp"

namespace cellgame {
namespace {

using nlohmann::json;

// Field accessors that carry the JSON path into error messages.
class Reader {
 public:
  Reader(const json& value, std::string path)
      : value_(value), path_(std::move(path)) {}

  Reader Field(const std::string& key) const {
    if (!value_.is_object()) throw SchemaError(path_, "expected object");
    auto it = value_.find(key);
    if (it == value_.end()) {
      throw SchemaError(Join(key), "missing required field");
    }
    return Reader(*it, Join(key));
  }
  bool Has(const std::string& key) const {
    return value_.is_object() && value_.contains(key);
  }
  Reader At(std::size_t index) const {
    return Reader(value_.at(index), path_ + "[" + std::to_string(index) + "]");
  }
  std::size_t Size() const {
    if (!value_.is_array()) throw SchemaError(path_, "expected array");
    return value_.size();
  }
  double Number() const {
    if (!value_.is_number()) throw SchemaError(path_, "expected number");
    return value_.get<double>();
  }
  long long Integer() const {
    if (!value_.is_number_integer()) {
      throw SchemaError(path_, "expected integer");
    }
    return value_.get<long long>();
  }
  std::string String() const {
    if (!value_.is_string()) throw SchemaError(path_, "expected string");
    return value_.get<std::string>();
  }
  std::vector<double> Numbers() const {
    std::vector<double> out(Size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = At(k).Number();
    return out;
  }
  Point Position() const {
    if (Size() != 2) throw SchemaError(path_, "expected [x, y]");
    return {At(0).Number(), At(1).Number()};
  }
  const std::string& path() const { return path_; }

 private:
  std::string Join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& value_;
  std::string path_;
};

RadioConfig ReadRadio(const Reader& r) {
  RadioConfig radio;
  radio.max_power_mw = r.Field("max_power_mw").Number();
  radio.power_levels_q = static_cast<int>(r.Field("power_levels_q").Integer());
  radio.noise_mw = r.Field("noise_mw").Number();
  radio.path_loss_gamma = r.Field("path_loss_gamma").Number();
  radio.channel_bandwidth_mhz = r.Field("channel_bandwidth_mhz").Number();
  radio.efficiency_steps = r.Field("efficiency_steps").Numbers();
  radio.sinr_alpha = r.Field("sinr_alpha").Number();
  radio.min_distance_m = r.Field("min_distance_m").Number();
  try {
    radio.Validate();
  } catch (const InvalidArgument& e) {
    throw SchemaError(r.path(), e.what());
  }
  return radio;
}

}  // namespace

std::string ScenarioToJson(const Scenario& scenario) {
  const RadioConfig& radio = scenario.radio();
  json doc;
  doc["seed"] = scenario.seed();
  doc["radio"] = {{"max_power_mw", radio.max_power_mw},
                  {"power_levels_q", radio.power_levels_q},
                  {"noise_mw", radio.noise_mw},
                  {"path_loss_gamma", radio.path_loss_gamma},
                  {"channel_bandwidth_mhz", radio.channel_bandwidth_mhz},
                  {"efficiency_steps", radio.efficiency_steps},
                  {"sinr_alpha", radio.sinr_alpha},
                  {"min_distance_m", radio.min_distance_m}};
  doc["channels"] = scenario.num_channels();
  doc["association"] = std::string(ToString(scenario.policy()));
  doc["backhaul_beta"] = scenario.backhaul_beta();
  doc["clusters"] = json::array();
  for (const Cluster& c : scenario.clusters()) {
    doc["clusters"].push_back({{"id", c.id}, {"capacity_mbps", c.capacity_mbps}});
  }
  doc["nodes"] = json::array();
  for (const AccessNode& node : scenario.nodes()) {
    doc["nodes"].push_back({{"position", {node.position.x, node.position.y}},
                            {"channels", node.channels},
                            {"cluster", node.cluster}});
  }
  doc["users"] = json::array();
  for (int i = 0; i < scenario.num_users(); ++i) {
    std::vector<double> gains(scenario.num_nodes());
    for (int j = 0; j < scenario.num_nodes(); ++j) gains[j] = scenario.gain(i, j);
    const Point& p = scenario.users()[i];
    doc["users"].push_back({{"position", {p.x, p.y}}, {"gains", gains}});
  }
  return doc.dump(2) + "\n";
}

Scenario ScenarioFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("not valid JSON: ") + e.what());
  }
  const Reader root(doc, "");
  if (!doc.is_object()) throw SchemaError("$", "expected object");

  Scenario::Parts parts;
  const long long seed = root.Field("seed").Integer();
  if (seed < 0) throw SchemaError("seed", "must be non-negative");
  parts.seed = static_cast<std::uint64_t>(seed);
  parts.radio = ReadRadio(root.Field("radio"));

  const Reader clusters = root.Field("clusters");
  for (std::size_t z = 0; z < clusters.Size(); ++z) {
    const Reader c = clusters.At(z);
    Cluster cluster{static_cast<int>(c.Field("id").Integer()),
                    c.Field("capacity_mbps").Number()};
    if (!(cluster.capacity_mbps > 0)) {
      throw SchemaError(c.path() + ".capacity_mbps", "must be positive");
    }
    parts.clusters.push_back(cluster);
  }

  int max_channel = -1;
  const Reader nodes = root.Field("nodes");
  for (std::size_t j = 0; j < nodes.Size(); ++j) {
    const Reader n = nodes.At(j);
    AccessNode node;
    node.position = n.Field("position").Position();
    const Reader channels = n.Field("channels");
    for (std::size_t k = 0; k < channels.Size(); ++k) {
      const long long r = channels.At(k).Integer();
      if (r < 0) throw SchemaError(channels.At(k).path(), "must be >= 0");
      node.channels.push_back(static_cast<int>(r));
      max_channel = std::max(max_channel, static_cast<int>(r));
    }
    node.cluster = static_cast<int>(n.Field("cluster").Integer());
    parts.nodes.push_back(std::move(node));
  }
  parts.num_channels = root.Has("channels")
                           ? static_cast<int>(root.Field("channels").Integer())
                           : max_channel + 1;
  if (root.Has("association")) {
    try {
      parts.policy = ParseAssociationPolicy(root.Field("association").String());
    } catch (const InvalidArgument& e) {
      throw SchemaError("association", e.what());
    }
  }
  if (root.Has("backhaul_beta")) {
    parts.backhaul_beta = root.Field("backhaul_beta").Number();
  }

  std::vector<std::vector<double>> gains;
  bool has_gains = false;
  const Reader users = root.Field("users");
  for (std::size_t i = 0; i < users.Size(); ++i) {
    const Reader u = users.At(i);
    parts.users.push_back(u.Field("position").Position());
    if (u.Has("gains")) {
      has_gains = true;
      gains.push_back(u.Field("gains").Numbers());
    } else {
      gains.emplace_back();
    }
  }
  if (has_gains) {
    for (std::size_t i = 0; i < gains.size(); ++i) {
      if (gains[i].empty()) {
        throw SchemaError("users[" + std::to_string(i) + "].gains",
                          "gains must be given for every user or none");
      }
    }
    return Scenario::CreateWithGains(std::move(parts), gains);
  }
  return Scenario::Create(std::move(parts));
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ScenarioFromJson(buffer.str());
}

void SaveScenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write scenario file '" + path + "'");
  out << ScenarioToJson(scenario);
  if (!out) throw Error("failed writing scenario file '" + path + "'");
}

}  // namespace cellgame
