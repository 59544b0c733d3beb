// Copyright 2026 The qalloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qalloc/scenario.h"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "qalloc/grid_map.h"

namespace qalloc {
namespace {

// Preset floor: open 13x15 hall with a wall border. Stations sit on the west
// side three rows apart, drop-offs eight columns east of them, agents start
// midway. Every station-drop-off pair is eight grid steps apart, so trips
// take the same number of ticks whichever pair an agent serves.
constexpr int kPresetWidth = 13;
constexpr int kPresetHeight = 15;

ScenarioConfig BasePreset(std::string name) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.map_text = PresetMapText();
  c.risk = RiskParams{2, 1.0};
  c.stations = {
      StationConfig{{2, 4}, 0.0, 0, 1},
      StationConfig{{2, 7}, 0.0, 0, 1},
      StationConfig{{2, 10}, 0.0, 0, 1},
  };
  c.dropoffs = {{10, 4}, {10, 7}, {10, 10}};
  c.agents = {AgentConfig{{6, 5}, 2}, AgentConfig{{6, 9}, 2}};
  c.penalty = PenaltyParams{10000.0, 100.0, TauMode::kElapsedTime};
  c.global_task_cap = 40;
  c.horizon = 3000;
  c.rng_seed = 1;
  return c;
}

ScenarioConfig DynamicPreset(std::string name, double q, double tau) {
  ScenarioConfig c = BasePreset(std::move(name));
  const double probs[] = {0.05, 0.15, 0.15};
  for (std::size_t i = 0; i < c.stations.size(); ++i) c.stations[i].arrival_prob = probs[i];
  c.penalty.q = q;
  c.penalty.tau = tau;
  return c;
}

std::map<std::string, ScenarioConfig> MakePresets() {
  std::map<std::string, ScenarioConfig> presets;
  ScenarioConfig s1 = BasePreset("S1");
  for (auto& s : s1.stations) s.initial_tasks = 10;
  s1.horizon = 2000;
  presets.emplace("S1", s1);

  ScenarioConfig s2 = BasePreset("S2");
  s2.stations[0].initial_tasks = 10;
  s2.stations[1].initial_tasks = 10;
  s2.stations[2].initial_tasks = 15;
  s2.horizon = 2000;
  presets.emplace("S2", s2);

  presets.emplace("S3", DynamicPreset("S3", 10000.0, 0.0));
  presets.emplace("S4", DynamicPreset("S4", 10000.0, 100.0));
  presets.emplace("S5", DynamicPreset("S5", 0.0, 100.0));
  return presets;
}

[[noreturn]] void Fail(const std::string& field, const std::string& why) {
  throw ConfigError(field + ": " + why);
}

template <typename T>
T Get(const YAML::Node& node, const std::string& field) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    Fail(field, "has the wrong type");
  }
}

Cell GetCell(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() != 2) Fail(field, "expected [x, y]");
  return Cell{Get<int>(node[0], field + "[0]"), Get<int>(node[1], field + "[1]")};
}

void CheckKeys(const YAML::Node& node, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) Fail(where, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) Fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

YAML::Node CellNode(Cell c) {
  YAML::Node n(YAML::NodeType::Sequence);
  n.SetStyle(YAML::EmitterStyle::Flow);
  n.push_back(c.x);
  n.push_back(c.y);
  return n;
}

}  // namespace

std::string PresetMapText() {
  std::string text;
  for (int y = 0; y < kPresetHeight; ++y) {
    for (int x = 0; x < kPresetWidth; ++x) {
      const bool wall = x == 0 || y == 0 || x == kPresetWidth - 1 || y == kPresetHeight - 1;
      text.push_back(wall ? '#' : '.');
    }
    text.push_back('\n');
  }
  return text;
}

const std::map<std::string, ScenarioConfig>& ScenarioPresets() {
  static const std::map<std::string, ScenarioConfig> presets = MakePresets();
  return presets;
}

ScenarioConfig ParseScenarioYaml(const std::string& text,
                                 const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed YAML: ") + e.what());
  }
  CheckKeys(root, "", {"name", "map", "map_rows", "risk", "stations", "dropoffs",
                       "agents", "penalty", "global_task_cap", "horizon", "seed"});
  ScenarioConfig c;
  c.name = root["name"] ? Get<std::string>(root["name"], "name") : "custom";

  if (root["map"] && root["map_rows"]) Fail("map", "give either map or map_rows, not both");
  if (root["map"]) {
    std::filesystem::path path = Get<std::string>(root["map"], "map");
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) Fail("map", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    c.map_text = buf.str();
  } else if (root["map_rows"]) {
    if (!root["map_rows"].IsSequence()) Fail("map_rows", "expected a list of rows");
    for (std::size_t i = 0; i < root["map_rows"].size(); ++i) {
      c.map_text += Get<std::string>(root["map_rows"][i], "map_rows") + "\n";
    }
  } else {
    Fail("map", "missing (give map or map_rows)");
  }

  if (const YAML::Node risk = root["risk"]) {
    CheckKeys(risk, "risk", {"inflation_radius", "weight"});
    if (risk["inflation_radius"]) {
      c.risk.inflation_radius = Get<int>(risk["inflation_radius"], "risk.inflation_radius");
    }
    if (risk["weight"]) c.risk.weight = Get<double>(risk["weight"], "risk.weight");
  }

  const YAML::Node stations = root["stations"];
  if (!stations || !stations.IsSequence()) Fail("stations", "expected a list");
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const std::string where = "stations[" + std::to_string(i) + "]";
    const YAML::Node s = stations[i];
    CheckKeys(s, where, {"location", "arrival_prob", "initial_tasks", "capacity"});
    if (!s["location"]) Fail(where + ".location", "missing");
    StationConfig sc;
    sc.location = GetCell(s["location"], where + ".location");
    if (s["arrival_prob"]) sc.arrival_prob = Get<double>(s["arrival_prob"], where + ".arrival_prob");
    if (s["initial_tasks"]) sc.initial_tasks = Get<int>(s["initial_tasks"], where + ".initial_tasks");
    if (s["capacity"]) sc.capacity_m = Get<int>(s["capacity"], where + ".capacity");
    c.stations.push_back(sc);
  }

  const YAML::Node dropoffs = root["dropoffs"];
  if (!dropoffs || !dropoffs.IsSequence()) Fail("dropoffs", "expected a list of [x, y]");
  for (std::size_t i = 0; i < dropoffs.size(); ++i) {
    c.dropoffs.push_back(GetCell(dropoffs[i], "dropoffs[" + std::to_string(i) + "]"));
  }

  const YAML::Node agents = root["agents"];
  if (!agents || !agents.IsSequence()) Fail("agents", "expected a list");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    CheckKeys(agents[i], where, {"home", "speed"});
    if (!agents[i]["home"]) Fail(where + ".home", "missing");
    AgentConfig ac;
    ac.home = GetCell(agents[i]["home"], where + ".home");
    if (agents[i]["speed"]) ac.speed = Get<int>(agents[i]["speed"], where + ".speed");
    c.agents.push_back(ac);
  }

  if (const YAML::Node p = root["penalty"]) {
    CheckKeys(p, "penalty", {"q", "tau", "tau_mode"});
    if (p["q"]) c.penalty.q = Get<double>(p["q"], "penalty.q");
    if (p["tau"]) c.penalty.tau = Get<double>(p["tau"], "penalty.tau");
    if (p["tau_mode"]) {
      const auto mode = ParseTauMode(Get<std::string>(p["tau_mode"], "penalty.tau_mode"));
      if (!mode) Fail("penalty.tau_mode", "expected elapsed_time or total_count");
      c.penalty.tau_mode = *mode;
    }
  }
  if (root["global_task_cap"]) c.global_task_cap = Get<int>(root["global_task_cap"], "global_task_cap");
  if (root["horizon"]) c.horizon = Get<Tick>(root["horizon"], "horizon");
  if (root["seed"]) c.rng_seed = Get<std::uint64_t>(root["seed"], "seed");
  return c;
}

ScenarioConfig LoadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseScenarioYaml(buf.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string ScenarioToYaml(const ScenarioConfig& c) {
  YAML::Node root;
  root["name"] = c.name;
  std::istringstream rows(c.map_text);
  for (std::string row; std::getline(rows, row);) {
    if (!row.empty()) root["map_rows"].push_back(row);
  }
  root["risk"]["inflation_radius"] = c.risk.inflation_radius;
  root["risk"]["weight"] = c.risk.weight;
  for (const StationConfig& s : c.stations) {
    YAML::Node n;
    n["location"] = CellNode(s.location);
    n["arrival_prob"] = s.arrival_prob;
    n["initial_tasks"] = s.initial_tasks;
    n["capacity"] = s.capacity_m;
    root["stations"].push_back(n);
  }
  for (const Cell& d : c.dropoffs) root["dropoffs"].push_back(CellNode(d));
  for (const AgentConfig& a : c.agents) {
    YAML::Node n;
    n["home"] = CellNode(a.home);
    n["speed"] = a.speed;
    root["agents"].push_back(n);
  }
  root["penalty"]["q"] = c.penalty.q;
  root["penalty"]["tau"] = c.penalty.tau;
  root["penalty"]["tau_mode"] = std::string(ToString(c.penalty.tau_mode));
  root["global_task_cap"] = c.global_task_cap;
  root["horizon"] = c.horizon;
  root["seed"] = c.rng_seed;
  YAML::Emitter out;
  out << root;
  return std::string(out.c_str()) + "\n";
}

std::vector<std::string> ValidateScenario(const ScenarioConfig& c) {
  std::vector<std::string> problems;
  auto add = [&](std::string p) { problems.push_back(std::move(p)); };
  GridMap map;
  try {
    map = ParseGridMap(c.map_text);
  } catch (const std::exception& e) {
    add(std::string("map: ") + e.what());
    return problems;
  }
  auto describe = [](Cell cell) {
    std::ostringstream out;
    out << cell;
    return out.str();
  };
  auto check_cell = [&](Cell cell, const std::string& what) {
    if (map.IsOccupied(cell)) add(what + " " + describe(cell) + " is occupied or off the map");
  };

  if (c.stations.empty()) add("stations: at least one station is required");
  if (c.dropoffs.empty()) add("dropoffs: at least one drop-off cell is required");
  if (c.agents.empty()) add("agents: at least one agent is required");
  if (c.horizon <= 0) add("horizon: must be > 0");
  if (c.global_task_cap < 0) add("global_task_cap: must be >= 0");
  if (c.risk.inflation_radius < 0) add("risk.inflation_radius: must be >= 0");
  if (!(c.risk.weight >= 0.0)) add("risk.weight: must be >= 0");
  if (!(c.penalty.q >= 0.0)) add("penalty.q: must be >= 0");
  if (!(c.penalty.tau >= 0.0)) add("penalty.tau: must be >= 0");
  for (std::size_t i = 0; i < c.stations.size(); ++i) {
    const StationConfig& s = c.stations[i];
    const std::string where = "stations[" + std::to_string(i) + "]";
    check_cell(s.location, where + ".location");
    if (!(s.arrival_prob >= 0.0 && s.arrival_prob <= 1.0)) {
      add(where + ".arrival_prob: must lie in [0, 1]");
    }
    if (s.initial_tasks < 0) add(where + ".initial_tasks: must be >= 0");
    if (s.capacity_m < 1) add(where + ".capacity: must be >= 1");
  }
  for (std::size_t i = 0; i < c.dropoffs.size(); ++i) {
    check_cell(c.dropoffs[i], "dropoffs[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < c.agents.size(); ++i) {
    check_cell(c.agents[i].home, "agents[" + std::to_string(i) + "].home");
    if (c.agents[i].speed < 1) add("agents[" + std::to_string(i) + "].speed: must be >= 1");
  }
  if (!problems.empty()) return problems;

  // Everything must lie in one connected component.
  const GridMap risky = BuildRiskLayer(map, c.risk);
  const DistanceField field(risky, c.stations.front().location);
  auto check_reach = [&](Cell cell, const std::string& what) {
    if (!field.CostTo(cell)) {
      add(what + " " + describe(cell) + " cannot be reached from stations[0]");
    }
  };
  for (std::size_t i = 1; i < c.stations.size(); ++i) {
    check_reach(c.stations[i].location, "stations[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < c.dropoffs.size(); ++i) {
    check_reach(c.dropoffs[i], "dropoffs[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < c.agents.size(); ++i) {
    check_reach(c.agents[i].home, "agents[" + std::to_string(i) + "].home");
  }
  return problems;
}

}  // namespace qalloc
