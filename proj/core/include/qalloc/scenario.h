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

#ifndef QALLOC_SCENARIO_H_
#define QALLOC_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalloc/bidding.h"
#include "qalloc/path_planner.h"
#include "qalloc/types.h"

namespace qalloc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StationConfig {
  Cell location;
  double arrival_prob = 0.0;  // chance of a new task per tick
  int initial_tasks = 0;
  int capacity_m = 1;
};

struct AgentConfig {
  Cell home;
  int speed = 2;  // cells per tick
};

struct ScenarioConfig {
  std::string name;
  std::string map_text;  // '#' occupied, '.' free, one row per line
  RiskParams risk;
  std::vector<StationConfig> stations;
  std::vector<Cell> dropoffs;
  std::vector<AgentConfig> agents;
  PenaltyParams penalty;
  int global_task_cap = 40;
  Tick horizon = 3000;
  std::uint64_t rng_seed = 1;
};

// The five evaluation scenarios, keyed "S1".."S5": three stations sharing
// three drop-off cells, two agents, m_i = 1.
//   S1  10/10/10 tasks at start, no arrivals
//   S2  10/10/15 tasks at start, no arrivals
//   S3  arrivals 5%/15%/15% per tick, cap 40, tau = 0
//   S4  as S3 with q = 10000, tau = 100
//   S5  as S3 with q = 0, tau = 100
const std::map<std::string, ScenarioConfig>& ScenarioPresets();

// Text of the warehouse floor shared by the presets.
std::string PresetMapText();

// YAML scenario file. A `map` path is resolved against `base_dir`;
// `map_rows` gives the grid inline. Throws ConfigError naming the field.
ScenarioConfig ParseScenarioYaml(const std::string& text,
                                 const std::filesystem::path& base_dir = {});
ScenarioConfig LoadScenarioFile(const std::filesystem::path& path);

// Serialises a config back to YAML (map inlined), readable by
// ParseScenarioYaml.
std::string ScenarioToYaml(const ScenarioConfig& config);

// Every problem found, empty when the config can run. Besides ranges this
// checks that special cells are free and that every station, drop-off and
// home can reach the others.
std::vector<std::string> ValidateScenario(const ScenarioConfig& config);

}  // namespace qalloc

#endif  // QALLOC_SCENARIO_H_
