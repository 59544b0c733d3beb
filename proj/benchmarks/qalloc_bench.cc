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

#include <benchmark/benchmark.h>

#include <random>

#include "qalloc/assignment.h"
#include "qalloc/path_planner.h"
#include "qalloc/scenario.h"
#include "qalloc/simulator.h"

namespace qalloc {
namespace {

// Dense random instance: every agent bids on every task.
AssignmentProblem RandomProblem(int agents, int tasks, int stations, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cost(-5000.0, 200.0);
  std::vector<EdgeCost> edges;
  for (int a = 0; a < agents; ++a) {
    for (int t = 0; t < tasks; ++t) {
      EdgeCost e;
      e.agent = AgentId(a);
      e.task = TaskId(t);
      e.station = StationId(t % stations);
      e.cost = cost(rng);
      e.bid = e.cost;
      edges.push_back(e);
    }
  }
  std::map<StationId, int> caps;
  for (int s = 0; s < stations; ++s) caps[StationId(s)] = 1;
  return AssignmentProblem::FromEdgeCosts(edges, caps);
}

void BM_Solve(benchmark::State& state) {
  const auto p = RandomProblem(static_cast<int>(state.range(0)),
                               static_cast<int>(state.range(1)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(Solve(p));
}
BENCHMARK(BM_Solve)->Args({2, 10})->Args({2, 40})->Args({4, 20})->Args({6, 30});

void BM_SolveByFlow(benchmark::State& state) {
  const auto p = RandomProblem(static_cast<int>(state.range(0)),
                               static_cast<int>(state.range(1)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(SolveByFlow(p));
}
BENCHMARK(BM_SolveByFlow)->Args({2, 10})->Args({2, 40})->Args({4, 20})->Args({6, 30});

void BM_Plan(benchmark::State& state) {
  const GridMap map = BuildRiskLayer(ParseGridMap(PresetMapText()), 2, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Plan(map, Cell{2, 4}, Cell{10, 10}));
  }
}
BENCHMARK(BM_Plan);

void BM_Scenario(benchmark::State& state) {
  ScenarioConfig c = ScenarioPresets().at("S4");
  c.horizon = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(RunScenario(c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Scenario)->Arg(500)->Arg(3000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qalloc

BENCHMARK_MAIN();
