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

// Discrete-time reactive loop. Each tick:
//   1. every station below the global cap may spawn a task (stations in
//      index order, one seeded stream per station);
//   2. if a task spawned or an agent went idle since the last auction and
//      open tasks exist, announce -> bid -> allocate and apply the result;
//   3. tick every agent's behavior tree once, in agent order.

#ifndef QALLOC_SIMULATOR_H_
#define QALLOC_SIMULATOR_H_

#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qalloc/assignment.h"
#include "qalloc/bidding.h"
#include "qalloc/path_planner.h"
#include "qalloc/scenario.h"
#include "qalloc/sim_trace.h"
#include "qalloc/world.h"

namespace qalloc {

// A run stopped on a broken invariant; `events` holds the log up to it.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, std::vector<SimEvent> events)
      : std::runtime_error(what), events_(std::move(events)) {}
  const std::vector<SimEvent>& events() const { return events_; }

 private:
  std::vector<SimEvent> events_;
};

// World for a config: map with its risk layer, stations and agents at home.
// Throws ConfigError if the config does not validate.
WorldState BuildWorld(const ScenarioConfig& config);

// Applies the allocator's pairs to the world at its current clock. Tasks
// whose agent changes go back to Queued or to their new agent (emitting
// TaskReassigned), agents left without a task head home (AgentIdle). An
// assignment that would separate a carrier from its picked-up task throws
// LogicFault.
std::vector<SimEvent> ApplyAssignment(WorldState& world, const Assignment& assignment);

// Auction inputs and outputs, handed to an observer after every auction.
struct AuctionRecord {
  const WorldState* world;  // state before the assignment is applied
  const std::vector<EdgeCost>* edges;
  const AssignmentProblem* problem;
  const Assignment* assignment;
};

// One full auction on the current world.
Assignment RunAuction(const WorldState& world, const PenaltyParams& params,
                      const PathCostTable& costs,
                      std::vector<EdgeCost>* edges_out = nullptr);

class Simulator {
 public:
  explicit Simulator(ScenarioConfig config);
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  void set_auction_observer(std::function<void(const AuctionRecord&)> fn) {
    observer_ = std::move(fn);
  }

  // Runs `config.horizon` ticks from the start; call once.
  SimTrace Run();

  const WorldState& world() const { return world_; }

 private:
  void Step(SimTrace& trace);
  void Emit(SimTrace& trace, SimEvent e) { trace.events.push_back(e); }
  [[noreturn]] void Abort(const SimTrace& trace, const std::string& why) const;

  ScenarioConfig config_;
  WorldState world_;
  std::unique_ptr<PathCostTable> costs_;
  std::vector<std::mt19937_64> station_rng_;
  bool idle_since_auction_ = true;
  std::function<void(const AuctionRecord&)> observer_;
};

SimTrace RunScenario(const ScenarioConfig& config);

}  // namespace qalloc

#endif  // QALLOC_SIMULATOR_H_
