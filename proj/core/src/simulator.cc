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

#include "qalloc/simulator.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "qalloc/agent_trees.h"

namespace qalloc {
namespace {

std::string JoinProblems(const std::vector<std::string>& problems) {
  std::string out = "invalid scenario";
  for (const std::string& p : problems) out += "\n  " + p;
  return out;
}

}  // namespace

std::string_view ToString(EventKind kind) {
  switch (kind) {
    case EventKind::kTaskSpawned:
      return "TaskSpawned";
    case EventKind::kAuctionRun:
      return "AuctionRun";
    case EventKind::kTaskAssigned:
      return "TaskAssigned";
    case EventKind::kTaskReassigned:
      return "TaskReassigned";
    case EventKind::kTaskPickedUp:
      return "TaskPickedUp";
    case EventKind::kTaskDelivered:
      return "TaskDelivered";
    case EventKind::kAgentIdle:
      return "AgentIdle";
  }
  return "?";
}

std::optional<EventKind> ParseEventKind(std::string_view text) {
  for (EventKind k : {EventKind::kTaskSpawned, EventKind::kAuctionRun,
                      EventKind::kTaskAssigned, EventKind::kTaskReassigned,
                      EventKind::kTaskPickedUp, EventKind::kTaskDelivered,
                      EventKind::kAgentIdle}) {
    if (ToString(k) == text) return k;
  }
  return std::nullopt;
}

WorldState BuildWorld(const ScenarioConfig& config) {
  if (auto problems = ValidateScenario(config); !problems.empty()) {
    throw ConfigError(JoinProblems(problems));
  }
  WorldState world;
  world.map = BuildRiskLayer(ParseGridMap(config.map_text), config.risk);
  for (const StationConfig& s : config.stations) {
    AddStation(world, s.location, s.arrival_prob, s.capacity_m);
  }
  for (const AgentConfig& a : config.agents) AddAgent(world, a.home, a.speed);
  return world;
}

std::vector<SimEvent> ApplyAssignment(WorldState& world, const Assignment& assignment) {
  std::map<AgentId, TaskId> wanted;
  std::map<TaskId, AgentId> wanted_by;
  for (const auto& [agent, task] : assignment.pairs) {
    world.agent(agent);  // throws on unknown ids
    const Task& t = world.task(task);
    if (!wanted.emplace(agent, task).second || !wanted_by.emplace(task, agent).second) {
      throw LogicFault("assignment is not one-to-one");
    }
    if (!t.open() && t.assignee != agent) {
      std::ostringstream msg;
      msg << "assignment moves " << ToString(t.state) << " task " << task << " to agent "
          << agent;
      throw LogicFault(msg.str());
    }
  }
  for (const Agent& a : world.agents) {
    if (!a.carrying) continue;
    auto it = wanted.find(a.id);
    if (it == wanted.end() || it->second != *a.assigned_task) {
      std::ostringstream msg;
      msg << "assignment separates agent " << a.id << " from picked-up task "
          << *a.assigned_task;
      throw LogicFault(msg.str());
    }
  }

  std::map<TaskId, AgentId> previous_owner;
  std::vector<AgentId> released;
  for (Agent& a : world.agents) {
    if (a.carrying || !a.assigned_task) continue;
    auto it = wanted.find(a.id);
    if (it != wanted.end() && it->second == *a.assigned_task) continue;
    previous_owner[*a.assigned_task] = a.id;
    released.push_back(a.id);
    TransitionTask(world, *a.assigned_task, TaskState::kQueued);
  }

  std::vector<SimEvent> events;
  for (const auto& [agent_id, task] : wanted) {
    Agent& agent = world.agent(agent_id);
    if (agent.assigned_task == task) continue;
    TransitionTask(world, task, TaskState::kAssigned, agent_id);
    ResetAgentTree(agent, task);
    SimEvent e{world.clock, EventKind::kTaskAssigned, task, agent_id,
               world.task(task).station, std::nullopt};
    if (auto prev = previous_owner.find(task);
        prev != previous_owner.end() && prev->second != agent_id) {
      e.kind = EventKind::kTaskReassigned;
      e.previous_agent = prev->second;
    }
    events.push_back(e);
  }
  for (AgentId id : released) {
    Agent& agent = world.agent(id);
    if (agent.assigned_task) continue;
    ResetAgentTree(agent, std::nullopt);
    events.push_back(SimEvent{world.clock, EventKind::kAgentIdle, std::nullopt, id,
                              std::nullopt, std::nullopt});
  }
  return events;
}

Assignment RunAuction(const WorldState& world, const PenaltyParams& params,
                      const PathCostTable& costs, std::vector<EdgeCost>* edges_out) {
  std::vector<EdgeCost> edges = AssembleEdges(world, params, costs);
  std::map<StationId, int> caps;
  for (const Station& s : world.stations) caps[s.id] = s.capacity_m;
  const AssignmentProblem problem = AssignmentProblem::FromEdgeCosts(edges, caps);
  Assignment result = Solve(problem);
  if (edges_out) *edges_out = std::move(edges);
  return result;
}

Simulator::Simulator(ScenarioConfig config)
    : config_(std::move(config)), world_(BuildWorld(config_)) {
  costs_ = std::make_unique<PathCostTable>(world_.map);
  for (const Station& s : world_.stations) costs_->FieldFrom(s.location);
  for (const Cell& d : config_.dropoffs) costs_->FieldFrom(d);
  for (std::size_t i = 0; i < world_.stations.size(); ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(config_.rng_seed),
                      static_cast<std::uint32_t>(config_.rng_seed >> 32),
                      static_cast<std::uint32_t>(i)};
    station_rng_.emplace_back(seq);
  }
}

void Simulator::Abort(const SimTrace& trace, const std::string& why) const {
  std::ostringstream msg;
  msg << "tick " << world_.clock << ": " << why;
  throw SimulationError(msg.str(), trace.events);
}

SimTrace Simulator::Run() {
  SimTrace trace;
  trace.config = config_;
  trace.horizon = config_.horizon;
  trace.station_count = static_cast<int>(world_.stations.size());
  for (const Agent& a : world_.agents) {
    Emit(trace, SimEvent{0, EventKind::kAgentIdle, std::nullopt, a.id, std::nullopt,
                         std::nullopt});
  }
  for (Tick t = 0; t < config_.horizon; ++t) {
    world_.clock = t;
    Step(trace);
  }
  for (const Task& task : world_.tasks) {
    trace.tasks.push_back(
        TaskRecord{task.id, task.station, task.arrival_time, task.completion_time, task.state});
  }
  return trace;
}

void Simulator::Step(SimTrace& trace) {
  const Tick now = world_.clock;

  // 1. Arrivals.
  bool spawned = false;
  auto spawn = [&](std::size_t station) {
    std::uniform_int_distribution<std::size_t> pick(0, config_.dropoffs.size() - 1);
    const Cell dropoff = config_.dropoffs[pick(station_rng_[station])];
    const StationId sid(static_cast<std::int32_t>(station));
    const TaskId id = SpawnTask(world_, sid, dropoff);
    Emit(trace, SimEvent{now, EventKind::kTaskSpawned, id, std::nullopt, sid, std::nullopt});
    spawned = true;
  };
  if (now == 0) {
    for (std::size_t i = 0; i < config_.stations.size(); ++i) {
      for (int k = 0; k < config_.stations[i].initial_tasks; ++k) {
        if (UndeliveredCount(world_) < config_.global_task_cap) spawn(i);
      }
    }
  }
  for (std::size_t i = 0; i < world_.stations.size(); ++i) {
    std::bernoulli_distribution arrive(world_.stations[i].arrival_prob);
    const bool draw = arrive(station_rng_[i]);
    if (draw && UndeliveredCount(world_) < config_.global_task_cap) spawn(i);
  }

  // 2. Auction.
  if (spawned || idle_since_auction_) {
    idle_since_auction_ = false;
    if (!OpenTasks(world_).empty()) {
      Emit(trace, SimEvent{now, EventKind::kAuctionRun, std::nullopt, std::nullopt,
                           std::nullopt, std::nullopt});
      std::vector<EdgeCost> edges = AssembleEdges(world_, config_.penalty, *costs_);
      std::map<StationId, int> caps;
      for (const Station& s : world_.stations) caps[s.id] = s.capacity_m;
      const AssignmentProblem problem = AssignmentProblem::FromEdgeCosts(edges, caps);
      const Assignment assignment = Solve(problem);
      if (observer_) observer_(AuctionRecord{&world_, &edges, &problem, &assignment});
      try {
        for (const SimEvent& e : ApplyAssignment(world_, assignment)) Emit(trace, e);
      } catch (const LogicFault& e) {
        Abort(trace, e.what());
      }
    }
  }

  // 3. Behavior trees.
  for (Agent& agent : world_.agents) {
    AgentContext ctx{world_, agent.id, std::nullopt, std::nullopt};
    const bt::TickStatus status = TickAgent(ctx);
    if (ctx.picked_up) {
      Emit(trace, SimEvent{now, EventKind::kTaskPickedUp, ctx.picked_up, agent.id,
                           world_.task(*ctx.picked_up).station, std::nullopt});
    }
    if (ctx.delivered) {
      Emit(trace, SimEvent{now, EventKind::kTaskDelivered, ctx.delivered, agent.id,
                           world_.task(*ctx.delivered).station, std::nullopt});
      ResetAgentTree(agent, std::nullopt);
      Emit(trace, SimEvent{now, EventKind::kAgentIdle, std::nullopt, agent.id, std::nullopt,
                           std::nullopt});
      idle_since_auction_ = true;
    }
    if (status == bt::TickStatus::kFailure) {
      std::ostringstream msg;
      msg << "agent " << agent.id << " cannot reach its goal";
      Abort(trace, msg.str());
    }
  }

  // Samples and invariants.
  std::vector<int> lengths;
  for (const Station& s : world_.stations) lengths.push_back(static_cast<int>(s.queue.size()));
  trace.live_queue_lengths.push_back(std::move(lengths));
  if (auto violation = FindInvariantViolation(world_)) Abort(trace, *violation);
  if (UndeliveredCount(world_) > config_.global_task_cap) {
    Abort(trace, "undelivered tasks exceed the global cap");
  }
  const TaskCensus census = CountTasks(world_);
  if (census.total() != static_cast<int>(world_.tasks.size())) {
    Abort(trace, "task census does not add up");
  }
}

SimTrace RunScenario(const ScenarioConfig& config) {
  Simulator sim(config);
  return sim.Run();
}

}  // namespace qalloc
