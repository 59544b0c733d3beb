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

#include "qalloc/world.h"

#include <algorithm>
#include <sstream>

namespace qalloc {
namespace {

template <typename Id>
std::string Describe(std::string_view what, Id id) {
  std::ostringstream out;
  out << "unknown " << what << " id " << id;
  return out.str();
}

template <typename T, typename Id>
T& Lookup(std::vector<T>& items, Id id, std::string_view what) {
  if (id.value() < 0 || static_cast<std::size_t>(id.value()) >= items.size()) {
    throw std::out_of_range(Describe(what, id));
  }
  return items[static_cast<std::size_t>(id.value())];
}

void EraseFromQueue(Station& station, TaskId task) {
  auto it = std::find(station.queue.begin(), station.queue.end(), task);
  if (it != station.queue.end()) station.queue.erase(it);
}

[[noreturn]] void IllegalTransition(const Task& task, TaskState to) {
  std::ostringstream msg;
  msg << "illegal transition for task " << task.id << ": "
      << ToString(task.state) << " -> " << ToString(to);
  throw LogicFault(msg.str());
}

}  // namespace

std::string_view ToString(TaskState state) {
  switch (state) {
    case TaskState::kQueued:
      return "Queued";
    case TaskState::kAssigned:
      return "Assigned";
    case TaskState::kPickedUp:
      return "PickedUp";
    case TaskState::kDelivered:
      return "Delivered";
  }
  return "?";
}

std::string_view ToString(ActiveTree tree) {
  return tree == ActiveTree::kGoHome ? "GoHome" : "PickUpAndDeliver";
}

const Station& WorldState::station(StationId id) const {
  return Lookup(const_cast<std::vector<Station>&>(stations), id, "station");
}
Station& WorldState::station(StationId id) {
  return Lookup(stations, id, "station");
}
const Task& WorldState::task(TaskId id) const {
  return Lookup(const_cast<std::vector<Task>&>(tasks), id, "task");
}
Task& WorldState::task(TaskId id) { return Lookup(tasks, id, "task"); }
const Agent& WorldState::agent(AgentId id) const {
  return Lookup(const_cast<std::vector<Agent>&>(agents), id, "agent");
}
Agent& WorldState::agent(AgentId id) { return Lookup(agents, id, "agent"); }

StationId AddStation(WorldState& world, Cell location, double arrival_prob,
                     int capacity_m) {
  if (world.map.IsOccupied(location)) {
    std::ostringstream msg;
    msg << "station cell " << location << " is occupied or off the map";
    throw std::invalid_argument(msg.str());
  }
  if (capacity_m < 1) throw std::invalid_argument("station capacity must be >= 1");
  if (!(arrival_prob >= 0.0 && arrival_prob <= 1.0)) {
    throw std::invalid_argument("arrival probability must lie in [0, 1]");
  }
  const StationId id(static_cast<std::int32_t>(world.stations.size()));
  world.stations.push_back(Station{id, location, {}, arrival_prob, capacity_m});
  return id;
}

AgentId AddAgent(WorldState& world, Cell home, int speed) {
  if (world.map.IsOccupied(home)) {
    std::ostringstream msg;
    msg << "agent home " << home << " is occupied or off the map";
    throw std::invalid_argument(msg.str());
  }
  if (speed < 1) throw std::invalid_argument("agent speed must be >= 1");
  const AgentId id(static_cast<std::int32_t>(world.agents.size()));
  Agent agent;
  agent.id = id;
  agent.position = home;
  agent.home = home;
  agent.speed = speed;
  world.agents.push_back(std::move(agent));
  return id;
}

TaskId SpawnTask(WorldState& world, StationId station, Cell dropoff) {
  if (!world.HasStation(station)) {
    throw std::invalid_argument(Describe("station", station));
  }
  if (world.map.IsOccupied(dropoff)) {
    std::ostringstream msg;
    msg << "drop-off cell " << dropoff << " is occupied or off the map";
    throw std::invalid_argument(msg.str());
  }
  Station& s = world.station(station);
  const TaskId id(static_cast<std::int32_t>(world.tasks.size()));
  Task task;
  task.id = id;
  task.station = station;
  task.pickup = s.location;
  task.dropoff = dropoff;
  task.arrival_time = world.clock;
  world.tasks.push_back(task);
  s.queue.push_back(id);
  return id;
}

void TransitionTask(WorldState& world, TaskId id, TaskState new_state,
                    std::optional<AgentId> agent_id) {
  Task& task = world.task(id);
  switch (new_state) {
    case TaskState::kAssigned: {
      if (task.state != TaskState::kQueued) IllegalTransition(task, new_state);
      if (!agent_id) throw LogicFault("assigning a task requires an agent");
      Agent& agent = world.agent(*agent_id);
      if (agent.assigned_task) {
        std::ostringstream msg;
        msg << "agent " << agent.id << " already holds task "
            << *agent.assigned_task;
        throw LogicFault(msg.str());
      }
      agent.assigned_task = id;
      task.assignee = agent.id;
      break;
    }
    case TaskState::kQueued: {
      if (task.state != TaskState::kAssigned) IllegalTransition(task, new_state);
      if (task.assignee) world.agent(*task.assignee).assigned_task.reset();
      task.assignee.reset();
      break;
    }
    case TaskState::kPickedUp: {
      if (task.state != TaskState::kAssigned) IllegalTransition(task, new_state);
      world.agent(*task.assignee).carrying = true;
      EraseFromQueue(world.station(task.station), id);
      break;
    }
    case TaskState::kDelivered: {
      if (task.state != TaskState::kPickedUp) IllegalTransition(task, new_state);
      Agent& agent = world.agent(*task.assignee);
      agent.carrying = false;
      agent.assigned_task.reset();
      task.assignee.reset();
      task.completion_time = world.clock;
      break;
    }
  }
  task.state = new_state;
}

int QueueLength(const WorldState& world, StationId station) {
  if (!world.HasStation(station)) {
    throw std::invalid_argument(Describe("station", station));
  }
  return static_cast<int>(world.station(station).queue.size());
}

std::vector<TaskId> OpenTasks(const WorldState& world) {
  std::vector<TaskId> open;
  for (const Task& t : world.tasks) {
    if (t.open()) open.push_back(t.id);
  }
  return open;
}

int UndeliveredCount(const WorldState& world) {
  return static_cast<int>(std::count_if(
      world.tasks.begin(), world.tasks.end(),
      [](const Task& t) { return t.state != TaskState::kDelivered; }));
}

TaskCensus CountTasks(const WorldState& world) {
  TaskCensus census;
  for (const Task& t : world.tasks) {
    switch (t.state) {
      case TaskState::kQueued:
        ++census.queued;
        break;
      case TaskState::kAssigned:
        ++census.assigned;
        break;
      case TaskState::kPickedUp:
        ++census.picked_up;
        break;
      case TaskState::kDelivered:
        ++census.delivered;
        break;
    }
  }
  return census;
}

std::optional<std::string> FindInvariantViolation(const WorldState& world) {
  std::ostringstream msg;
  std::size_t queued_total = 0;
  for (const Station& s : world.stations) {
    for (TaskId id : s.queue) {
      if (!world.HasTask(id)) {
        msg << "station " << s.id << " queue holds unknown task " << id;
        return msg.str();
      }
      const Task& t = world.task(id);
      if (!t.open() || t.station != s.id) {
        msg << "station " << s.id << " queue holds task " << id << " in state "
            << ToString(t.state);
        return msg.str();
      }
    }
    queued_total += s.queue.size();
  }
  std::size_t open_total = 0;
  for (const Task& t : world.tasks) {
    if (t.open()) ++open_total;
    const bool needs_agent =
        t.state == TaskState::kAssigned || t.state == TaskState::kPickedUp;
    if (needs_agent != t.assignee.has_value()) {
      msg << "task " << t.id << " in state " << ToString(t.state)
          << (needs_agent ? " has no assignee" : " has an assignee");
      return msg.str();
    }
    if (t.completion_time.has_value() != (t.state == TaskState::kDelivered)) {
      msg << "task " << t.id << " completion time disagrees with its state";
      return msg.str();
    }
    if (t.completion_time && *t.completion_time < t.arrival_time) {
      msg << "task " << t.id << " completed before it arrived";
      return msg.str();
    }
    if (t.assignee) {
      if (static_cast<std::size_t>(t.assignee->value()) >= world.agents.size()) {
        msg << "task " << t.id << " assigned to unknown agent " << *t.assignee;
        return msg.str();
      }
      const Agent& a = world.agent(*t.assignee);
      if (a.assigned_task != t.id) {
        msg << "task " << t.id << " names agent " << a.id
            << " which does not hold it";
        return msg.str();
      }
    }
  }
  if (open_total != queued_total) {
    msg << "queues hold " << queued_total << " tasks but " << open_total
        << " are open";
    return msg.str();
  }
  for (const Agent& a : world.agents) {
    if (a.assigned_task) {
      if (!world.HasTask(*a.assigned_task)) {
        msg << "agent " << a.id << " holds unknown task " << *a.assigned_task;
        return msg.str();
      }
      const Task& t = world.task(*a.assigned_task);
      if (t.assignee != a.id) {
        msg << "agent " << a.id << " holds task " << t.id
            << " which names another assignee";
        return msg.str();
      }
    }
    if (a.carrying && (!a.assigned_task ||
                       world.task(*a.assigned_task).state != TaskState::kPickedUp)) {
      msg << "agent " << a.id << " is carrying without a picked-up task";
      return msg.str();
    }
  }
  return std::nullopt;
}

}  // namespace qalloc
