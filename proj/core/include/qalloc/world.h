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

// World entities for the pick-up-and-deliver setting: picking stations with
// FIFO queues, tasks with an irreversible lifecycle, and the agent team.

#ifndef QALLOC_WORLD_H_
#define QALLOC_WORLD_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qalloc/grid_map.h"
#include "qalloc/types.h"

namespace qalloc {

// Raised when an operation would break a lifecycle or assignment invariant.
class LogicFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class TaskState { kQueued, kAssigned, kPickedUp, kDelivered };

std::string_view ToString(TaskState state);

struct Task {
  TaskId id;
  StationId station;
  Cell pickup;
  Cell dropoff;
  Tick arrival_time = 0;
  TaskState state = TaskState::kQueued;
  std::optional<Tick> completion_time;
  std::optional<AgentId> assignee;

  // Queued or Assigned: still waiting at its station and open for auction.
  bool open() const {
    return state == TaskState::kQueued || state == TaskState::kAssigned;
  }
};

struct Station {
  StationId id;
  Cell location;
  // Waiting tasks (Queued or Assigned) in arrival order.
  std::vector<TaskId> queue;
  double arrival_prob = 0.0;
  int capacity_m = 1;
};

enum class ActiveTree { kGoHome, kPickUpAndDeliver };

std::string_view ToString(ActiveTree tree);

struct AgentBTState {
  ActiveTree active_tree = ActiveTree::kGoHome;
  bool item_picked_up = false;
  bool item_delivered = false;
};

struct Agent {
  AgentId id;
  Cell position;
  Cell home;
  std::optional<TaskId> assigned_task;
  bool carrying = false;
  // Remaining cells to visit, front is the next step. Empty when no plan.
  std::vector<Cell> current_path;
  std::optional<Cell> path_goal;
  int speed = 2;
  AgentBTState bt;
};

struct WorldState {
  GridMap map;
  std::vector<Station> stations;
  std::vector<Task> tasks;  // indexed by TaskId::value()
  std::vector<Agent> agents;  // indexed by AgentId::value()
  Tick clock = 0;

  const Station& station(StationId id) const;
  Station& station(StationId id);
  const Task& task(TaskId id) const;
  Task& task(TaskId id);
  const Agent& agent(AgentId id) const;
  Agent& agent(AgentId id);

  bool HasStation(StationId id) const {
    return id.value() >= 0 &&
           static_cast<std::size_t>(id.value()) < stations.size();
  }
  bool HasTask(TaskId id) const {
    return id.value() >= 0 && static_cast<std::size_t>(id.value()) < tasks.size();
  }
};

// Adds a station at `location`; the cell must be free. Returns its id.
StationId AddStation(WorldState& world, Cell location, double arrival_prob,
                     int capacity_m);
AgentId AddAgent(WorldState& world, Cell home, int speed);

// Creates a Queued task at the station, stamped with the current clock and
// appended to the station queue. Throws std::invalid_argument for an unknown
// station or a drop-off cell that is occupied or off the map.
TaskId SpawnTask(WorldState& world, StationId station, Cell dropoff);

// Moves a task along Queued -> Assigned -> PickedUp -> Delivered, or back
// from Assigned to Queued. The Assigned edge needs `agent`, which must be
// free. Any other edge throws LogicFault.
void TransitionTask(WorldState& world, TaskId task, TaskState new_state,
                    std::optional<AgentId> agent = std::nullopt);

// Number of tasks at the station not yet picked up.
int QueueLength(const WorldState& world, StationId station);

// Tasks in Queued or Assigned state, ascending id.
std::vector<TaskId> OpenTasks(const WorldState& world);

// Tasks not yet delivered, including those being carried.
int UndeliveredCount(const WorldState& world);

struct TaskCensus {
  int queued = 0;
  int assigned = 0;
  int picked_up = 0;
  int delivered = 0;
  int total() const { return queued + assigned + picked_up + delivered; }
};

TaskCensus CountTasks(const WorldState& world);

// Checks registry references, queue membership, the agent<->task injection
// and carrier consistency. Returns a description of the first violation.
std::optional<std::string> FindInvariantViolation(const WorldState& world);

}  // namespace qalloc

#endif  // QALLOC_WORLD_H_
