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

#ifndef QALLOC_SIM_TRACE_H_
#define QALLOC_SIM_TRACE_H_

#include <optional>
#include <string_view>
#include <vector>

#include "qalloc/scenario.h"
#include "qalloc/types.h"
#include "qalloc/world.h"

namespace qalloc {

enum class EventKind {
  kTaskSpawned,
  kAuctionRun,
  kTaskAssigned,
  kTaskReassigned,
  kTaskPickedUp,
  kTaskDelivered,
  kAgentIdle,
};

std::string_view ToString(EventKind kind);
std::optional<EventKind> ParseEventKind(std::string_view text);

struct SimEvent {
  Tick time = 0;
  EventKind kind = EventKind::kTaskSpawned;
  std::optional<TaskId> task;
  std::optional<AgentId> agent;
  std::optional<StationId> station;
  std::optional<AgentId> previous_agent;  // TaskReassigned only

  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct TaskRecord {
  TaskId id;
  StationId station;
  Tick arrival_time = 0;
  std::optional<Tick> completion_time;
  TaskState state = TaskState::kQueued;
};

// Everything a run produced. `live_queue_lengths[t][i]` is station i's
// queue length sampled by the simulator at the end of tick t, kept so
// replayed metrics can be checked against it.
struct SimTrace {
  ScenarioConfig config;
  std::vector<SimEvent> events;
  std::vector<std::vector<int>> live_queue_lengths;
  std::vector<TaskRecord> tasks;
  Tick horizon = 0;
  int station_count = 0;
};

}  // namespace qalloc

#endif  // QALLOC_SIM_TRACE_H_
