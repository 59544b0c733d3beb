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

#include "qalloc/bidding.h"

#include <algorithm>
#include <tuple>

namespace qalloc {
namespace {

template <typename CostFn>
std::optional<Bid> BidWith(const Agent& agent, const Task& task, CostFn cost) {
  Bid bid{agent.id, task.id, 0.0, 1};
  if (agent.carrying && agent.assigned_task == task.id) {
    bid.k_bt = 0;
    return bid;
  }
  const std::optional<double> to_pickup = cost(agent.position, task.pickup);
  if (!to_pickup) return std::nullopt;
  const std::optional<double> to_dropoff = cost(task.pickup, task.dropoff);
  if (!to_dropoff) return std::nullopt;
  bid.c = (*to_pickup + *to_dropoff) * bid.k_bt;
  return bid;
}

}  // namespace

std::string_view ToString(TauMode mode) {
  return mode == TauMode::kElapsedTime ? "elapsed_time" : "total_count";
}

std::optional<TauMode> ParseTauMode(std::string_view text) {
  if (text == "elapsed_time") return TauMode::kElapsedTime;
  if (text == "total_count") return TauMode::kTotalCount;
  return std::nullopt;
}

std::optional<Bid> ComputeBid(const Agent& agent, const Task& task,
                              const PathCostTable& costs) {
  return BidWith(agent, task, [&](Cell a, Cell b) { return costs.Cost(a, b); });
}

std::optional<Bid> ComputeBid(const Agent& agent, const Task& task,
                              const GridMap& map) {
  return BidWith(agent, task, [&](Cell a, Cell b) { return PathCost(map, a, b); });
}

double QueuePenalty(const Station& station, const PenaltyParams& params) {
  return params.q * static_cast<double>(station.queue.size());
}

double WaitingPenalty(const Task& task, Tick clock, const PenaltyParams& params,
                      int open_tasks) {
  if (params.tau_mode == TauMode::kTotalCount) {
    return params.tau * static_cast<double>(open_tasks);
  }
  return params.tau * static_cast<double>(clock - task.arrival_time);
}

std::vector<EdgeCost> AssembleEdges(const WorldState& world,
                                    const PenaltyParams& params,
                                    const PathCostTable& costs) {
  const std::vector<TaskId> open = OpenTasks(world);
  const int open_count = static_cast<int>(open.size());
  std::vector<EdgeCost> edges;

  auto emit = [&](const Agent& agent, const Task& task) {
    const std::optional<Bid> bid = ComputeBid(agent, task, costs);
    if (!bid) return;
    EdgeCost e;
    e.agent = agent.id;
    e.task = task.id;
    e.station = task.station;
    e.bid = bid->c;
    e.queue_penalty = QueuePenalty(world.station(task.station), params);
    e.waiting_penalty = WaitingPenalty(task, world.clock, params, open_count);
    e.cost = e.bid - e.queue_penalty - e.waiting_penalty;
    e.locked = bid->k_bt == 0;
    edges.push_back(e);
  };

  for (const Agent& agent : world.agents) {
    if (agent.carrying) {
      emit(agent, world.task(*agent.assigned_task));
      continue;
    }
    for (TaskId id : open) emit(agent, world.task(id));
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeCost& a, const EdgeCost& b) {
    return std::tie(a.agent, a.task) < std::tie(b.agent, b.task);
  });
  return edges;
}

}  // namespace qalloc
