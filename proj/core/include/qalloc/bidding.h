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

// Agent bids and the auctioneer's edge costs.
//
// A bid is the planned travel cost of a task: agent -> pickup plus
// pickup -> drop-off, scaled by the behavior-tree factor k_bt (0 once the
// agent carries that task's item, 1 otherwise).
//
// A station accrues a queue penalty q * |queue| and every waiting task a
// waiting penalty tau * wait. Serving a task relieves both, so the edge cost
// the allocator minimises is
//
//   cost(agent, task) = bid - queue_penalty(station) - waiting_penalty(task)
//
// which steers agents to long queues and long-waiting tasks. With q = tau = 0
// it is the bare travel cost.

#ifndef QALLOC_BIDDING_H_
#define QALLOC_BIDDING_H_

#include <optional>
#include <string_view>
#include <vector>

#include "qalloc/path_planner.h"
#include "qalloc/world.h"

namespace qalloc {

enum class TauMode {
  kElapsedTime,  // tau * (clock - arrival_time)
  kTotalCount,   // tau * (number of open tasks), identical for every task
};

std::string_view ToString(TauMode mode);
std::optional<TauMode> ParseTauMode(std::string_view text);

struct PenaltyParams {
  double q = 10000.0;
  double tau = 100.0;
  TauMode tau_mode = TauMode::kElapsedTime;
};

struct Bid {
  AgentId agent;
  TaskId task;
  double c = 0.0;
  int k_bt = 1;
};

struct EdgeCost {
  AgentId agent;
  TaskId task;
  StationId station;
  double bid = 0.0;
  double queue_penalty = 0.0;
  double waiting_penalty = 0.0;
  double cost = 0.0;
  // k_bt == 0: the agent already carries this task's item.
  bool locked = false;

  friend bool operator==(const EdgeCost&, const EdgeCost&) = default;
};

// Nullopt when the pickup or drop-off cannot be reached from the agent.
std::optional<Bid> ComputeBid(const Agent& agent, const Task& task,
                              const PathCostTable& costs);
std::optional<Bid> ComputeBid(const Agent& agent, const Task& task,
                              const GridMap& map);

double QueuePenalty(const Station& station, const PenaltyParams& params);

// `open_tasks` is only read in TauMode::kTotalCount.
double WaitingPenalty(const Task& task, Tick clock, const PenaltyParams& params,
                      int open_tasks = 0);

// One edge per (agent, open task) pair with a bid, plus each carrier's
// locked edge to its own task (its only edge). Sorted by (agent, task).
std::vector<EdgeCost> AssembleEdges(const WorldState& world,
                                    const PenaltyParams& params,
                                    const PathCostTable& costs);

}  // namespace qalloc

#endif  // QALLOC_BIDDING_H_
