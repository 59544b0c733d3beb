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

// The allocation stage: a bipartite agent/task profit instance with
//   - at most one task per agent,
//   - at most one agent per task,
//   - at most m_i assigned tasks drawn from station i's queue.
// Locked tasks (already picked up) are no longer in any queue and do not
// count against their station's m_i.
//
// Solutions are ranked by (number of pairs, total profit), both maximised
// in that order, so the allocator first assigns as many tasks as the
// constraints allow and then takes the most profitable such matching. Ties
// go to the lexicographically smallest sorted (agent, task) pair list.
//
// Profits are fixed-point integers (kProfitScale units per cost unit) so
// optimality comparisons are exact.

#ifndef QALLOC_ASSIGNMENT_H_
#define QALLOC_ASSIGNMENT_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "qalloc/bidding.h"
#include "qalloc/types.h"

namespace qalloc {

using Profit = std::int64_t;
inline constexpr Profit kProfitScale = 1'000'000;

// Rounds a cost to the fixed-point grid.
Profit ToFixedPoint(double cost);

struct ProblemTask {
  TaskId task;
  StationId station;
  bool locked = false;
};

struct ProblemEdge {
  AgentId agent;
  TaskId task;
  Profit profit = 0;
  double cost = 0.0;
};

// Converts edge costs to order-reversing profits rho = B - C with
// B = 1 + max C (fixed point), so every profit is at least one unit.
std::vector<ProblemEdge> ToProfits(const std::vector<EdgeCost>& edges);

class AssignmentProblem {
 public:
  AssignmentProblem() = default;

  // Throws std::invalid_argument on duplicate agents/tasks/edges, edges to
  // unknown endpoints, non-positive profits or caps below 1. Stations with
  // capped tasks but no entry in `caps` default to m_i = 1.
  AssignmentProblem(std::vector<AgentId> agents, std::vector<ProblemTask> tasks,
                    std::vector<ProblemEdge> edges,
                    std::map<StationId, int> caps);

  // Agents and tasks are taken from the edges.
  static AssignmentProblem FromEdgeCosts(const std::vector<EdgeCost>& edges,
                                         std::map<StationId, int> caps);

  const std::vector<AgentId>& agents() const { return agents_; }
  const std::vector<ProblemTask>& tasks() const { return tasks_; }
  const std::vector<ProblemEdge>& edges() const { return edges_; }
  const std::map<StationId, int>& caps() const { return caps_; }

  int Cap(StationId station) const;
  const ProblemTask& TaskInfo(TaskId task) const;

 private:
  std::vector<AgentId> agents_;       // ascending
  std::vector<ProblemTask> tasks_;    // ascending by task
  std::vector<ProblemEdge> edges_;    // ascending by (agent, task)
  std::map<StationId, int> caps_;
};

struct Assignment {
  std::vector<std::pair<AgentId, TaskId>> pairs;  // ascending
  Profit objective = 0;
  double total_cost = 0.0;

  int cardinality() const { return static_cast<int>(pairs.size()); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Exact branch and bound over agents in ascending order, trying tasks in
// ascending order before leaving the agent unassigned.
Assignment Solve(const AssignmentProblem& problem);

// Successive-shortest-path min-cost max-flow on
// source -> agent -> task -> station -> sink. Optimal in (cardinality,
// profit); among equal optima the pair set may differ from Solve().
Assignment SolveByFlow(const AssignmentProblem& problem);

// Largest number of pairs any feasible assignment can hold.
int MaxCardinality(const AssignmentProblem& problem);

inline constexpr int kOracleMaxAgents = 5;
inline constexpr int kOracleMaxTasks = 8;

// Exhaustive enumeration with the same ranking and tie-break as Solve().
// Throws std::invalid_argument above kOracleMaxAgents / kOracleMaxTasks.
Assignment BruteForceOracle(const AssignmentProblem& problem);

// Describes the first violated constraint, or returns an empty string.
std::string CheckFeasible(const AssignmentProblem& problem,
                          const std::vector<std::pair<AgentId, TaskId>>& pairs);

// Line-oriented instance text:
//   # comment
//   cap <station> <m>
//   <agent> <task> <station> <cost> [locked]
struct CostInstance {
  std::vector<EdgeCost> edges;
  std::map<StationId, int> caps;
};

CostInstance ReadInstance(std::istream& in);
void WriteInstance(std::ostream& out, const CostInstance& instance);

}  // namespace qalloc

#endif  // QALLOC_ASSIGNMENT_H_
