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

#include "qalloc/assignment.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "qalloc/min_cost_flow.h"

namespace qalloc {
namespace {

// Lexicographic solution rank: more pairs first, then more profit.
struct Rank {
  int cardinality = -1;
  Profit profit = 0;
  friend auto operator<=>(const Rank&, const Rank&) = default;
};

void Finish(const AssignmentProblem& problem, Assignment& out) {
  std::sort(out.pairs.begin(), out.pairs.end());
  out.objective = 0;
  out.total_cost = 0.0;
  for (const auto& [agent, task] : out.pairs) {
    auto it = std::lower_bound(
        problem.edges().begin(), problem.edges().end(), std::make_pair(agent, task),
        [](const ProblemEdge& e, const std::pair<AgentId, TaskId>& key) {
          return std::tie(e.agent, e.task) < std::tie(key.first, key.second);
        });
    out.objective += it->profit;
    out.total_cost += it->cost;
  }
}

// Dense indices used by the search routines.
struct Indexed {
  std::vector<int> task_station;  // station slot per task, -1 when locked
  std::vector<int> station_cap;
  // Per agent: (task index, profit) ascending by task.
  std::vector<std::vector<std::pair<int, Profit>>> options;
};

Indexed Index(const AssignmentProblem& problem) {
  Indexed ix;
  std::map<StationId, int> slot;
  for (const ProblemTask& t : problem.tasks()) {
    if (t.locked) {
      ix.task_station.push_back(-1);
      continue;
    }
    auto [it, inserted] = slot.emplace(t.station, static_cast<int>(ix.station_cap.size()));
    if (inserted) ix.station_cap.push_back(problem.Cap(t.station));
    ix.task_station.push_back(it->second);
  }
  ix.options.resize(problem.agents().size());
  for (const ProblemEdge& e : problem.edges()) {
    const auto a = std::lower_bound(problem.agents().begin(), problem.agents().end(), e.agent) -
                   problem.agents().begin();
    const auto t = std::lower_bound(problem.tasks().begin(), problem.tasks().end(), e.task,
                                    [](const ProblemTask& pt, TaskId id) { return pt.task < id; }) -
                   problem.tasks().begin();
    ix.options[static_cast<std::size_t>(a)].emplace_back(static_cast<int>(t), e.profit);
  }
  return ix;
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const AssignmentProblem& problem)
      : problem_(problem), ix_(Index(problem)) {
    task_used_.assign(problem.tasks().size(), 0);
    station_load_.assign(ix_.station_cap.size(), 0);
    choice_.assign(problem.agents().size(), -1);
  }

  std::vector<int> Run() {
    Descend(0, Rank{0, 0});
    return best_choice_;
  }

 private:
  bool Available(int task) const {
    if (task_used_[static_cast<std::size_t>(task)]) return false;
    const int s = ix_.task_station[static_cast<std::size_t>(task)];
    return s < 0 || station_load_[static_cast<std::size_t>(s)] <
                        ix_.station_cap[static_cast<std::size_t>(s)];
  }

  // Upper bound on what agents [depth, n) can still add.
  Rank Bound(std::size_t depth) const {
    int agents_with_options = 0;
    Profit profit = 0;
    for (std::size_t a = depth; a < ix_.options.size(); ++a) {
      Profit best = -1;
      for (const auto& [task, p] : ix_.options[a]) {
        if (Available(task)) best = std::max(best, p);
      }
      if (best >= 0) {
        ++agents_with_options;
        profit += best;
      }
    }
    // Tasks the remaining agents could still take, respecting station caps.
    std::vector<int> free_per_station(ix_.station_cap.size(), 0);
    int free_locked = 0;
    for (std::size_t t = 0; t < task_used_.size(); ++t) {
      if (task_used_[t]) continue;
      const int s = ix_.task_station[t];
      if (s < 0) {
        ++free_locked;
      } else {
        ++free_per_station[static_cast<std::size_t>(s)];
      }
    }
    int task_room = free_locked;
    for (std::size_t s = 0; s < free_per_station.size(); ++s) {
      task_room += std::min(free_per_station[s], ix_.station_cap[s] - station_load_[s]);
    }
    return Rank{std::min(agents_with_options, task_room), profit};
  }

  void Descend(std::size_t depth, Rank so_far) {
    if (depth == ix_.options.size()) {
      // Leaves arrive in lexicographic order, so only a strict improvement
      // replaces the incumbent.
      if (so_far > best_) {
        best_ = so_far;
        best_choice_ = choice_;
      }
      return;
    }
    const Rank extra = Bound(depth);
    if (Rank{so_far.cardinality + extra.cardinality, so_far.profit + extra.profit} <= best_) {
      return;
    }
    for (const auto& [task, profit] : ix_.options[depth]) {
      if (!Available(task)) continue;
      const int s = ix_.task_station[static_cast<std::size_t>(task)];
      task_used_[static_cast<std::size_t>(task)] = 1;
      if (s >= 0) ++station_load_[static_cast<std::size_t>(s)];
      choice_[depth] = task;
      Descend(depth + 1, Rank{so_far.cardinality + 1, so_far.profit + profit});
      choice_[depth] = -1;
      if (s >= 0) --station_load_[static_cast<std::size_t>(s)];
      task_used_[static_cast<std::size_t>(task)] = 0;
    }
    Descend(depth + 1, so_far);
  }

  const AssignmentProblem& problem_;
  Indexed ix_;
  std::vector<std::uint8_t> task_used_;
  std::vector<int> station_load_;
  std::vector<int> choice_;
  Rank best_;
  std::vector<int> best_choice_;
};

Assignment FromChoices(const AssignmentProblem& problem, const std::vector<int>& choice) {
  Assignment out;
  for (std::size_t a = 0; a < choice.size(); ++a) {
    if (choice[a] < 0) continue;
    out.pairs.emplace_back(problem.agents()[a],
                           problem.tasks()[static_cast<std::size_t>(choice[a])].task);
  }
  Finish(problem, out);
  return out;
}

Assignment FlowSolve(const AssignmentProblem& problem, bool unit_profit) {
  const Indexed ix = Index(problem);
  const int n_agents = static_cast<int>(problem.agents().size());
  const int n_tasks = static_cast<int>(problem.tasks().size());
  const int n_stations = static_cast<int>(ix.station_cap.size());
  const int source = 0;
  const int agent0 = 1;
  const int task0 = agent0 + n_agents;
  const int station0 = task0 + n_tasks;
  const int sink = station0 + n_stations;
  MinCostFlow flow(sink + 1);

  for (int a = 0; a < n_agents; ++a) flow.AddArc(source, agent0 + a, 1, 0);
  std::vector<std::tuple<int, int, int>> pair_arcs;  // (arc, agent, task)
  for (int a = 0; a < n_agents; ++a) {
    for (const auto& [t, profit] : ix.options[static_cast<std::size_t>(a)]) {
      const int arc = flow.AddArc(agent0 + a, task0 + t, 1, unit_profit ? -1 : -profit);
      pair_arcs.emplace_back(arc, a, t);
    }
  }
  for (int t = 0; t < n_tasks; ++t) {
    const int s = ix.task_station[static_cast<std::size_t>(t)];
    flow.AddArc(task0 + t, s < 0 ? sink : station0 + s, 1, 0);
  }
  for (int s = 0; s < n_stations; ++s) {
    flow.AddArc(station0 + s, sink, ix.station_cap[static_cast<std::size_t>(s)], 0);
  }
  flow.Run(source, sink);

  Assignment out;
  for (const auto& [arc, a, t] : pair_arcs) {
    if (flow.arc(arc).flow > 0) {
      out.pairs.emplace_back(problem.agents()[static_cast<std::size_t>(a)],
                             problem.tasks()[static_cast<std::size_t>(t)].task);
    }
  }
  Finish(problem, out);
  return out;
}

}  // namespace

Profit ToFixedPoint(double cost) {
  return static_cast<Profit>(std::llround(cost * static_cast<double>(kProfitScale)));
}

std::vector<ProblemEdge> ToProfits(const std::vector<EdgeCost>& edges) {
  std::vector<ProblemEdge> out;
  if (edges.empty()) return out;
  Profit max_cost = std::numeric_limits<Profit>::min();
  for (const EdgeCost& e : edges) max_cost = std::max(max_cost, ToFixedPoint(e.cost));
  const Profit base = kProfitScale + max_cost;
  out.reserve(edges.size());
  for (const EdgeCost& e : edges) {
    out.push_back(ProblemEdge{e.agent, e.task, base - ToFixedPoint(e.cost), e.cost});
  }
  return out;
}

AssignmentProblem::AssignmentProblem(std::vector<AgentId> agents,
                                     std::vector<ProblemTask> tasks,
                                     std::vector<ProblemEdge> edges,
                                     std::map<StationId, int> caps)
    : agents_(std::move(agents)),
      tasks_(std::move(tasks)),
      edges_(std::move(edges)),
      caps_(std::move(caps)) {
  std::sort(agents_.begin(), agents_.end());
  if (std::adjacent_find(agents_.begin(), agents_.end()) != agents_.end()) {
    throw std::invalid_argument("duplicate agent in assignment problem");
  }
  std::sort(tasks_.begin(), tasks_.end(),
            [](const ProblemTask& a, const ProblemTask& b) { return a.task < b.task; });
  for (std::size_t i = 1; i < tasks_.size(); ++i) {
    if (tasks_[i].task == tasks_[i - 1].task) {
      std::ostringstream msg;
      msg << "duplicate task " << tasks_[i].task << " in assignment problem";
      throw std::invalid_argument(msg.str());
    }
  }
  for (const auto& [station, cap] : caps_) {
    if (cap < 1) {
      std::ostringstream msg;
      msg << "station " << station << " cap " << cap << " is below 1";
      throw std::invalid_argument(msg.str());
    }
  }
  for (const ProblemTask& t : tasks_) {
    if (!t.locked) caps_.try_emplace(t.station, 1);
  }
  std::sort(edges_.begin(), edges_.end(), [](const ProblemEdge& a, const ProblemEdge& b) {
    return std::tie(a.agent, a.task) < std::tie(b.agent, b.task);
  });
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const ProblemEdge& e = edges_[i];
    std::ostringstream msg;
    if (i > 0 && e.agent == edges_[i - 1].agent && e.task == edges_[i - 1].task) {
      msg << "duplicate edge (" << e.agent << ", " << e.task << ")";
      throw std::invalid_argument(msg.str());
    }
    if (e.profit <= 0) {
      msg << "edge (" << e.agent << ", " << e.task << ") has non-positive profit";
      throw std::invalid_argument(msg.str());
    }
    if (!std::binary_search(agents_.begin(), agents_.end(), e.agent)) {
      msg << "edge names unknown agent " << e.agent;
      throw std::invalid_argument(msg.str());
    }
    if (!std::binary_search(tasks_.begin(), tasks_.end(), ProblemTask{e.task, {}, false},
                            [](const ProblemTask& a, const ProblemTask& b) {
                              return a.task < b.task;
                            })) {
      msg << "edge names unknown task " << e.task;
      throw std::invalid_argument(msg.str());
    }
  }
}

AssignmentProblem AssignmentProblem::FromEdgeCosts(const std::vector<EdgeCost>& edges,
                                                   std::map<StationId, int> caps) {
  std::set<AgentId> agents;
  std::map<TaskId, ProblemTask> tasks;
  for (const EdgeCost& e : edges) {
    agents.insert(e.agent);
    auto [it, inserted] = tasks.emplace(e.task, ProblemTask{e.task, e.station, e.locked});
    if (!inserted && (it->second.station != e.station || it->second.locked != e.locked)) {
      std::ostringstream msg;
      msg << "task " << e.task << " listed with conflicting station or lock";
      throw std::invalid_argument(msg.str());
    }
  }
  std::vector<ProblemTask> task_list;
  for (const auto& [id, t] : tasks) task_list.push_back(t);
  return AssignmentProblem({agents.begin(), agents.end()}, std::move(task_list),
                           ToProfits(edges), std::move(caps));
}

int AssignmentProblem::Cap(StationId station) const {
  auto it = caps_.find(station);
  return it == caps_.end() ? 1 : it->second;
}

const ProblemTask& AssignmentProblem::TaskInfo(TaskId task) const {
  auto it = std::lower_bound(tasks_.begin(), tasks_.end(), task,
                             [](const ProblemTask& pt, TaskId id) { return pt.task < id; });
  if (it == tasks_.end() || it->task != task) {
    std::ostringstream msg;
    msg << "unknown task " << task;
    throw std::out_of_range(msg.str());
  }
  return *it;
}

Assignment Solve(const AssignmentProblem& problem) {
  BranchAndBound search(problem);
  return FromChoices(problem, search.Run());
}

Assignment SolveByFlow(const AssignmentProblem& problem) {
  return FlowSolve(problem, /*unit_profit=*/false);
}

int MaxCardinality(const AssignmentProblem& problem) {
  return FlowSolve(problem, /*unit_profit=*/true).cardinality();
}

std::string CheckFeasible(const AssignmentProblem& problem,
                          const std::vector<std::pair<AgentId, TaskId>>& pairs) {
  std::set<AgentId> agents;
  std::set<TaskId> tasks;
  std::map<StationId, int> load;
  std::ostringstream msg;
  for (const auto& [agent, task] : pairs) {
    const bool has_edge = std::binary_search(
        problem.edges().begin(), problem.edges().end(), ProblemEdge{agent, task, 0, 0.0},
        [](const ProblemEdge& a, const ProblemEdge& b) {
          return std::tie(a.agent, a.task) < std::tie(b.agent, b.task);
        });
    if (!has_edge) {
      msg << "pair (" << agent << ", " << task << ") is not an edge";
      return msg.str();
    }
    if (!agents.insert(agent).second) {
      msg << "agent " << agent << " assigned twice";
      return msg.str();
    }
    if (!tasks.insert(task).second) {
      msg << "task " << task << " assigned twice";
      return msg.str();
    }
    const ProblemTask& info = problem.TaskInfo(task);
    if (!info.locked && ++load[info.station] > problem.Cap(info.station)) {
      msg << "station " << info.station << " exceeds its cap of "
          << problem.Cap(info.station);
      return msg.str();
    }
  }
  return {};
}

Assignment BruteForceOracle(const AssignmentProblem& problem) {
  if (problem.agents().size() > static_cast<std::size_t>(kOracleMaxAgents) ||
      problem.tasks().size() > static_cast<std::size_t>(kOracleMaxTasks)) {
    std::ostringstream msg;
    msg << "instance with " << problem.agents().size() << " agents and "
        << problem.tasks().size() << " tasks exceeds the oracle guard ("
        << kOracleMaxAgents << ", " << kOracleMaxTasks << ")";
    throw std::invalid_argument(msg.str());
  }
  // Every agent independently picks one of its edges or nothing; infeasible
  // combinations are filtered afterwards.
  std::vector<std::vector<TaskId>> options(problem.agents().size());
  for (std::size_t a = 0; a < problem.agents().size(); ++a) {
    for (const ProblemEdge& e : problem.edges()) {
      if (e.agent == problem.agents()[a]) options[a].push_back(e.task);
    }
  }
  std::vector<std::size_t> digit(problem.agents().size(), 0);
  bool have_best = false;
  Assignment best;
  while (true) {
    std::vector<std::pair<AgentId, TaskId>> pairs;
    for (std::size_t a = 0; a < digit.size(); ++a) {
      if (digit[a] < options[a].size()) pairs.emplace_back(problem.agents()[a], options[a][digit[a]]);
    }
    if (CheckFeasible(problem, pairs).empty()) {
      Assignment candidate;
      candidate.pairs = std::move(pairs);
      Finish(problem, candidate);
      const auto key = [](const Assignment& x) {
        return std::make_pair(x.cardinality(), x.objective);
      };
      if (!have_best || key(candidate) > key(best) ||
          (key(candidate) == key(best) && candidate.pairs < best.pairs)) {
        best = std::move(candidate);
        have_best = true;
      }
    }
    std::size_t a = 0;
    while (a < digit.size() && ++digit[a] > options[a].size()) digit[a++] = 0;
    if (a == digit.size()) break;
  }
  return best;
}

CostInstance ReadInstance(std::istream& in) {
  CostInstance instance;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("instance line " + std::to_string(line_no) + ": " + why);
    };
    if (first == "cap") {
      int station = 0;
      int cap = 0;
      if (!(fields >> station >> cap)) fail("expected 'cap <station> <m>'");
      if (cap < 1) fail("cap must be >= 1");
      instance.caps[StationId(station)] = cap;
    } else {
      EdgeCost e;
      int agent = 0;
      int task = 0;
      int station = 0;
      try {
        agent = std::stoi(first);
      } catch (const std::exception&) {
        fail("expected '<agent> <task> <station> <cost> [locked]'");
      }
      if (!(fields >> task >> station >> e.cost)) {
        fail("expected '<agent> <task> <station> <cost> [locked]'");
      }
      std::string flag;
      if (fields >> flag) {
        if (flag != "locked") fail("unexpected token '" + flag + "'");
        e.locked = true;
      }
      if (!std::isfinite(e.cost)) fail("cost must be finite");
      e.agent = AgentId(agent);
      e.task = TaskId(task);
      e.station = StationId(station);
      e.bid = e.cost;
      instance.edges.push_back(e);
    }
  }
  return instance;
}

void WriteInstance(std::ostream& out, const CostInstance& instance) {
  out << "# agent task station cost [locked]\n";
  for (const auto& [station, cap] : instance.caps) {
    out << "cap " << station << ' ' << cap << '\n';
  }
  std::ostringstream num;
  num.precision(17);
  for (const EdgeCost& e : instance.edges) {
    num.str("");
    num << e.cost;
    out << e.agent << ' ' << e.task << ' ' << e.station << ' ' << num.str()
        << (e.locked ? " locked" : "") << '\n';
  }
}

}  // namespace qalloc
