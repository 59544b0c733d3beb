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

#include "qalloc/path_planner.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace qalloc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

// Frontier entry ordered by (cost, x, y), smallest first.
using FrontierEntry = std::tuple<double, int, int>;
using Frontier = std::priority_queue<FrontierEntry, std::vector<FrontierEntry>,
                                     std::greater<FrontierEntry>>;

struct SearchResult {
  std::vector<double> cost;
  std::vector<std::size_t> parent;
};

// Dijkstra from `source`; stops once `goal` is settled when given.
SearchResult Search(const GridMap& map, Cell source, std::optional<Cell> goal) {
  SearchResult r;
  r.cost.assign(map.cell_count(), kInf);
  r.parent.assign(map.cell_count(), kNoParent);
  std::vector<std::uint8_t> settled(map.cell_count(), 0);
  Frontier frontier;
  r.cost[map.Index(source)] = 0.0;
  frontier.emplace(0.0, source.x, source.y);
  while (!frontier.empty()) {
    const auto [cost, x, y] = frontier.top();
    frontier.pop();
    const Cell u{x, y};
    const std::size_t ui = map.Index(u);
    if (settled[ui]) continue;
    settled[ui] = 1;
    if (goal && u == *goal) break;
    for (const Cell& d : kNeighbourOffsets) {
      const Cell v{u.x + d.x, u.y + d.y};
      if (map.IsOccupied(v)) continue;
      const std::size_t vi = map.Index(v);
      if (settled[vi]) continue;
      const double candidate = cost + StepCost(map, u, v);
      if (candidate < r.cost[vi]) {
        r.cost[vi] = candidate;
        r.parent[vi] = ui;
        frontier.emplace(candidate, v.x, v.y);
      }
    }
  }
  return r;
}

}  // namespace

GridMap BuildRiskLayer(const GridMap& map, int inflation_radius,
                       double risk_weight) {
  if (inflation_radius < 0) {
    throw std::invalid_argument("inflation radius must be >= 0");
  }
  if (!(risk_weight >= 0.0)) throw std::invalid_argument("risk weight must be >= 0");
  GridMap out = map;
  for (std::size_t i = 0; i < out.cell_count(); ++i) out.SetRisk(out.CellAt(i), 0.0);
  if (inflation_radius == 0 || risk_weight == 0.0) return out;

  // Multi-source BFS with unit 8-neighbour steps yields Chebyshev distance.
  std::vector<int> dist(map.cell_count(), std::numeric_limits<int>::max());
  std::deque<Cell> open;
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const Cell c = map.CellAt(i);
    if (map.IsOccupied(c)) {
      dist[i] = 0;
      open.push_back(c);
    }
  }
  while (!open.empty()) {
    const Cell u = open.front();
    open.pop_front();
    const int du = dist[map.Index(u)];
    if (du + 1 >= inflation_radius) continue;
    for (const Cell& d : kNeighbourOffsets) {
      const Cell v{u.x + d.x, u.y + d.y};
      if (!map.InBounds(v)) continue;
      int& dv = dist[map.Index(v)];
      if (dv > du + 1) {
        dv = du + 1;
        open.push_back(v);
      }
    }
  }
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const Cell c = map.CellAt(i);
    if (map.IsOccupied(c) || dist[i] >= inflation_radius) continue;
    out.SetRisk(c, risk_weight * static_cast<double>(inflation_radius - dist[i]));
  }
  return out;
}

double StepCost(const GridMap& map, Cell u, Cell v) {
  const bool diagonal = u.x != v.x && u.y != v.y;
  return (diagonal ? kSqrt2 : 1.0) + 0.5 * (map.Risk(u) + map.Risk(v));
}

std::optional<PlanResult> Plan(const GridMap& map, Cell start, Cell goal) {
  if (map.IsOccupied(start) || map.IsOccupied(goal)) return std::nullopt;
  PlanResult result;
  if (start == goal) {
    result.path = {start};
    return result;
  }
  const SearchResult search = Search(map, start, goal);
  if (search.cost[map.Index(goal)] == kInf) return std::nullopt;

  for (std::size_t i = map.Index(goal); i != kNoParent; i = search.parent[i]) {
    result.path.push_back(map.CellAt(i));
  }
  std::reverse(result.path.begin(), result.path.end());
  for (std::size_t k = 1; k < result.path.size(); ++k) {
    const Cell u = result.path[k - 1];
    const Cell v = result.path[k];
    result.dist_cost += (u.x != v.x && u.y != v.y) ? kSqrt2 : 1.0;
    result.risk_cost += 0.5 * (map.Risk(u) + map.Risk(v));
  }
  result.total_cost = result.dist_cost + result.risk_cost;
  return result;
}

std::optional<double> PathCost(const GridMap& map, Cell start, Cell goal) {
  auto plan = Plan(map, start, goal);
  if (!plan) return std::nullopt;
  return plan->total_cost;
}

DistanceField::DistanceField(const GridMap& map, Cell source)
    : map_(&map), source_(source) {
  if (map.IsOccupied(source)) {
    cost_.assign(map.cell_count(), kInf);
    return;
  }
  cost_ = Search(map, source, std::nullopt).cost;
}

std::optional<double> DistanceField::CostTo(Cell c) const {
  if (!map_->InBounds(c)) return std::nullopt;
  const double v = cost_[map_->Index(c)];
  if (v == kInf) return std::nullopt;
  return v;
}

const DistanceField& PathCostTable::FieldFrom(Cell source) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = fields_[source];
  if (!slot) slot = std::make_unique<DistanceField>(*map_, source);
  return *slot;
}

std::optional<double> PathCostTable::Cost(Cell a, Cell b) const {
  if (map_->IsOccupied(a) || map_->IsOccupied(b)) return std::nullopt;
  if (a == b) return 0.0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = fields_.find(a); it != fields_.end()) return it->second->CostTo(b);
  }
  return FieldFrom(b).CostTo(a);
}

}  // namespace qalloc
