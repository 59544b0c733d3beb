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

// Risk-aware shortest paths on the 8-connected grid.
//
// A step between neighbouring free cells u and v costs its length (1 for a
// straight step, sqrt(2) for a diagonal one) plus the mean of the two cells'
// risk, so a path's risk cost is the sum of the risk of its cells with the
// two end cells counted at half weight. Both parts are symmetric in the
// direction of travel.

#ifndef QALLOC_PATH_PLANNER_H_
#define QALLOC_PATH_PLANNER_H_

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "qalloc/grid_map.h"
#include "qalloc/types.h"

namespace qalloc {

inline constexpr double kSqrt2 = 1.41421356237309504880;

// Neighbour offsets in the order the planner relaxes them.
inline constexpr std::array<Cell, 8> kNeighbourOffsets = {
    Cell{-1, -1}, Cell{-1, 0}, Cell{-1, 1}, Cell{0, -1},
    Cell{0, 1},   Cell{1, -1}, Cell{1, 0},  Cell{1, 1}};

struct RiskParams {
  int inflation_radius = 2;
  double weight = 1.0;
};

// Returns a copy of `map` whose free cells carry
// weight * max(0, radius - d), d being the Chebyshev distance to the nearest
// occupied cell. Occupied cells keep zero risk.
GridMap BuildRiskLayer(const GridMap& map, int inflation_radius,
                       double risk_weight);
inline GridMap BuildRiskLayer(const GridMap& map, const RiskParams& params) {
  return BuildRiskLayer(map, params.inflation_radius, params.weight);
}

struct PlanResult {
  std::vector<Cell> path;  // start ... goal inclusive
  double dist_cost = 0.0;
  double risk_cost = 0.0;
  double total_cost = 0.0;  // dist_cost + risk_cost
};

// Cost of the single step u -> v between 8-neighbours.
double StepCost(const GridMap& map, Cell u, Cell v);

// Minimum-cost path, or nullopt if either end is blocked or the goal cannot
// be reached. Equal-cost frontier entries expand in ascending (x, y) order.
std::optional<PlanResult> Plan(const GridMap& map, Cell start, Cell goal);

// Plan(map, start, goal)->total_cost.
std::optional<double> PathCost(const GridMap& map, Cell start, Cell goal);

// Single-source costs to every cell. Because steps are symmetric, CostTo(c)
// is also the cost from c back to the source.
class DistanceField {
 public:
  DistanceField(const GridMap& map, Cell source);

  Cell source() const { return source_; }
  std::optional<double> CostTo(Cell c) const;

 private:
  const GridMap* map_;
  Cell source_;
  std::vector<double> cost_;
};

// Caches distance fields keyed by source cell. Thread-safe; fields are built
// on first use.
class PathCostTable {
 public:
  explicit PathCostTable(const GridMap& map) : map_(&map) {}

  PathCostTable(const PathCostTable&) = delete;
  PathCostTable& operator=(const PathCostTable&) = delete;

  const GridMap& map() const { return *map_; }

  // Cost between two cells, using the field of whichever cell already has
  // one (or building one for `b`).
  std::optional<double> Cost(Cell a, Cell b) const;

  const DistanceField& FieldFrom(Cell source) const;

 private:
  const GridMap* map_;
  mutable std::mutex mu_;
  mutable std::map<Cell, std::unique_ptr<DistanceField>> fields_;
};

}  // namespace qalloc

#endif  // QALLOC_PATH_PLANNER_H_
