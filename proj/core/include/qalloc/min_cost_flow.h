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

#ifndef QALLOC_MIN_COST_FLOW_H_
#define QALLOC_MIN_COST_FLOW_H_

#include <cstdint>
#include <vector>

namespace qalloc {

// Min-cost max-flow by successive shortest paths, using Bellman-Ford on the
// residual graph so arc costs may be negative (no negative cycles allowed in
// the input). Sized for auction instances, tens of nodes.
class MinCostFlow {
 public:
  using Flow = std::int64_t;
  using Cost = std::int64_t;

  struct Arc {
    int from;
    int to;
    Flow cap;
    Flow flow;
    Cost cost;
  };

  explicit MinCostFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  // Returns the arc id, usable with arc().
  int AddArc(int from, int to, Flow cap, Cost cost);

  struct Result {
    Flow flow = 0;
    Cost cost = 0;
  };

  // Pushes as much flow as possible from source to sink at minimum cost.
  Result Run(int source, int sink);

  const Arc& arc(int id) const { return arcs_[static_cast<std::size_t>(id)]; }

 private:
  std::vector<Arc> arcs_;  // arc 2k forward, 2k+1 its residual twin
  std::vector<std::vector<int>> adj_;
};

}  // namespace qalloc

#endif  // QALLOC_MIN_COST_FLOW_H_
