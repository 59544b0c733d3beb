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

#include "qalloc/min_cost_flow.h"

#include <algorithm>
#include <limits>

namespace qalloc {

int MinCostFlow::AddArc(int from, int to, Flow cap, Cost cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({from, to, cap, 0, cost});
  arcs_.push_back({to, from, 0, 0, -cost});
  adj_[static_cast<std::size_t>(from)].push_back(id);
  adj_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

MinCostFlow::Result MinCostFlow::Run(int source, int sink) {
  constexpr Cost kUnreached = std::numeric_limits<Cost>::max();
  const std::size_t n = adj_.size();
  Result result;
  std::vector<Cost> dist(n);
  std::vector<int> via(n);
  while (true) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::fill(via.begin(), via.end(), -1);
    dist[static_cast<std::size_t>(source)] = 0;
    // Bellman-Ford; at most n - 1 rounds of relaxation.
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t id = 0; id < arcs_.size(); ++id) {
        const Arc& a = arcs_[id];
        const Cost du = dist[static_cast<std::size_t>(a.from)];
        if (du == kUnreached || a.flow >= a.cap) continue;
        Cost& dv = dist[static_cast<std::size_t>(a.to)];
        if (du + a.cost < dv) {
          dv = du + a.cost;
          via[static_cast<std::size_t>(a.to)] = static_cast<int>(id);
          changed = true;
        }
      }
      if (!changed) break;
    }
    if (dist[static_cast<std::size_t>(sink)] == kUnreached) break;

    Flow push = std::numeric_limits<Flow>::max();
    for (int v = sink; v != source;) {
      const Arc& a = arcs_[static_cast<std::size_t>(via[static_cast<std::size_t>(v)])];
      push = std::min(push, a.cap - a.flow);
      v = a.from;
    }
    for (int v = sink; v != source;) {
      const int id = via[static_cast<std::size_t>(v)];
      arcs_[static_cast<std::size_t>(id)].flow += push;
      arcs_[static_cast<std::size_t>(id ^ 1)].flow -= push;
      v = arcs_[static_cast<std::size_t>(id)].from;
    }
    result.flow += push;
    result.cost += push * dist[static_cast<std::size_t>(sink)];
  }
  return result;
}

}  // namespace qalloc
