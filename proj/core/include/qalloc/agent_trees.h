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

#ifndef QALLOC_AGENT_TREES_H_
#define QALLOC_AGENT_TREES_H_

#include <optional>

#include "qalloc/behavior_tree.h"
#include "qalloc/world.h"

namespace qalloc {

// What an agent's leaves see and mutate during one tick. Lifecycle changes
// made by actions are reported back through `picked_up` / `delivered`.
struct AgentContext {
  WorldState& world;
  AgentId agent_id;
  std::optional<TaskId> picked_up;
  std::optional<TaskId> delivered;

  Agent& agent() { return world.agent(agent_id); }
  const Agent& agent() const { return world.agent(agent_id); }
};

using AgentNode = bt::Node<AgentContext>;

// Leaf names.
inline constexpr char kItemPickedUp[] = "ItemPickedUp";
inline constexpr char kItemDelivered[] = "ItemDelivered";
inline constexpr char kAtHome[] = "AtHome";
inline constexpr char kFollowPathToPickup[] = "FollowPathToPickup";
inline constexpr char kFollowPathToDropoff[] = "FollowPathToDropoff";
inline constexpr char kFollowPathHome[] = "FollowPathHome";

// Sequence[ Fallback[ItemPickedUp, FollowPathToPickup],
//           Fallback[ItemDelivered, FollowPathToDropoff] ]
bt::BtSpec PickupDeliverSpec();

// Fallback[AtHome, FollowPathHome]: keep heading home until there.
bt::BtSpec GoHomeSpec();

// Bindings for the leaf names above. Follow-path actions advance the agent
// up to `speed` cells along a planned path and report Running, including on
// the tick they arrive; they fail when the goal is unreachable. Arriving at
// the pickup cell picks the item up, arriving at the drop-off delivers it.
const bt::LeafRegistry<AgentContext>& AgentLeafRegistry();

AgentNode BuildPickupDeliverTree();
AgentNode BuildGoHomeTree();

// Ticks whichever tree the agent's state selects.
bt::TickStatus TickAgent(AgentContext& ctx, bt::LeafTrace* trace = nullptr);

// Switches the agent to a freshly assigned task (or home when `task` is
// empty), resetting the tree flags and any stale path.
void ResetAgentTree(Agent& agent, std::optional<TaskId> task);

}  // namespace qalloc

#endif  // QALLOC_AGENT_TREES_H_
