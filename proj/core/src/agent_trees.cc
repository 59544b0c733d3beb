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

#include "qalloc/agent_trees.h"

#include "qalloc/path_planner.h"

namespace qalloc {
namespace {

using bt::TickStatus;

enum class Motion { kArrived, kMoving, kUnreachable };

Motion MoveToward(Agent& agent, const GridMap& map, Cell target) {
  if (agent.position == target) return Motion::kArrived;
  if (agent.path_goal != target || agent.current_path.empty()) {
    auto plan = Plan(map, agent.position, target);
    if (!plan) {
      agent.current_path.clear();
      agent.path_goal.reset();
      return Motion::kUnreachable;
    }
    agent.current_path.assign(plan->path.begin() + 1, plan->path.end());
    agent.path_goal = target;
  }
  const std::size_t steps =
      std::min(agent.current_path.size(), static_cast<std::size_t>(agent.speed));
  agent.position = agent.current_path[steps - 1];
  agent.current_path.erase(agent.current_path.begin(),
                           agent.current_path.begin() + static_cast<std::ptrdiff_t>(steps));
  if (agent.current_path.empty()) agent.path_goal.reset();
  return agent.position == target ? Motion::kArrived : Motion::kMoving;
}

TickStatus FollowPathToPickup(AgentContext& ctx) {
  Agent& agent = ctx.agent();
  if (!agent.assigned_task) return TickStatus::kFailure;
  Task& task = ctx.world.task(*agent.assigned_task);
  switch (MoveToward(agent, ctx.world.map, task.pickup)) {
    case Motion::kUnreachable:
      return TickStatus::kFailure;
    case Motion::kMoving:
      return TickStatus::kRunning;
    case Motion::kArrived:
      TransitionTask(ctx.world, task.id, TaskState::kPickedUp);
      agent.bt.item_picked_up = true;
      ctx.picked_up = task.id;
      return TickStatus::kRunning;
  }
  return TickStatus::kFailure;
}

TickStatus FollowPathToDropoff(AgentContext& ctx) {
  Agent& agent = ctx.agent();
  if (!agent.assigned_task || !agent.carrying) return TickStatus::kFailure;
  const TaskId id = *agent.assigned_task;
  const Cell dropoff = ctx.world.task(id).dropoff;
  switch (MoveToward(agent, ctx.world.map, dropoff)) {
    case Motion::kUnreachable:
      return TickStatus::kFailure;
    case Motion::kMoving:
      return TickStatus::kRunning;
    case Motion::kArrived:
      TransitionTask(ctx.world, id, TaskState::kDelivered);
      agent.bt.item_delivered = true;
      ctx.delivered = id;
      return TickStatus::kRunning;
  }
  return TickStatus::kFailure;
}

TickStatus FollowPathHome(AgentContext& ctx) {
  Agent& agent = ctx.agent();
  switch (MoveToward(agent, ctx.world.map, agent.home)) {
    case Motion::kUnreachable:
      return TickStatus::kFailure;
    case Motion::kMoving:
    case Motion::kArrived:
      return TickStatus::kRunning;
  }
  return TickStatus::kFailure;
}

bt::LeafRegistry<AgentContext> MakeRegistry() {
  bt::LeafRegistry<AgentContext> registry;
  registry
      .AddCondition(kItemPickedUp,
                    [](const AgentContext& c) { return c.agent().bt.item_picked_up; })
      .AddCondition(kItemDelivered,
                    [](const AgentContext& c) { return c.agent().bt.item_delivered; })
      .AddCondition(kAtHome,
                    [](const AgentContext& c) {
                      return c.agent().position == c.agent().home;
                    })
      .AddAction(kFollowPathToPickup, FollowPathToPickup)
      .AddAction(kFollowPathToDropoff, FollowPathToDropoff)
      .AddAction(kFollowPathHome, FollowPathHome);
  return registry;
}

}  // namespace

bt::BtSpec PickupDeliverSpec() {
  using bt::BtSpec;
  return BtSpec::Sequence({
      BtSpec::Fallback({BtSpec::Condition(kItemPickedUp),
                        BtSpec::Action(kFollowPathToPickup)}),
      BtSpec::Fallback({BtSpec::Condition(kItemDelivered),
                        BtSpec::Action(kFollowPathToDropoff)}),
  });
}

bt::BtSpec GoHomeSpec() {
  using bt::BtSpec;
  return BtSpec::Fallback(
      {BtSpec::Condition(kAtHome), BtSpec::Action(kFollowPathHome)});
}

const bt::LeafRegistry<AgentContext>& AgentLeafRegistry() {
  static const bt::LeafRegistry<AgentContext> registry = MakeRegistry();
  return registry;
}

AgentNode BuildPickupDeliverTree() {
  return AgentNode::Compile(PickupDeliverSpec(), AgentLeafRegistry());
}

AgentNode BuildGoHomeTree() {
  return AgentNode::Compile(GoHomeSpec(), AgentLeafRegistry());
}

TickStatus TickAgent(AgentContext& ctx, bt::LeafTrace* trace) {
  static const AgentNode pickup_deliver = BuildPickupDeliverTree();
  static const AgentNode go_home = BuildGoHomeTree();
  const AgentNode& root = ctx.agent().bt.active_tree == ActiveTree::kPickUpAndDeliver
                              ? pickup_deliver
                              : go_home;
  return root.Tick(ctx, trace);
}

void ResetAgentTree(Agent& agent, std::optional<TaskId> task) {
  agent.bt.active_tree = task ? ActiveTree::kPickUpAndDeliver : ActiveTree::kGoHome;
  agent.bt.item_picked_up = false;
  agent.bt.item_delivered = false;
  agent.current_path.clear();
  agent.path_goal.reset();
}

}  // namespace qalloc
