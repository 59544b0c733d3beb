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

#include "qalloc/simulator.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

namespace qalloc {
namespace {

ScenarioConfig Preset(const std::string& name, Tick horizon, std::uint64_t seed = 1) {
  ScenarioConfig c = ScenarioPresets().at(name);
  c.horizon = horizon;
  c.rng_seed = seed;
  return c;
}

int CountKind(const SimTrace& trace, EventKind kind) {
  return static_cast<int>(std::count_if(trace.events.begin(), trace.events.end(),
                                        [&](const SimEvent& e) { return e.kind == kind; }));
}

TEST(SimulatorTest, EmptyWorkloadOnlyIdles) {
  ScenarioConfig c = Preset("S1", 100);
  for (StationConfig& s : c.stations) s.initial_tasks = 0;
  Simulator sim(c);
  const SimTrace trace = sim.Run();
  ASSERT_EQ(trace.events.size(), c.agents.size());
  for (const SimEvent& e : trace.events) {
    EXPECT_EQ(e.kind, EventKind::kAgentIdle);
    EXPECT_EQ(e.time, 0);
  }
  for (std::size_t i = 0; i < c.agents.size(); ++i) {
    EXPECT_EQ(sim.world().agents[i].position, c.agents[i].home);
  }
  EXPECT_EQ(trace.live_queue_lengths.size(), 100u);
}

TEST(SimulatorTest, BacklogIsFullyDelivered) {
  const SimTrace trace = RunScenario(Preset("S1", 2000));
  EXPECT_EQ(CountKind(trace, EventKind::kTaskSpawned), 30);
  EXPECT_EQ(CountKind(trace, EventKind::kTaskPickedUp), 30);
  EXPECT_EQ(CountKind(trace, EventKind::kTaskDelivered), 30);
  for (const TaskRecord& t : trace.tasks) {
    EXPECT_EQ(t.state, TaskState::kDelivered);
    ASSERT_TRUE(t.completion_time.has_value());
    EXPECT_GE(*t.completion_time, t.arrival_time);
  }
  EXPECT_EQ(trace.live_queue_lengths.front(), (std::vector<int>{10, 10, 10}));
  EXPECT_EQ(trace.live_queue_lengths.back(), (std::vector<int>{0, 0, 0}));
}

TEST(SimulatorTest, SameSeedSameTrace) {
  for (const char* name : {"S3", "S4", "S5"}) {
    const SimTrace a = RunScenario(Preset(name, 800, 99));
    const SimTrace b = RunScenario(Preset(name, 800, 99));
    EXPECT_EQ(a.events, b.events) << name;
    EXPECT_EQ(a.live_queue_lengths, b.live_queue_lengths) << name;
  }
}

TEST(SimulatorTest, SeedChangesArrivals) {
  const SimTrace a = RunScenario(Preset("S3", 800, 1));
  const SimTrace b = RunScenario(Preset("S3", 800, 2));
  EXPECT_NE(a.events, b.events);
}

// Every spawn is auctioned in the tick it appears.
TEST(SimulatorTest, AuctionFollowsEverySpawn) {
  const SimTrace trace = RunScenario(Preset("S4", 1500, 5));
  std::set<Tick> spawn_ticks;
  std::set<Tick> auction_ticks;
  for (const SimEvent& e : trace.events) {
    if (e.kind == EventKind::kTaskSpawned) spawn_ticks.insert(e.time);
    if (e.kind == EventKind::kAuctionRun) auction_ticks.insert(e.time);
  }
  ASSERT_FALSE(spawn_ticks.empty());
  for (Tick t : spawn_ticks) EXPECT_TRUE(auction_ticks.count(t)) << "tick " << t;
}

// Replays the log and checks lifecycle order, the global cap and that no
// picked-up task changes hands.
TEST(SimulatorTest, TraceRespectsLifecycle) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (const char* name : {"S3", "S4", "S5"}) {
      const ScenarioConfig c = Preset(name, 1500, seed);
      const SimTrace trace = RunScenario(c);
      std::map<TaskId, TaskState> state;
      std::map<TaskId, AgentId> owner;
      int undelivered = 0;
      Tick now = 0;
      auto check_cap = [&] { EXPECT_LE(undelivered, c.global_task_cap); };
      for (const SimEvent& e : trace.events) {
        ASSERT_GE(e.time, now);
        if (e.time != now) {
          check_cap();
          now = e.time;
        }
        switch (e.kind) {
          case EventKind::kTaskSpawned:
            ASSERT_FALSE(state.count(*e.task));
            state[*e.task] = TaskState::kQueued;
            ++undelivered;
            break;
          case EventKind::kTaskAssigned:
            ASSERT_NE(state.at(*e.task), TaskState::kPickedUp);
            ASSERT_NE(state.at(*e.task), TaskState::kDelivered);
            state[*e.task] = TaskState::kAssigned;
            owner[*e.task] = *e.agent;
            break;
          case EventKind::kTaskReassigned:
            ASSERT_EQ(state.at(*e.task), TaskState::kAssigned) << "task " << *e.task;
            ASSERT_EQ(owner.at(*e.task), *e.previous_agent);
            ASSERT_NE(*e.agent, *e.previous_agent);
            owner[*e.task] = *e.agent;
            break;
          case EventKind::kTaskPickedUp:
            ASSERT_EQ(state.at(*e.task), TaskState::kAssigned);
            ASSERT_EQ(owner.at(*e.task), *e.agent);
            state[*e.task] = TaskState::kPickedUp;
            break;
          case EventKind::kTaskDelivered:
            ASSERT_EQ(state.at(*e.task), TaskState::kPickedUp);
            ASSERT_EQ(owner.at(*e.task), *e.agent);
            state[*e.task] = TaskState::kDelivered;
            --undelivered;
            break;
          default:
            break;
        }
      }
      check_cap();
      const int spawned = CountKind(trace, EventKind::kTaskSpawned);
      EXPECT_EQ(static_cast<int>(trace.tasks.size()), spawned);
      for (const auto& queues : trace.live_queue_lengths) {
        int waiting = 0;
        for (int q : queues) waiting += q;
        EXPECT_LE(waiting, c.global_task_cap);
      }
    }
  }
}

TEST(SimulatorTest, ObserverSeesEveryAuction) {
  Simulator sim(Preset("S3", 600, 3));
  int auctions = 0;
  sim.set_auction_observer([&](const AuctionRecord& r) {
    ++auctions;
    EXPECT_EQ(CheckFeasible(*r.problem, r.assignment->pairs), "");
    EXPECT_EQ(r.assignment->cardinality(), MaxCardinality(*r.problem));
  });
  const SimTrace trace = sim.Run();
  EXPECT_EQ(auctions, CountKind(trace, EventKind::kAuctionRun));
}

TEST(SimulatorTest, RejectsInvalidConfig) {
  ScenarioConfig c = Preset("S1", 10);
  c.agents.clear();
  EXPECT_THROW(Simulator{c}, ConfigError);
  c = Preset("S1", 10);
  c.stations[0].location = Cell{0, 0};  // wall
  EXPECT_THROW(RunScenario(c), ConfigError);
}

class ApplyAssignmentTest : public ::testing::Test {
 protected:
  ApplyAssignmentTest() : world_(BuildWorld(Preset("S1", 10))) {
    for (int i = 0; i < 3; ++i) tasks_.push_back(SpawnTask(world_, StationId(0), Cell{10, 4}));
  }

  static Assignment Of(std::initializer_list<std::pair<int, int>> pairs) {
    Assignment a;
    for (auto [agent, task] : pairs) a.pairs.emplace_back(AgentId(agent), TaskId(task));
    return a;
  }

  WorldState world_;
  std::vector<TaskId> tasks_;
};

TEST_F(ApplyAssignmentTest, FreshAssignmentEmitsAssigned) {
  const auto events = ApplyAssignment(world_, Of({{0, 0}, {1, 1}}));
  ASSERT_EQ(events.size(), 2u);
  for (const SimEvent& e : events) EXPECT_EQ(e.kind, EventKind::kTaskAssigned);
  EXPECT_EQ(world_.task(TaskId(0)).state, TaskState::kAssigned);
  EXPECT_EQ(world_.agent(AgentId(1)).assigned_task, TaskId(1));
  EXPECT_EQ(world_.agent(AgentId(0)).bt.active_tree, ActiveTree::kPickUpAndDeliver);
}

TEST_F(ApplyAssignmentTest, SameAssignmentIsSilent) {
  ApplyAssignment(world_, Of({{0, 0}, {1, 1}}));
  EXPECT_TRUE(ApplyAssignment(world_, Of({{0, 0}, {1, 1}})).empty());
}

TEST_F(ApplyAssignmentTest, MovedTaskIsReassigned) {
  ApplyAssignment(world_, Of({{0, 0}}));
  const auto events = ApplyAssignment(world_, Of({{1, 0}}));
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].kind, EventKind::kTaskReassigned);
  EXPECT_EQ(events[0].agent, AgentId(1));
  EXPECT_EQ(events[0].previous_agent, AgentId(0));
  EXPECT_EQ(events[1].kind, EventKind::kAgentIdle);
  EXPECT_EQ(events[1].agent, AgentId(0));
  EXPECT_FALSE(world_.agent(AgentId(0)).assigned_task.has_value());
  EXPECT_EQ(world_.agent(AgentId(0)).bt.active_tree, ActiveTree::kGoHome);
}

TEST_F(ApplyAssignmentTest, DroppedTaskReturnsToQueue) {
  ApplyAssignment(world_, Of({{0, 0}}));
  const auto events = ApplyAssignment(world_, Of({}));
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, EventKind::kAgentIdle);
  EXPECT_EQ(world_.task(TaskId(0)).state, TaskState::kQueued);
  EXPECT_FALSE(world_.task(TaskId(0)).assignee.has_value());
}

TEST_F(ApplyAssignmentTest, PickedUpTaskCannotMove) {
  ApplyAssignment(world_, Of({{0, 0}}));
  TransitionTask(world_, TaskId(0), TaskState::kPickedUp, AgentId(0));
  world_.agent(AgentId(0)).carrying = true;
  EXPECT_THROW(ApplyAssignment(world_, Of({{1, 0}})), LogicFault);
  EXPECT_THROW(ApplyAssignment(world_, Of({{0, 1}})), LogicFault);
  EXPECT_THROW(ApplyAssignment(world_, Of({})), LogicFault);
  EXPECT_TRUE(ApplyAssignment(world_, Of({{0, 0}})).empty());
}

TEST_F(ApplyAssignmentTest, RejectsNonInjectivePairs) {
  EXPECT_THROW(ApplyAssignment(world_, Of({{0, 0}, {0, 1}})), LogicFault);
  EXPECT_THROW(ApplyAssignment(world_, Of({{0, 0}, {1, 0}})), LogicFault);
}

TEST(EventKindTest, NamesRoundTrip) {
  for (EventKind k : {EventKind::kTaskSpawned, EventKind::kAuctionRun, EventKind::kTaskAssigned,
                      EventKind::kTaskReassigned, EventKind::kTaskPickedUp,
                      EventKind::kTaskDelivered, EventKind::kAgentIdle}) {
    EXPECT_EQ(ParseEventKind(ToString(k)), k);
  }
  EXPECT_FALSE(ParseEventKind("Teleported").has_value());
}

}  // namespace
}  // namespace qalloc
