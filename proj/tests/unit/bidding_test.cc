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

#include "qalloc/bidding.h"

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.h"

namespace qalloc {
namespace {

class BiddingTest : public ::testing::Test {
 protected:
  void SetUp() override {
    world_.map = ParseGridMap(
        "............\n"
        "............\n"
        "............\n"
        "............\n");
    AddStation(world_, {0, 0}, 0.0, 1);
    AddStation(world_, {0, 3}, 0.0, 1);
    AddAgent(world_, {0, 0}, 2);
    AddAgent(world_, {6, 2}, 2);
  }
  WorldState world_;
};

TEST_F(BiddingTest, AgentOnPickupBidsDropoffDistance) {
  const TaskId t = SpawnTask(world_, StationId(0), {5, 0});
  const auto bid = ComputeBid(world_.agent(AgentId(0)), world_.task(t), world_.map);
  ASSERT_TRUE(bid);
  EXPECT_DOUBLE_EQ(bid->c, 5.0);
  EXPECT_EQ(bid->k_bt, 1);
}

TEST_F(BiddingTest, CarrierBidsZeroForItsTask) {
  const TaskId t = SpawnTask(world_, StationId(0), {5, 0});
  TransitionTask(world_, t, TaskState::kAssigned, AgentId(0));
  TransitionTask(world_, t, TaskState::kPickedUp);
  world_.agent(AgentId(0)).position = {2, 2};
  const auto bid = ComputeBid(world_.agent(AgentId(0)), world_.task(t), world_.map);
  ASSERT_TRUE(bid);
  EXPECT_EQ(bid->c, 0.0);
  EXPECT_EQ(bid->k_bt, 0);
}

TEST_F(BiddingTest, UnreachablePairHasNoBid) {
  world_.map = ParseGridMap(
      "......#.....\n"
      "......#.....\n"
      "......#.....\n"
      "......#.....\n");
  const TaskId t = SpawnTask(world_, StationId(0), {10, 0});
  EXPECT_FALSE(ComputeBid(world_.agent(AgentId(0)), world_.task(t), world_.map).has_value());
  const PathCostTable costs(world_.map);
  EXPECT_TRUE(AssembleEdges(world_, PenaltyParams{}, costs).empty());
}

TEST_F(BiddingTest, BidIsSumOfTwoOracleLegs) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 30; ++round) {
    WorldState w;
    w.map = BuildRiskLayer(testing::RandomMap(rng, 12, 10, 0.2), 2, 1.0);
    std::vector<Cell> free;
    for (std::size_t i = 0; i < w.map.cell_count(); ++i) {
      if (w.map.IsFree(w.map.CellAt(i))) free.push_back(w.map.CellAt(i));
    }
    if (free.size() < 3) continue;
    std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
    AddStation(w, free[pick(rng)], 0.0, 1);
    AddAgent(w, free[pick(rng)], 2);
    const TaskId t = SpawnTask(w, StationId(0), free[pick(rng)]);
    const Agent& a = w.agent(AgentId(0));
    const Task& task = w.task(t);
    const double leg1 = testing::OracleShortestPath(w.map, a.position, task.pickup);
    const double leg2 = testing::OracleShortestPath(w.map, task.pickup, task.dropoff);
    const auto bid = ComputeBid(a, task, w.map);
    if (leg1 == testing::kOracleInf || leg2 == testing::kOracleInf) {
      EXPECT_FALSE(bid.has_value());
      continue;
    }
    ASSERT_TRUE(bid);
    EXPECT_NEAR(bid->c, leg1 + leg2, 1e-9);
    const PathCostTable costs(w.map);
    EXPECT_NEAR(ComputeBid(a, task, costs)->c, leg1 + leg2, 1e-9);
  }
}

TEST(PenaltyTest, QueuePenalty) {
  Station s;
  EXPECT_EQ(QueuePenalty(s, PenaltyParams{10000, 100}), 0.0);
  s.queue = {TaskId(0), TaskId(1), TaskId(2)};
  EXPECT_EQ(QueuePenalty(s, PenaltyParams{10000, 100}), 30000.0);
  EXPECT_EQ(QueuePenalty(s, PenaltyParams{0, 100}), 0.0);
}

TEST(PenaltyTest, WaitingPenalty) {
  Task t;
  t.arrival_time = 10;
  EXPECT_EQ(WaitingPenalty(t, 10, PenaltyParams{10000, 100}), 0.0);
  EXPECT_EQ(WaitingPenalty(t, 17, PenaltyParams{10000, 100}), 700.0);
  EXPECT_EQ(WaitingPenalty(t, 500, PenaltyParams{10000, 0}), 0.0);
}

TEST(PenaltyTest, TotalCountMode) {
  Task t;
  t.arrival_time = 10;
  const PenaltyParams p{10000, 100, TauMode::kTotalCount};
  EXPECT_EQ(WaitingPenalty(t, 17, p, 4), 400.0);
  EXPECT_EQ(ParseTauMode("total_count"), TauMode::kTotalCount);
  EXPECT_EQ(ParseTauMode("elapsed_time"), TauMode::kElapsedTime);
  EXPECT_FALSE(ParseTauMode("seconds").has_value());
  EXPECT_EQ(ToString(TauMode::kTotalCount), "total_count");
}

TEST_F(BiddingTest, NoTasksNoEdges) {
  const PathCostTable costs(world_.map);
  EXPECT_TRUE(AssembleEdges(world_, PenaltyParams{}, costs).empty());
}

TEST_F(BiddingTest, FullBipartiteWhenAllReachable) {
  SpawnTask(world_, StationId(0), {11, 0});
  SpawnTask(world_, StationId(0), {11, 1});
  SpawnTask(world_, StationId(1), {11, 3});
  const PathCostTable costs(world_.map);
  const auto edges = AssembleEdges(world_, PenaltyParams{}, costs);
  EXPECT_EQ(edges.size(), 6u);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    EXPECT_LT(std::tie(edges[i - 1].agent, edges[i - 1].task),
              std::tie(edges[i].agent, edges[i].task));
  }
}

// Hand enumeration: agent 0 carries task 0, agent 1 is free, task 1 is
// queued. Eligible pairs are (0,0) locked and (1,1); task 0 is not open so
// agent 1 cannot bid on it, and agent 0 bids on nothing else.
TEST_F(BiddingTest, CarrierContributesOnlyItsOwnEdge) {
  const TaskId t0 = SpawnTask(world_, StationId(0), {11, 0});
  const TaskId t1 = SpawnTask(world_, StationId(1), {11, 3});
  TransitionTask(world_, t0, TaskState::kAssigned, AgentId(0));
  TransitionTask(world_, t0, TaskState::kPickedUp);
  const PathCostTable costs(world_.map);
  const auto edges = AssembleEdges(world_, PenaltyParams{}, costs);
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0].agent, AgentId(0));
  EXPECT_EQ(edges[0].task, t0);
  EXPECT_TRUE(edges[0].locked);
  EXPECT_EQ(edges[0].bid, 0.0);
  EXPECT_EQ(edges[1].agent, AgentId(1));
  EXPECT_EQ(edges[1].task, t1);
  EXPECT_FALSE(edges[1].locked);
}

TEST_F(BiddingTest, NoPenaltiesMeansBareTravelCost) {
  SpawnTask(world_, StationId(0), {11, 0});
  world_.clock = 40;
  SpawnTask(world_, StationId(1), {11, 3});
  const PathCostTable costs(world_.map);
  for (const EdgeCost& e : AssembleEdges(world_, PenaltyParams{0, 0}, costs)) {
    EXPECT_EQ(e.cost, e.bid);
  }
}

// Cost relieves penalties: for fixed geometry it is non-increasing in queue
// length and in waiting time.
TEST_F(BiddingTest, CostFallsAsQueueAndWaitGrow) {
  const TaskId t = SpawnTask(world_, StationId(0), {11, 0});
  const PathCostTable costs(world_.map);
  const PenaltyParams p{10000, 100};
  double previous = AssembleEdges(world_, p, costs)[0].cost;
  for (int k = 1; k <= 5; ++k) {
    SpawnTask(world_, StationId(0), {11, 1});
    const auto edges = AssembleEdges(world_, p, costs);
    EXPECT_EQ(edges[0].task, t);
    EXPECT_LE(edges[0].cost, previous);
    EXPECT_DOUBLE_EQ(previous - edges[0].cost, 10000.0);
    previous = edges[0].cost;
  }
  for (int k = 1; k <= 5; ++k) {
    world_.clock += 3;
    const double cost = AssembleEdges(world_, p, costs)[0].cost;
    EXPECT_DOUBLE_EQ(previous - cost, 300.0);
    previous = cost;
  }
}

}  // namespace
}  // namespace qalloc
