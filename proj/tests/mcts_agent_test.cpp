#include "hypersonic/mcts_agent.hpp"

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "support.hpp"

namespace hypersonic {
namespace {

using test::open_board;
using test::put_box;

TEST(MctsParams, Defaults) {
  const MctsParams p;
  EXPECT_EQ(p.uct_c, 1.0);
  EXPECT_EQ(p.rollout_depth, 15);
  EXPECT_EQ(p.gamma, 0.98);
  EXPECT_EQ(p.value_scale, 1.0 / 400.0);
  EXPECT_EQ(p.reward_scale, 50.0);
  EXPECT_EQ(p.survival_base, 200.0);
}

TEST(MctsValue, DocumentedExamples) {
  EXPECT_EQ(mcts_value(true, 123.0, 10), 0.0);
  EXPECT_NEAR(mcts_value(false, 0.0, 0), 0.5, 1e-9);
  EXPECT_NEAR(mcts_value(false, 1 * 50 * 0.98, 30), (49.0 + 170.0) / 400.0, 1e-9);
}

TEST(MctsRoundReward, BoxesAndCappedBombPickups) {
  TurnEvents e;
  e.boxes_destroyed_by[1] = 2;
  e.bomb_pickups[1] = 1;
  e.range_pickups[1] = 1;
  EXPECT_EQ(mcts_round_reward(e, 1, 2), 3.0);
  EXPECT_EQ(mcts_round_reward(e, 1, 4), 3.0);  // was at 3 before the pickup
  EXPECT_EQ(mcts_round_reward(e, 1, 5), 2.0);
  EXPECT_EQ(mcts_round_reward(e, 0, 1), 0.0);
}

TEST(BoxDistance, SumsManhattan) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {2, 0});
  put_box(s, {0, 4});
  EXPECT_EQ(box_distance_sum(from_state(s), 0), 6);
  EXPECT_EQ(box_distance_sum(from_state(s), 1), 20 + 18);
}

TEST(FinalChoice, MaxVersusMean) {
  const std::vector<RootChildStats> stats{
      {{Move::Left, false}, 10, 0.40, 0.90},
      {{Move::Right, false}, 30, 0.60, 0.70},
  };
  EXPECT_EQ(final_choice(stats, true), 0);
  EXPECT_EQ(final_choice(stats, false), 1);
  const std::vector<RootChildStats> tied{
      {{Move::Right, false}, 5, 0.5, 0.8},
      {{Move::Up, false}, 5, 0.5, 0.8},
      {{Move::Down, false}, 9, 0.5, 0.8},
  };
  EXPECT_EQ(final_choice(tied, true), 2);
  const std::vector<RootChildStats> same{
      {{Move::Right, false}, 5, 0.5, 0.8},
      {{Move::Up, false}, 5, 0.5, 0.8},
  };
  EXPECT_EQ(final_choice(same, true), 1);
}

TEST(RootPrune, OpenBoardKeepsAll) {
  const BitState b = from_state(open_board({{4, 4}, {8, 4}}));
  EXPECT_EQ(root_prune(b, 0, {}), bit_legal_actions(b, 0));
}

// Corridor (0,0)-(2,0) whose exit (3,0) holds an enemy with a long blast.
GameState corridor_state() {
  GameState s = open_board({{2, 0}, {3, 0}});
  put_box(s, {0, 1});
  put_box(s, {2, 1});
  s.players[1].range = 4;
  return s;
}

TEST(RootPrune, TrappedDirectionPruned) {
  const GameState s = corridor_state();
  const ActionSet allowed = root_prune(from_state(s), 0, {});
  EXPECT_FALSE(allowed.contains({Move::Left, false}));
  EXPECT_TRUE(allowed.contains({Move::Right, false}));
  for (const Action a : legal_actions(s, 0)) {
    JointAction joint{};
    joint[0] = a;
    const bool trapped = test::oracle_can_kill(step(s, joint).first, 1, 0);
    EXPECT_EQ(allowed.contains(a), !trapped) << to_string(a);
  }
}

TEST(RootPrune, AllTrappedFallsBackToLegal) {
  // Two-cell pocket already inside the blast of a bomb on (0,0).
  GameState s = open_board({{0, 0}, {6, 6}});
  put_box(s, {2, 0});
  put_box(s, {0, 1});
  test::add_bomb(s, 1, {0, 0}, 3, 3);
  const BitState b = from_state(s);
  EXPECT_EQ(root_prune(b, 0, {}), bit_legal_actions(b, 0));
}

TEST(MctsAgent, NeverWalksIntoTheTrap) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MctsAgent agent(seed);
    const SearchResult r = agent.search(from_state(corridor_state()), 0, Budget::iters(1500), {});
    EXPECT_NE(r.action.move, Move::Left);
    EXPECT_NE(r.action.move, Move::Stay);
  }
}

TEST(MctsAgent, SingleLegalActionReturnedImmediately) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {1, 0});
  put_box(s, {0, 1});
  s.players[0].bombs_available = 0;
  MctsAgent agent(1);
  const SearchResult r = agent.search(from_state(s), 0, Budget::iters(1000), {});
  EXPECT_EQ(r.action, Action::stay());
  EXPECT_EQ(r.stats.iterations, 0);
}

TEST(MctsAgent, RootValuesBoundedAndMaxAboveMean) {
  Rng rng(61);
  for (int i = 0; i < 15; ++i) {
    const BitState b = from_state(test::random_reachable_state(rng, 2 + i % 3, 50));
    if (!b.players[0].alive) continue;
    MctsAgent agent(i);
    const SearchResult r = agent.search(b, 0, Budget::iters(1500), {});
    EXPECT_TRUE(bit_legal_actions(b, 0).contains(r.action) || bit_legal_actions(b, 0).empty());
    for (const RootChildStats& c : agent.last_root()) {
      EXPECT_GE(c.mean, 0.0);
      EXPECT_LE(c.max, 1.5);
      EXPECT_GE(c.max + 1e-12, c.mean);
    }
  }
}

TEST(MctsAgent, FinalByMeanChangesChoiceSomewhere) {
  Rng rng(67);
  int differ = 0;
  for (int i = 0; i < 30 && differ == 0; ++i) {
    const BitState b = from_state(test::random_reachable_state(rng, 2, 40));
    if (!b.players[0].alive) continue;
    MctsParams by_mean;
    by_mean.final_by_max = false;
    MctsAgent x(9), y(9, by_mean);
    differ += x.search(b, 0, Budget::iters(1500), {}).action != y.search(b, 0, Budget::iters(1500), {}).action;
  }
  EXPECT_GT(differ, 0);
}

TEST(MctsAgent, DeterministicUnderIterationBudget) {
  Rng rng(71);
  for (int i = 0; i < 8; ++i) {
    const BitState b = from_state(test::random_reachable_state(rng, 2 + i % 3, 50));
    if (!b.players[0].alive) continue;
    MctsAgent x(3), y(3);
    const SearchResult rx = x.decide(b, 0, Budget::iters(2000));
    const SearchResult ry = y.decide(b, 0, Budget::iters(2000));
    EXPECT_EQ(rx.action, ry.action);
    EXPECT_EQ(rx.principal, ry.principal);
  }
}

TEST(MctsAgent, TreeDepthGrowsWithBudget) {
  const BitState b = from_state(open_board({{4, 4}, {12, 10}}));
  MctsAgent small(1), large(1);
  const int shallow = small.search(b, 0, Budget::iters(50), {}).stats.depth;
  const int deep = large.search(b, 0, Budget::iters(20000), {}).stats.depth;
  EXPECT_GT(deep, shallow);
  EXPECT_LE(deep, 15);
}

}  // namespace
}  // namespace hypersonic
