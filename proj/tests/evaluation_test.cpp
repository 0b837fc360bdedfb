#include "hypersonic/evaluation.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <sstream>

#include "gtest/gtest.h"
#include "hypersonic/reference_engine.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace hypersonic {
namespace {

using test::add_bomb;
using test::add_item;
using test::open_board;
using test::put_box;
using test::oracle_can_kill;
using test::oracle_estimated_bombs;
using test::oracle_survives;

EvalWeights only_own_components() {
  EvalWeights w;
  w.opponent_distance = 0;
  w.center_distance = 0;
  w.box_distance = 0;
  return w;
}

TEST(EstimatedBombs, NoBombsIsZero) {
  EXPECT_EQ(estimated_bombs(open_board({{0, 0}, {12, 10}}), 0, 0.95), 0.0);
}

TEST(EstimatedBombs, SingleFreshBomb) {
  GameState s = open_board({{0, 0}, {12, 10}});
  add_bomb(s, 0, {0, 2}, 8, 3);
  put_box(s, {0, 4});
  EXPECT_NEAR(estimated_bombs(s, 0, 0.95), std::pow(0.95, 8), 1e-12);
  EXPECT_NEAR(estimated_bombs(s, 0, 0.95), 0.6634, 1e-4);
  EXPECT_EQ(estimated_bombs(s, 1, 0.95), 0.0);
}

TEST(EstimatedBombs, ChainTriggeredEarly) {
  GameState s = open_board({{0, 0}, {12, 10}});
  add_bomb(s, 0, {4, 4}, 8, 3);
  add_bomb(s, 1, {6, 4}, 3, 3);
  put_box(s, {4, 2});
  put_box(s, {2, 4});
  EXPECT_NEAR(estimated_bombs(s, 0, 0.95), 2 * std::pow(0.95, 3), 1e-12);
  EXPECT_NEAR(estimated_bombs(s, 0, 0.95), 1.7148, 1e-4);
  EXPECT_NEAR(estimated_bombs(s, 0, 0.95, 2), 2 * std::pow(0.95, 5), 1e-12);
}

TEST(EstimatedBombs, MatchesFrozenSimulationOracle) {
  Rng rng(71);
  int with_boxes = 0;
  for (int i = 0; i < 1500; ++i) {
    const GameState s = test::random_reachable_state(rng, 2 + i % 3, 60);
    for (const auto& p : s.players) {
      const double expected = oracle_estimated_bombs(s, p.id, 0.95);
      const double got = estimated_bombs(s, p.id, 0.95);
      ASSERT_NEAR(got, expected, 1e-12) << debug_dump(s);
      ASSERT_EQ(got == 0.0, expected == 0.0);
      with_boxes += expected > 0;
    }
  }
  EXPECT_GT(with_boxes, 200);
}

TEST(IsSurvivable, EmptyBoard) { EXPECT_TRUE(is_survivable(open_board({{0, 0}, {12, 10}}), 0)); }

TEST(IsSurvivable, SealedPocket) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {0, 1});
  put_box(s, {1, 0});
  add_bomb(s, 0, {0, 0}, 1, 3);
  EXPECT_FALSE(is_survivable(s, 0));
  EXPECT_FALSE(oracle_survives(s, 0));
  s.bombs[0].timer = 6;
  EXPECT_FALSE(is_survivable(s, 0));
}

TEST(IsSurvivable, AdjacentBombCoversPocket) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {0, 1});
  add_bomb(s, 1, {1, 0}, 1, 3);
  EXPECT_FALSE(is_survivable(s, 0));
  EXPECT_FALSE(oracle_survives(s, 0));
}

TEST(IsSurvivable, DistantBomb) {
  GameState s = open_board({{0, 0}, {12, 10}});
  add_bomb(s, 1, {10, 10}, 1, 3);
  EXPECT_TRUE(is_survivable(s, 0));
}

TEST(IsSurvivable, OneSafeNeighbour) {
  GameState s = open_board({{2, 0}, {12, 10}});
  put_box(s, {3, 0});
  add_bomb(s, 1, {0, 0}, 2, 3);
  // (2,1) leads out of the blast; staying or going left is fatal.
  EXPECT_TRUE(is_survivable(s, 0));
  put_box(s, {2, 1});
  EXPECT_FALSE(is_survivable(s, 0));
  EXPECT_FALSE(oracle_survives(s, 0));
}

TEST(IsSurvivable, CollectedItemLetsRayThrough) {
  // The item at (3,0) shields (2,0) only while it lies there.
  GameState s = open_board({{1, 0}, {12, 10}});
  put_box(s, {0, 1});
  put_box(s, {2, 1});
  put_box(s, {4, 1});
  put_box(s, {5, 0});
  add_item(s, ItemKind::ExtraRange, {3, 0});
  add_bomb(s, 1, {4, 0}, 3, 4);
  add_bomb(s, 1, {0, 0}, 4, 2);
  EXPECT_EQ(is_survivable(s, 0), oracle_survives(s, 0));
}

TEST(IsSurvivable, MatchesExhaustiveSearch) {
  Rng rng(73);
  int unsafe = 0, checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const GameState s = test::random_reachable_state(rng, 2 + i % 3, 60);
    for (const auto& p : s.players) {
      if (!p.alive) continue;
      const bool expected = oracle_survives(s, p.id);
      ASSERT_EQ(is_survivable(s, p.id), expected) << "player " << p.id << "\n" << debug_dump(s);
      unsafe += !expected;
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
  EXPECT_GT(unsafe, 20);
}

TEST(IsSurvivable, MatchesExhaustiveSearchUnderThreat) {
  Rng rng(79);
  int unsafe = 0;
  for (int i = 0; i < 1500; ++i) {
    const GameState s = test::threatened_state(rng);
    for (const auto& p : s.players) {
      if (!p.alive) continue;
      const bool expected = oracle_survives(s, p.id);
      ASSERT_EQ(is_survivable(s, p.id), expected) << "player " << p.id << "\n" << debug_dump(s);
      unsafe += !expected;
    }
  }
  EXPECT_GT(unsafe, 100);
}

TEST(CanKill, FarApartOnOpenBoard) {
  EXPECT_FALSE(can_kill(open_board({{0, 0}, {10, 0}}), 0, 1));
  EXPECT_FALSE(can_kill(open_board({{0, 0}, {10, 0}}), 1, 0));
}

TEST(CanKill, DeadEndCorridor) {
  GameState s = open_board({{0, 2}, {0, 0}});
  put_box(s, {1, 0});
  EXPECT_TRUE(can_kill(s, 0, 1));
  EXPECT_TRUE(oracle_can_kill(s, 0, 1));
}

TEST(CanKill, NoBombsNoThreat) {
  GameState s = open_board({{0, 2}, {0, 0}});
  put_box(s, {1, 0});
  s.players[0].bombs_available = 0;
  EXPECT_FALSE(can_kill(s, 0, 1));
  EXPECT_FALSE(oracle_can_kill(s, 0, 1));
}

TEST(CanKill, DegenerateArguments) {
  const GameState s = open_board({{0, 0}, {1, 0}});
  EXPECT_FALSE(can_kill(s, 0, 0));
  EXPECT_FALSE(can_kill(s, 0, 5));
}

TEST(CanKill, MatchesMinimaxOracle) {
  Rng rng(83);
  int kills = 0, checked = 0;
  while (checked < 1000) {
    const GameState s = (checked % 2) ? test::threatened_state(rng) : test::random_reachable_state(rng, 2 + checked % 3, 60);
    for (const auto& a : s.players) {
      for (const auto& v : s.players) {
        if (a.id == v.id || !a.alive || !v.alive || manhattan(a.pos, v.pos) > 4) continue;
        const bool expected = oracle_can_kill(s, a.id, v.id);
        ASSERT_EQ(can_kill(s, a.id, v.id), expected) << a.id << " -> " << v.id << "\n" << debug_dump(s);
        kills += expected;
        ++checked;
      }
    }
  }
  EXPECT_GT(kills, 20);
}

TEST(Evaluate, FreshPlayerOwnComponents) {
  const GameState s = open_board({{0, 0}, {12, 10}});
  EXPECT_NEAR(evaluate(s, 0, {}, only_own_components()), 3.9, 1e-9);
}

TEST(Evaluate, RangeAndBombComponents) {
  GameState s = open_board({{0, 0}, {12, 10}});
  s.players[0].range = 6;
  s.players[0].max_bombs = 4;
  s.players[0].bombs_available = 4;
  EXPECT_NEAR(evaluate(s, 0, {}, only_own_components()), 6.9 + 14.0, 1e-9);
}

TEST(Evaluate, DeadPlayer) {
  GameState s = open_board({{0, 0}, {12, 10}});
  s.players[0].alive = false;
  EvalWeights w;
  w.per_box = w.range_capped = w.range_linear = w.bombs_cap2 = w.bombs_cap4 = w.bombs_linear = 0;
  w.opponent_distance = w.center_distance = w.box_distance = 0;
  EXPECT_EQ(evaluate(s, 0, {}, w), -1000.0);
}

TEST(Evaluate, PositionalComponents) {
  GameState s = open_board({{0, 0}, {12, 10}, {2, 0}});
  s.players[2].alive = false;
  // No boxes: only the opponent term, 0.05 * 22.
  EXPECT_NEAR(evaluate(s, 0, {}), 3.9 + 1.1, 1e-9);
  put_box(s, {4, 0});
  put_box(s, {0, 6});
  // Mean box distance (4 + 6) / 2.
  EXPECT_NEAR(evaluate(s, 0, {}), 3.9 + 1.1 - 0.5, 1e-9);

  MapSpec spec;
  spec.seed = 3;
  const GameState full = generate_map(spec);
  ASSERT_GT(full.box_count(), 20);
  const double expected = 3.9 + 0.05 * 22 - 0.04 * manhattan({0, 0}, kCenter);
  EXPECT_NEAR(evaluate(full, 0, {}), expected, 1e-9);
}

TEST(Evaluate, CountsContextBoxes) {
  const GameState s = open_board({{0, 0}, {12, 10}});
  EvalContext ctx;
  ctx.boxes_destroyed = 5;
  EXPECT_NEAR(evaluate(s, 0, ctx) - evaluate(s, 0, {}), 5.0, 1e-9);
}

TEST(Evaluate, MonotoneInBoxesAndRange) {
  Rng rng(89);
  for (int i = 0; i < 300; ++i) {
    GameState s = test::random_reachable_state(rng, 2 + i % 3, 60);
    const int p = uniform_below(rng, static_cast<int>(s.players.size()));
    EvalContext ctx;
    ctx.boxes_destroyed = uniform_below(rng, 20);
    const double base = evaluate(s, p, ctx);
    EvalContext more = ctx;
    ++more.boxes_destroyed;
    EXPECT_GT(evaluate(s, p, more), base);
    ++s.players[p].range;
    EXPECT_GT(evaluate(s, p, ctx), base);
  }
}

TEST(Evaluate, IsPure) {
  Rng rng(97);
  for (int i = 0; i < 200; ++i) {
    const GameState s = test::random_reachable_state(rng, 2 + i % 3, 60);
    const BitState b = from_state(s);
    EvalContext ctx;
    ctx.boxes_destroyed = i % 7;
    const double a = evaluate(b, 0, ctx);
    const double c = evaluate(b, 0, ctx);
    EXPECT_EQ(std::memcmp(&a, &c, sizeof a), 0);
    EXPECT_EQ(evaluate(s, 0, ctx), a);
  }
}

TEST(EvalContext, RecordsDecayedBoxes) {
  EvalContext ctx;
  TurnEvents e;
  e.boxes_destroyed_by[1] = 2;
  e.range_pickups[1] = 1;
  ctx.record(e, 1, 3, 0.95);
  ctx.record(e, 0, 4, 0.95);
  EXPECT_EQ(ctx.boxes_destroyed, 2);
  EXPECT_NEAR(ctx.decayed_boxes, 2 * std::pow(0.95, 3), 1e-12);
  EXPECT_LE(ctx.decayed_boxes, ctx.boxes_destroyed);
  EXPECT_EQ(ctx.range_pickups, 1);
}

TEST(EvalWeightsFile, DefaultsAndOverrides) {
  std::istringstream empty("");
  EXPECT_EQ(parse_weights(empty), EvalWeights{});
  std::istringstream in("# tuned\n gamma = 0.9\nbox_threshold=12\n\ndeath = -500 # harsher\n");
  const EvalWeights w = parse_weights(in);
  EXPECT_EQ(w.gamma, 0.9);
  EXPECT_EQ(w.box_threshold, 12);
  EXPECT_EQ(w.death, -500.0);
  EXPECT_EQ(w.per_box, 1.0);
}

TEST(EvalWeightsFile, RejectsBadInput) {
  std::istringstream unknown("speed = 3\n");
  EXPECT_THROW(parse_weights(unknown), std::runtime_error);
  std::istringstream malformed("gamma 0.9\n");
  EXPECT_THROW(parse_weights(malformed), std::runtime_error);
  std::istringstream bad_value("gamma = fast\n");
  EXPECT_THROW(parse_weights(bad_value), std::runtime_error);
  EXPECT_THROW(load_weights_file("/nonexistent/weights.cfg"), std::runtime_error);
}

}  // namespace
}  // namespace hypersonic
