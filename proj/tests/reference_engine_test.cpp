#include "hypersonic/reference_engine.hpp"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"
#include "support.hpp"

namespace hypersonic {
namespace {

using test::add_bomb;
using test::add_item;
using test::open_board;
using test::put_box;

std::set<Pos> as_set(const std::vector<Pos>& v) { return {v.begin(), v.end()}; }

// Independent enumeration of a blast on a board without boxes, items or bombs.
std::set<Pos> enumerate_open_blast(Pos origin, int range) {
  std::set<Pos> cells{origin};
  const int dx[] = {0, 0, -1, 1};
  const int dy[] = {-1, 1, 0, 0};
  for (int d = 0; d < 4; ++d) {
    for (int k = 1; k < range; ++k) {
      const Pos p{origin.x + dx[d] * k, origin.y + dy[d] * k};
      if (p.x < 0 || p.x >= 13 || p.y < 0 || p.y >= 11 || (p.x % 2 == 1 && p.y % 2 == 1)) break;
      cells.insert(p);
    }
  }
  return cells;
}

TEST(LegalActions, CornerStartHasSixActions) {
  const GameState s = open_board({{0, 0}, {12, 10}});
  const auto actions = legal_actions(s, 0);
  EXPECT_EQ(actions.size(), 6u);
  for (Action a : actions) EXPECT_TRUE(a.move == Move::Stay || a.move == Move::Right || a.move == Move::Down);
}

TEST(LegalActions, NoBombsMeansNoDrop) {
  GameState s = open_board({{4, 4}, {12, 10}});
  s.players[0].bombs_available = 0;
  for (Action a : legal_actions(s, 0)) EXPECT_FALSE(a.drop);
}

TEST(LegalActions, BoxedInByBombsOnlyStays) {
  GameState s = open_board({{2, 2}, {12, 10}});
  s.players[0].bombs_available = 0;
  for (Pos p : {Pos{1, 2}, Pos{3, 2}, Pos{2, 1}, Pos{2, 3}}) add_bomb(s, 1, p, 5, 3);

  // Enumerate the rule predicate over all ten candidates.
  std::vector<Action> expected;
  for (int code = 0; code < kActionCount; ++code) {
    const Action a = Action::from_code(code);
    const Pos t = step_toward(s.players[0].pos, a.move);
    const bool move_ok = a.move == Move::Stay || (in_grid(t) && !is_wall(t) && s.bomb_at(t) == nullptr);
    const bool drop_ok = !a.drop || (s.players[0].bombs_available > 0 && s.bomb_at(s.players[0].pos) == nullptr);
    if (move_ok && drop_ok) expected.push_back(a);
  }
  EXPECT_EQ(legal_actions(s, 0), expected);
  EXPECT_EQ(legal_actions(s, 0), std::vector<Action>{Action::stay()});
}

TEST(LegalActions, DeadOrUnknownPlayerHasNone) {
  GameState s = open_board({{0, 0}, {12, 10}});
  s.players[1].alive = false;
  EXPECT_TRUE(legal_actions(s, 1).empty());
  EXPECT_TRUE(legal_actions(s, 7).empty());
  EXPECT_TRUE(legal_actions(s, -1).empty());
}

TEST(LegalActions, CellFreedByThisTurnsExplosionIsEnterable) {
  GameState s = open_board({{0, 0}, {12, 10}});
  add_bomb(s, 1, {4, 0}, 1, 1);
  s.players[0].pos = {3, 0};
  const auto actions = legal_actions(s, 0);
  EXPECT_NE(std::find(actions.begin(), actions.end(), Action{Move::Right, false}), actions.end());
}

TEST(BlastCells, OpenCellsMatchEnumeration) {
  const GameState s = open_board({{0, 0}, {12, 10}});
  // (6,5) sits between two walls, so only the vertical arms exist.
  EXPECT_EQ(as_set(blast_cells(s, {0, {6, 5}, 8, 3})), enumerate_open_blast({6, 5}, 3));
  EXPECT_EQ(blast_cells(s, {0, {6, 5}, 8, 3}).size(), 5u);
  EXPECT_EQ(blast_cells(s, {0, {6, 4}, 8, 3}).size(), 9u);
  EXPECT_EQ(as_set(blast_cells(s, {0, {0, 0}, 8, 3})), (std::set<Pos>{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}}));
}

TEST(BlastCells, BoxStopsArmInclusive) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {7, 4});
  const auto cells = as_set(blast_cells(s, {0, {6, 4}, 8, 3}));
  EXPECT_TRUE(cells.count({7, 4}));
  EXPECT_FALSE(cells.count({8, 4}));
}

TEST(BlastCells, RangeOneIsOwnCell) {
  const GameState s = open_board({{0, 0}, {12, 10}});
  EXPECT_EQ(blast_cells(s, {0, {4, 4}, 8, 1}), (std::vector<Pos>{{4, 4}}));
}

TEST(BlastCells, ItemsAndBombsStopArms) {
  GameState s = open_board({{0, 0}, {12, 10}});
  add_item(s, ItemKind::ExtraBomb, {4, 2});
  add_bomb(s, 1, {6, 4}, 6, 3);
  const auto cells = as_set(blast_cells(s, {0, {4, 4}, 8, 5}));
  EXPECT_TRUE(cells.count({4, 2}));
  EXPECT_FALSE(cells.count({4, 1}));
  EXPECT_TRUE(cells.count({6, 4}));
  EXPECT_FALSE(cells.count({7, 4}));
}

TEST(ResolveExplosions, ChainReaction) {
  GameState s = open_board({{0, 0}, {12, 10}});
  add_bomb(s, 0, {4, 4}, 1, 3);
  add_bomb(s, 1, {6, 4}, 5, 3);
  const auto [next, events] = resolve_explosions(s);
  EXPECT_TRUE(next.bombs.empty());
  EXPECT_EQ(events.bombs_exploded, 2);
  EXPECT_EQ(next.players[0].bombs_available, 1);
  EXPECT_EQ(next.players[1].bombs_available, 1);
}

TEST(ResolveExplosions, OnlyTimersDecrementWithoutExplosion) {
  GameState s = open_board({{0, 0}, {12, 10}});
  add_bomb(s, 0, {4, 4}, 3, 3);
  add_bomb(s, 1, {8, 8}, 7, 3);
  auto [next, events] = resolve_explosions(s);
  EXPECT_EQ(events, TurnEvents{});
  EXPECT_EQ(next.bombs[0].timer, 2);
  EXPECT_EQ(next.bombs[1].timer, 6);
  next.bombs[0].timer = 3;
  next.bombs[1].timer = 7;
  EXPECT_EQ(next, s);
}

TEST(ResolveExplosions, DestroyedBoxReleasesItem) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {5, 4}, ItemKind::ExtraRange);
  add_bomb(s, 0, {4, 4}, 1, 3);
  const auto [next, events] = resolve_explosions(s);
  EXPECT_EQ(next.at({5, 4}).kind, CellKind::Floor);
  ASSERT_NE(next.item_at({5, 4}), nullptr);
  EXPECT_EQ(next.item_at({5, 4})->kind, ItemKind::ExtraRange);
  EXPECT_EQ(next.players[0].boxes_destroyed, 1);
  EXPECT_EQ(events.boxes_destroyed_by[0], 1);
  EXPECT_EQ(events.items_spawned, 1);
}

TEST(ResolveExplosions, BoxHitByTwoOwnersCreditsBoth) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {4, 4});
  add_bomb(s, 0, {2, 4}, 1, 3);
  add_bomb(s, 1, {6, 4}, 1, 3);
  const auto [next, events] = resolve_explosions(s);
  EXPECT_EQ(next.players[0].boxes_destroyed, 1);
  EXPECT_EQ(next.players[1].boxes_destroyed, 1);
  EXPECT_EQ(events.boxes_destroyed, 1);
}

TEST(Step, SimultaneousPickupBothCollect) {
  GameState s = open_board({{3, 4}, {5, 4}});
  add_item(s, ItemKind::ExtraBomb, {4, 4});
  const auto [next, events] = step(s, {Action{Move::Right, false}, Action{Move::Left, false}});
  for (const auto& p : next.players) {
    EXPECT_EQ(p.pos, (Pos{4, 4}));
    EXPECT_EQ(p.max_bombs, 2);
    EXPECT_EQ(p.bombs_available, 2);
  }
  EXPECT_TRUE(next.items.empty());
  EXPECT_EQ(events.bomb_pickups[0], 1);
  EXPECT_EQ(events.bomb_pickups[1], 1);
}

TEST(Step, DropThenMoveAway) {
  const GameState s = open_board({{2, 2}, {12, 10}});
  const auto [next, events] = step(s, {Action{Move::Right, true}, Action::stay()});
  ASSERT_EQ(next.bombs.size(), 1u);
  EXPECT_EQ(next.bombs[0].pos, (Pos{2, 2}));
  EXPECT_EQ(next.bombs[0].timer, kBombTimer);
  EXPECT_EQ(next.players[0].pos, (Pos{3, 2}));
  EXPECT_EQ(next.players[0].bombs_available, 0);
}

TEST(Step, AllStayOnlyAdvancesTurn) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {6, 4});
  auto [next, events] = step(s, {});
  EXPECT_EQ(next.turn, 1);
  EXPECT_EQ(events, TurnEvents{});
  next.turn = 0;
  EXPECT_EQ(next, s);
}

TEST(Step, BombExplodesEightTurnsAfterPlacement) {
  GameState s = open_board({{2, 2}, {12, 10}});
  s = step(s, {Action{Move::Stay, true}, Action::stay()}).first;
  s = step(s, {Action{Move::Right, false}, Action::stay()}).first;
  s = step(s, {Action{Move::Right, false}, Action::stay()}).first;
  s = step(s, {Action{Move::Down, false}, Action::stay()}).first;
  for (int t = 0; t < 4; ++t) s = step(s, {}).first;
  ASSERT_EQ(s.bombs.size(), 1u);
  EXPECT_EQ(s.bombs[0].timer, 1);
  s = step(s, {}).first;
  EXPECT_TRUE(s.bombs.empty());
  EXPECT_EQ(s.players[0].bombs_available, 1);
  EXPECT_TRUE(s.players[0].alive);
}

TEST(Step, StandingInBlastKills) {
  GameState s = open_board({{4, 4}, {12, 10}});
  add_bomb(s, 1, {4, 2}, 1, 3);
  const auto [next, events] = step(s, {Action{Move::Right, false}, Action::stay()});
  EXPECT_FALSE(next.players[0].alive);
  EXPECT_EQ(next.players[0].pos, (Pos{4, 4}));
  EXPECT_EQ(next.players[0].elimination_turn, 0);
  EXPECT_EQ(events.killed_mask, 1);
}

TEST(Step, SameCellDropPlacesOneBomb) {
  GameState s = open_board({{4, 4}, {4, 4}});
  const auto [next, events] = step(s, {Action{Move::Stay, true}, Action{Move::Stay, true}});
  ASSERT_EQ(next.bombs.size(), 1u);
  EXPECT_EQ(next.bombs[0].owner, 0);
  EXPECT_EQ(next.players[1].bombs_available, 1);
}

TEST(Step, CountdownStartsWhenBoxesRunOut) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {6, 4});
  add_bomb(s, 0, {6, 6}, 1, 3);
  s = step(s, {}).first;
  ASSERT_TRUE(s.post_box_countdown.has_value());
  EXPECT_EQ(*s.post_box_countdown, kCountdownTurns);
  for (int t = 0; t < kCountdownTurns; ++t) {
    EXPECT_FALSE(is_terminal(s).has_value());
    s = step(s, {}).first;
  }
  EXPECT_EQ(*s.post_box_countdown, 0);
  EXPECT_TRUE(is_terminal(s).has_value());
}

TEST(IsTerminal, SingleSurvivorFirst) {
  GameState s = open_board({{0, 0}, {12, 10}, {12, 0}});
  s.players[1].alive = false;
  s.players[1].elimination_turn = 10;
  s.players[2].alive = false;
  s.players[2].elimination_turn = 20;
  const auto ranking = is_terminal(s);
  ASSERT_TRUE(ranking);
  EXPECT_EQ(ranking->groups, (std::vector<std::vector<int>>{{0}, {2}, {1}}));
}

TEST(IsTerminal, SameBlastDeathBrokenByBoxes) {
  GameState s = open_board({{4, 4}, {4, 6}});
  s.players[0].boxes_destroyed = 12;
  s.players[1].boxes_destroyed = 9;
  add_bomb(s, 0, {4, 5}, 1, 3);
  s = step(s, {}).first;
  const auto ranking = is_terminal(s);
  ASSERT_TRUE(ranking);
  EXPECT_EQ(ranking->groups, (std::vector<std::vector<int>>{{0}, {1}}));
}

TEST(IsTerminal, TurnLimitTie) {
  GameState s = open_board({{0, 0}, {12, 10}});
  put_box(s, {6, 4});
  s.turn = kTurnLimit;
  const auto ranking = is_terminal(s);
  ASSERT_TRUE(ranking);
  EXPECT_EQ(ranking->groups, (std::vector<std::vector<int>>{{0, 1}}));
  s.turn = kTurnLimit - 1;
  EXPECT_FALSE(is_terminal(s));
}

// Property checks over random legal play.
TEST(ReferenceProperties, RandomPlayoutInvariants) {
  Rng rng(7);
  for (int game = 0; game < 40; ++game) {
    MapSpec spec;
    spec.seed = 1000 + game;
    spec.players = 2 + game % 3;
    GameState s = generate_map(spec);
    const int initial_boxes = s.box_count();
    int destroyed = 0;
    int collected = 0;
    while (!is_terminal(s)) {
      const JointAction joint = test::random_joint_action(s, rng);
      const GameState resolved = resolve_explosions(s).first;
      auto [next, events] = step(s, joint);
      destroyed += events.boxes_destroyed;
      for (int p = 0; p < kMaxPlayers; ++p) collected += events.range_pickups[p] + events.bomb_pickups[p];

      EXPECT_EQ(destroyed + next.box_count(), initial_boxes);
      int upgrades = 0;
      for (const auto& p : next.players) {
        upgrades += p.max_bombs - 1 + p.range - kInitialRange;
        EXPECT_EQ(next.at(p.pos).kind, CellKind::Floor);
        EXPECT_LE(p.bombs_available, p.max_bombs);
        if (p.alive && p.pos != s.players[p.id].pos) EXPECT_EQ(resolved.bomb_at(p.pos), nullptr);
      }
      EXPECT_EQ(upgrades, collected);
      for (const auto& b : next.bombs) {
        EXPECT_GE(b.timer, 1);
        EXPECT_LE(b.timer, kBombTimer);
      }
      s = std::move(next);
    }
  }
}

TEST(ReferenceProperties, BlastArmsAreContiguousAndBounded) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const GameState s = test::random_reachable_state(rng, 2 + i % 3, 30);
    for (const auto& bomb : s.bombs) {
      const auto cells = blast_cells(s, bomb);
      EXPECT_EQ(cells.front(), bomb.pos);
      std::array<int, 4> arm{};
      for (std::size_t k = 1; k < cells.size(); ++k) {
        const Pos d{cells[k].x - bomb.pos.x, cells[k].y - bomb.pos.y};
        const int dir = d.y < 0 ? 0 : d.y > 0 ? 1 : d.x < 0 ? 2 : 3;
        ++arm[dir];
        EXPECT_EQ(std::abs(d.x) + std::abs(d.y), arm[dir]);  // next cell outward
      }
      for (int n : arm) EXPECT_LE(n, bomb.range - 1);
    }
  }
}

TEST(ReferenceProperties, ReplayIsDeterministic) {
  Rng rng(3);
  MapSpec spec;
  spec.seed = 99;
  spec.players = 4;
  const GameState start = generate_map(spec);
  std::vector<JointAction> log;
  GameState s = start;
  while (!is_terminal(s)) {
    log.push_back(test::random_joint_action(s, rng));
    s = step(s, log.back()).first;
  }
  GameState replayed = start;
  for (const auto& joint : log) replayed = step(replayed, joint).first;
  EXPECT_EQ(replayed, s);
}

}  // namespace
}  // namespace hypersonic
