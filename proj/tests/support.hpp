#pragma once

#include <string>
#include <vector>

#include "hypersonic/action.hpp"
#include "hypersonic/game_state.hpp"
#include "hypersonic/map_generator.hpp"
#include "hypersonic/random.hpp"
#include "hypersonic/reference_engine.hpp"

namespace hypersonic::test {

// Builds a state from 11 rows of grid characters; players go on the given cells.
inline GameState state_from_rows(const std::vector<std::string>& rows, const std::vector<Pos>& players) {
  GameState s;
  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      const char c = rows[y][x];
      Cell& cell = s.grid[y][x];
      if (c == 'X') cell.kind = CellKind::Wall;
      else if (c >= '0' && c <= '2') cell = {CellKind::Box, static_cast<ItemKind>(c - '0')};
      else cell.kind = CellKind::Floor;
    }
  }
  for (std::size_t i = 0; i < players.size(); ++i) {
    Player p;
    p.id = static_cast<int>(i);
    p.pos = players[i];
    s.players.push_back(p);
  }
  if (s.box_count() == 0) s.post_box_countdown = kCountdownTurns;
  return s;
}

inline GameState open_board(const std::vector<Pos>& players) {
  GameState s = make_initial_state(empty_grid(), 0);
  for (std::size_t i = 0; i < players.size(); ++i) {
    Player p;
    p.id = static_cast<int>(i);
    p.pos = players[i];
    s.players.push_back(p);
  }
  return s;
}

inline void add_bomb(GameState& s, int owner, Pos pos, int timer, int range) {
  s.bombs.push_back({owner, pos, timer, range});
  std::sort(s.bombs.begin(), s.bombs.end(),
            [](const Bomb& a, const Bomb& b) { return cell_index(a.pos) < cell_index(b.pos); });
  if (owner < static_cast<int>(s.players.size())) {
    // Keep available + placed = max_bombs for the owner.
    Player& p = s.players[owner];
    if (p.bombs_available > 0) --p.bombs_available;
    else ++p.max_bombs;
  }
}

inline void add_item(GameState& s, ItemKind kind, Pos pos) {
  s.items.push_back({kind, pos});
  std::sort(s.items.begin(), s.items.end(),
            [](const Item& a, const Item& b) { return cell_index(a.pos) < cell_index(b.pos); });
}

inline void put_box(GameState& s, Pos pos, ItemKind content = ItemKind::None) {
  s.at(pos) = {CellKind::Box, content};
  s.post_box_countdown.reset();
}

// Uniformly random legal action for every living player, via the reference engine.
inline JointAction random_joint_action(const GameState& s, Rng& rng) {
  JointAction joint{};
  const GameState resolved = resolve_explosions(s).first;
  for (const auto& p : s.players) {
    if (!p.alive) continue;
    const auto legal = legal_actions_resolved(resolved, p.id);
    if (!legal.empty()) joint[p.id] = legal[uniform_below(rng, static_cast<int>(legal.size()))];
  }
  return joint;
}

// Random reachable state: a generated map advanced by random legal play.
inline GameState random_reachable_state(Rng& rng, int players, int max_turns) {
  for (;;) {
    MapSpec spec;
    spec.seed = rng();
    spec.players = players;
    GameState s = generate_map(spec);
    const int turns = uniform_below(rng, max_turns + 1);
    bool ended = false;
    for (int t = 0; t < turns; ++t) {
      s = step(s, random_joint_action(s, rng)).first;
      if (is_terminal(s)) {
        ended = true;
        break;
      }
    }
    if (!ended) return s;
  }
}

// States with a threatened player: random play followed by bombs dropped near someone.
inline GameState threatened_state(Rng& rng) {
  for (;;) {
    GameState s = random_reachable_state(rng, 2 + uniform_below(rng, 3), 40);
    const int victim = uniform_below(rng, static_cast<int>(s.players.size()));
    if (!s.players[victim].alive) continue;
    for (int k = 0; k < 3; ++k) {
      const Pos c{s.players[victim].pos.x + uniform_below(rng, 5) - 2, s.players[victim].pos.y + uniform_below(rng, 5) - 2};
      if (!in_grid(c) || s.at(c).kind != CellKind::Floor || s.bomb_at(c) || s.item_at(c)) continue;
      add_bomb(s, uniform_below(rng, static_cast<int>(s.players.size())), c, 1 + uniform_below(rng, 8), 2 + uniform_below(rng, 4));
    }
    return s;
  }
}

}  // namespace hypersonic::test
