#include "hypersonic/bit_engine.hpp"

#include <algorithm>
#include <cstdlib>

namespace hypersonic {
namespace {

constexpr Move kRayMoves[] = {Move::Up, Move::Down, Move::Left, Move::Right};

constexpr bool increasing(int dir) { return dir == static_cast<int>(RayDir::Down) || dir == static_cast<int>(RayDir::Right); }
constexpr bool horizontal(int dir) { return dir >= static_cast<int>(RayDir::Left); }

}  // namespace

BlastMaskTable precompute_masks() {
  BlastMaskTable t;
  for (int c = 0; c < kCells; ++c) {
    for (int d = 0; d < 4; ++d) {
      Pos p = cell_pos(c);
      BitPlane acc;
      int len = 0;
      t.arm[c][d][0] = acc;
      while (len < BlastMaskTable::kMaxArm) {
        p = step_toward(p, kRayMoves[d]);
        if (!in_grid(p) || is_wall(p)) break;
        acc.set(cell_index(p));
        ++len;
        t.arm[c][d][len] = acc;
      }
      for (int k = len + 1; k <= BlastMaskTable::kMaxArm; ++k) t.arm[c][d][k] = acc;
      t.ray_length[c][d] = static_cast<std::uint8_t>(len);
    }
    for (int r = 1; r <= kMaxMaskRange; ++r) {
      BitPlane cross = BitPlane::single(c);
      for (int d = 0; d < 4; ++d) cross |= t.arm[c][d][r - 1];
      t.cross[c][r] = cross;
    }
  }
  return t;
}

const BlastMaskTable& blast_masks() {
  static const BlastMaskTable table = precompute_masks();
  return table;
}

BitPlane BlastMaskTable::cross_mask(int cell, int range) const {
  return cross[cell][std::clamp(range, 1, kMaxMaskRange)];
}

BitPlane BlastMaskTable::blast(int cell, int range, const BitPlane& obstacles) const {
  const int reach = std::clamp(range, 1, kMaxMaskRange) - 1;
  BitPlane result = BitPlane::single(cell);
  for (int d = 0; d < 4; ++d) {
    const BitPlane& full = arm[cell][d][reach];
    const BitPlane hits = full & obstacles;
    if (hits.none()) {
      result |= full;
      continue;
    }
    // Keep the ray up to its first obstacle.
    const int h = increasing(d) ? hits.lowest() : hits.highest();
    const int dist = horizontal(d) ? std::abs(h - cell) : std::abs(h - cell) / kWidth;
    result |= arm[cell][d][dist];
  }
  return result;
}

int BitState::bomb_timer(int cell) const {
  for (int k = 0; k < kBombTimer; ++k)
    if (due[k].test(cell)) return ((k - turn) % kBombTimer + kBombTimer) % kBombTimer + 1;
  return 0;
}

int BitState::alive_count() const {
  int n = 0;
  for (int p = 0; p < num_players; ++p) n += players[p].alive;
  return n;
}

BitState from_state(const GameState& s) {
  BitState b;
  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      const Cell& c = s.grid[y][x];
      if (c.kind != CellKind::Box) continue;
      const int i = cell_index({x, y});
      b.boxes.set(i);
      if (c.content == ItemKind::ExtraRange) b.box_range.set(i);
      if (c.content == ItemKind::ExtraBomb) b.box_bomb.set(i);
    }
  }
  for (const auto& item : s.items) (item.kind == ItemKind::ExtraRange ? b.item_range : b.item_bomb).set(cell_index(item.pos));
  for (const auto& bomb : s.bombs) {
    const int i = cell_index(bomb.pos);
    b.bombs.set(i);
    b.due[(s.turn + bomb.timer - 1) & 7].set(i);
    b.bomb_owner[i] = static_cast<std::uint8_t>(bomb.owner);
    b.bomb_range[i] = static_cast<std::uint8_t>(bomb.range);
  }
  b.num_players = static_cast<std::uint8_t>(s.players.size());
  for (const auto& p : s.players) {
    PlayerBits& pb = b.players[p.id];
    pb.cell = static_cast<std::uint8_t>(cell_index(p.pos));
    pb.alive = p.alive;
    pb.bombs_available = static_cast<std::uint8_t>(p.bombs_available);
    pb.max_bombs = static_cast<std::uint8_t>(p.max_bombs);
    pb.range = static_cast<std::uint8_t>(p.range);
    pb.boxes_destroyed = static_cast<std::uint16_t>(p.boxes_destroyed);
    pb.elimination_turn = static_cast<std::int16_t>(p.elimination_turn.value_or(-1));
  }
  b.turn = static_cast<std::int16_t>(s.turn);
  b.countdown = static_cast<std::int8_t>(s.post_box_countdown.value_or(-1));
  return b;
}

GameState to_state(const BitState& b) {
  GameState s;
  b.boxes.for_each([&](int i) {
    Cell& c = s.at(cell_pos(i));
    c.kind = CellKind::Box;
    c.content = b.box_range.test(i) ? ItemKind::ExtraRange : b.box_bomb.test(i) ? ItemKind::ExtraBomb : ItemKind::None;
  });
  b.bombs.for_each([&](int i) { s.bombs.push_back({b.bomb_owner[i], cell_pos(i), b.bomb_timer(i), b.bomb_range[i]}); });
  b.items().for_each([&](int i) {
    s.items.push_back({b.item_range.test(i) ? ItemKind::ExtraRange : ItemKind::ExtraBomb, cell_pos(i)});
  });
  for (int id = 0; id < b.num_players; ++id) {
    const PlayerBits& pb = b.players[id];
    Player p;
    p.id = id;
    p.pos = pb.pos();
    p.alive = pb.alive;
    p.bombs_available = pb.bombs_available;
    p.max_bombs = pb.max_bombs;
    p.range = pb.range;
    p.boxes_destroyed = pb.boxes_destroyed;
    if (pb.elimination_turn >= 0) p.elimination_turn = pb.elimination_turn;
    s.players.push_back(p);
  }
  s.turn = b.turn;
  if (b.countdown >= 0) s.post_box_countdown = b.countdown;
  return s;
}

BlastResult propagate_blasts_detailed(const BitState& b) {
  BlastResult r;
  BitPlane frontier = b.exploding_now();
  if (frontier.none()) return r;

  const BlastMaskTable& masks = blast_masks();
  const BitPlane obstacles = b.obstacles();
  // Each round adds at least one bomb, so this runs at most #bombs times.
  while (frontier.any()) {
    frontier.for_each([&](int c) {
      const BitPlane arm = masks.blast(c, b.bomb_range[c], obstacles);
      r.cells |= arm;
      r.by_owner[b.bomb_owner[c]] |= arm;
    });
    r.exploded |= frontier;
    frontier = (r.cells & b.bombs).andnot(r.exploded);
  }
  return r;
}

BitPlane propagate_blasts(const BitState& b) { return propagate_blasts_detailed(b).cells; }

void explode(BitState& b, TurnEvents& events) {
  if (b.exploding_now().none()) return;
  const BlastResult blast = propagate_blasts_detailed(b);

  for (int p = 0; p < b.num_players; ++p) {
    PlayerBits& pl = b.players[p];
    if (pl.alive && blast.cells.test(pl.cell)) {
      pl.alive = false;
      pl.elimination_turn = b.turn;
      events.killed_mask |= static_cast<std::uint8_t>(1u << p);
    }
  }

  const BitPlane hit = blast.cells & b.boxes;
  BitPlane spawn_range, spawn_bomb;
  if (hit.any()) {
    for (int p = 0; p < b.num_players; ++p) {
      const int n = (blast.by_owner[p] & hit).count();
      b.players[p].boxes_destroyed = static_cast<std::uint16_t>(b.players[p].boxes_destroyed + n);
      events.boxes_destroyed_by[p] += n;
    }
    events.boxes_destroyed += hit.count();
    spawn_range = hit & b.box_range;
    spawn_bomb = hit & b.box_bomb;
    b.boxes = b.boxes.andnot(hit);
    b.box_range = b.box_range.andnot(hit);
    b.box_bomb = b.box_bomb.andnot(hit);
  }

  events.items_burned += (blast.cells & b.items()).count();
  b.item_range = b.item_range.andnot(blast.cells) | spawn_range;
  b.item_bomb = b.item_bomb.andnot(blast.cells) | spawn_bomb;
  events.items_spawned += (spawn_range | spawn_bomb).count();

  blast.exploded.for_each([&](int c) {
    ++b.players[b.bomb_owner[c]].bombs_available;
    b.bomb_owner[c] = 0;
    b.bomb_range[c] = 0;
  });
  events.bombs_exploded += blast.exploded.count();
  b.bombs = b.bombs.andnot(blast.exploded);
  for (auto& bucket : b.due) bucket = bucket.andnot(blast.exploded);
}

ActionSet legal_after_explosion(const BitState& b, int player) {
  ActionSet set;
  if (player < 0 || player >= b.num_players || !b.players[player].alive) return set;
  const PlayerBits& p = b.players[player];
  const BitPlane free = b.free_cells();
  const bool can_drop = p.bombs_available >= 1 && !b.bombs.test(p.cell);
  const Pos pos = p.pos();
  for (int m = 0; m < kMoveCount; ++m) {
    const Move move = static_cast<Move>(m);
    if (move != Move::Stay) {
      const Pos t = step_toward(pos, move);
      if (!in_grid(t) || !free.test(t)) continue;
    }
    set.insert({move, false});
    if (can_drop) set.insert({move, true});
  }
  return set;
}

void apply_actions(BitState& b, const JointAction& actions, TurnEvents& events) {
  const BitPlane free = b.free_cells();

  const int placed_bucket = b.turn & 7;
  for (int p = 0; p < b.num_players; ++p) {
    PlayerBits& pl = b.players[p];
    if (!pl.alive || !actions[p].drop || pl.bombs_available < 1 || b.bombs.test(pl.cell)) continue;
    b.bombs.set(pl.cell);
    b.due[placed_bucket].set(pl.cell);
    b.bomb_owner[pl.cell] = static_cast<std::uint8_t>(p);
    b.bomb_range[pl.cell] = pl.range;
    --pl.bombs_available;
  }

  for (int p = 0; p < b.num_players; ++p) {
    PlayerBits& pl = b.players[p];
    if (!pl.alive || actions[p].move == Move::Stay) continue;
    const Pos t = step_toward(pl.pos(), actions[p].move);
    if (in_grid(t) && free.test(t)) pl.cell = static_cast<std::uint8_t>(cell_index(t));
  }

  BitPlane collected;
  const BitPlane items = b.items();
  if (items.any()) {
    for (int p = 0; p < b.num_players; ++p) {
      PlayerBits& pl = b.players[p];
      if (!pl.alive || !items.test(pl.cell)) continue;
      if (b.item_range.test(pl.cell)) {
        ++pl.range;
        ++events.range_pickups[p];
      } else {
        ++pl.max_bombs;
        ++pl.bombs_available;
        ++events.bomb_pickups[p];
      }
      collected.set(pl.cell);
    }
    b.item_range = b.item_range.andnot(collected);
    b.item_bomb = b.item_bomb.andnot(collected);
  }

  ++b.turn;
  if (b.countdown >= 0) {
    b.countdown = static_cast<std::int8_t>(std::max(0, b.countdown - 1));
  } else if (b.boxes.none()) {
    b.countdown = kCountdownTurns;
  }
}

std::pair<BitState, TurnEvents> bit_step(const BitState& b, const JointAction& actions) {
  std::pair<BitState, TurnEvents> out{b, {}};
  bit_step_inplace(out.first, actions, out.second);
  return out;
}

ActionSet bit_legal_actions(const BitState& b, int player) {
  if (player < 0 || player >= b.num_players || !b.players[player].alive) return {};
  BitState resolved = b;
  TurnEvents ignored;
  explode(resolved, ignored);
  return legal_after_explosion(resolved, player);
}

bool bit_is_terminal(const BitState& b) {
  return b.alive_count() <= 1 || b.turn >= kTurnLimit || b.countdown == 0;
}

}  // namespace hypersonic
