#include "hypersonic/reference_engine.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hypersonic {
namespace {

constexpr Move kDirections[] = {Move::Up, Move::Down, Move::Left, Move::Right};

bool blocks_blast(const GameState& s, Pos p) {
  return s.at(p).kind == CellKind::Box || s.item_at(p) != nullptr || s.bomb_at(p) != nullptr;
}

bool passable(const GameState& s, Pos p) {
  return in_grid(p) && s.at(p).kind == CellKind::Floor && s.bomb_at(p) == nullptr;
}

bool by_cell(Pos a, Pos b) { return cell_index(a) < cell_index(b); }

void canonicalize(GameState& s) {
  std::sort(s.bombs.begin(), s.bombs.end(), [](const Bomb& a, const Bomb& b) { return by_cell(a.pos, b.pos); });
  std::sort(s.items.begin(), s.items.end(), [](const Item& a, const Item& b) { return by_cell(a.pos, b.pos); });
}

}  // namespace

std::vector<Pos> blast_cells(const GameState& state, const Bomb& bomb) {
  std::vector<Pos> cells{bomb.pos};
  for (Move dir : kDirections) {
    Pos p = bomb.pos;
    for (int k = 1; k < bomb.range; ++k) {
      p = step_toward(p, dir);
      if (!in_grid(p) || state.at(p).kind == CellKind::Wall) break;
      cells.push_back(p);
      if (blocks_blast(state, p)) break;
    }
  }
  return cells;
}

std::pair<GameState, TurnEvents> resolve_explosions(const GameState& state) {
  GameState next = state;
  TurnEvents events;

  // Transitive closure of bombs that go off this turn.
  std::vector<bool> exploding(state.bombs.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < state.bombs.size(); ++i) {
    if (state.bombs[i].timer <= 1) {
      exploding[i] = true;
      queue.push_back(i);
    }
  }

  // Bit mask of owners whose blast reaches each cell.
  std::array<std::array<unsigned, kWidth>, kHeight> hit_by{};
  while (!queue.empty()) {
    const Bomb& bomb = state.bombs[queue.front()];
    queue.pop_front();
    for (Pos p : blast_cells(state, bomb)) {
      hit_by[p.y][p.x] |= 1u << bomb.owner;
      for (std::size_t j = 0; j < state.bombs.size(); ++j) {
        if (!exploding[j] && state.bombs[j].pos == p) {
          exploding[j] = true;
          queue.push_back(j);
        }
      }
    }
  }

  for (auto& player : next.players) {
    if (player.alive && hit_by[player.pos.y][player.pos.x] != 0) {
      player.alive = false;
      player.elimination_turn = state.turn;
      events.killed_mask |= static_cast<std::uint8_t>(1u << player.id);
    }
  }

  std::vector<Item> spawned;
  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      Cell& cell = next.grid[y][x];
      if (cell.kind != CellKind::Box || hit_by[y][x] == 0) continue;
      for (auto& player : next.players) {
        if (hit_by[y][x] & (1u << player.id)) {
          ++player.boxes_destroyed;
          ++events.boxes_destroyed_by[player.id];
        }
      }
      ++events.boxes_destroyed;
      if (cell.content != ItemKind::None) spawned.push_back({cell.content, {x, y}});
      cell = Cell{};
    }
  }

  const auto burned = std::remove_if(next.items.begin(), next.items.end(),
                                     [&](const Item& i) { return hit_by[i.pos.y][i.pos.x] != 0; });
  events.items_burned = static_cast<int>(next.items.end() - burned);
  next.items.erase(burned, next.items.end());

  next.bombs.clear();
  for (std::size_t i = 0; i < state.bombs.size(); ++i) {
    Bomb bomb = state.bombs[i];
    if (exploding[i]) {
      ++next.players[bomb.owner].bombs_available;
      ++events.bombs_exploded;
    } else {
      --bomb.timer;
      next.bombs.push_back(bomb);
    }
  }

  events.items_spawned = static_cast<int>(spawned.size());
  next.items.insert(next.items.end(), spawned.begin(), spawned.end());
  canonicalize(next);
  return {next, events};
}

std::vector<Action> legal_actions_resolved(const GameState& resolved, int player) {
  std::vector<Action> actions;
  if (player < 0 || player >= static_cast<int>(resolved.players.size())) return actions;
  const Player& p = resolved.players[player];
  if (!p.alive) return actions;

  const bool can_drop = p.bombs_available >= 1 && resolved.bomb_at(p.pos) == nullptr;
  for (int m = 0; m < kMoveCount; ++m) {
    const Move move = static_cast<Move>(m);
    if (move != Move::Stay && !passable(resolved, step_toward(p.pos, move))) continue;
    actions.push_back({move, false});
    if (can_drop) actions.push_back({move, true});
  }
  std::sort(actions.begin(), actions.end(), [](Action a, Action b) { return a.code() < b.code(); });
  return actions;
}

std::vector<Action> legal_actions(const GameState& state, int player) {
  if (player < 0 || player >= static_cast<int>(state.players.size()) || !state.players[player].alive) return {};
  return legal_actions_resolved(resolve_explosions(state).first, player);
}

std::pair<GameState, TurnEvents> step(const GameState& state, const JointAction& actions) {
  auto [next, events] = resolve_explosions(state);

  // Bombs present before placement; moves are checked against these.
  const GameState before_placement = next;

  for (auto& player : next.players) {
    if (!player.alive || !actions[player.id].drop) continue;
    if (player.bombs_available < 1 || next.bomb_at(player.pos) != nullptr) continue;
    next.bombs.push_back({player.id, player.pos, kBombTimer, player.range});
    --player.bombs_available;
  }

  for (auto& player : next.players) {
    if (!player.alive) continue;
    const Pos target = step_toward(player.pos, actions[player.id].move);
    if (target != player.pos && passable(before_placement, target)) player.pos = target;
  }

  std::set<int> collected;
  for (auto& player : next.players) {
    if (!player.alive) continue;
    const Item* item = next.item_at(player.pos);
    if (item == nullptr) continue;
    if (item->kind == ItemKind::ExtraRange) {
      ++player.range;
      ++events.range_pickups[player.id];
    } else {
      ++player.max_bombs;
      ++player.bombs_available;
      ++events.bomb_pickups[player.id];
    }
    collected.insert(cell_index(player.pos));
  }
  std::erase_if(next.items, [&](const Item& i) { return collected.count(cell_index(i.pos)) > 0; });

  ++next.turn;
  if (next.post_box_countdown) {
    next.post_box_countdown = std::max(0, *next.post_box_countdown - 1);
  } else if (next.box_count() == 0) {
    next.post_box_countdown = kCountdownTurns;
  }

  canonicalize(next);
  return {next, events};
}

Ranking rank_players(const GameState& state) {
  std::vector<const Player*> order;
  for (const auto& p : state.players) order.push_back(&p);

  // Survivors first, then later eliminations, then more destroyed boxes.
  auto key = [](const Player* p) {
    const int survival = p->alive ? 1'000'000 : p->elimination_turn.value_or(-1);
    return std::pair{survival, p->boxes_destroyed};
  };
  std::stable_sort(order.begin(), order.end(), [&](const Player* a, const Player* b) { return key(a) > key(b); });

  Ranking ranking;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || key(order[i]) != key(order[i - 1])) ranking.groups.emplace_back();
    ranking.groups.back().push_back(order[i]->id);
  }
  return ranking;
}

std::optional<Ranking> is_terminal(const GameState& state) {
  const bool over = state.alive_count() <= 1 || state.turn >= kTurnLimit ||
                    (state.post_box_countdown && *state.post_box_countdown == 0);
  if (!over) return std::nullopt;
  return rank_players(state);
}

}  // namespace hypersonic
