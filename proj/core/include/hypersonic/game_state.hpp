#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypersonic/action.hpp"
#include "hypersonic/geometry.hpp"

namespace hypersonic {

enum class ItemKind : std::uint8_t { None = 0, ExtraRange = 1, ExtraBomb = 2 };

enum class CellKind : std::uint8_t { Floor, Wall, Box };

struct Cell {
  CellKind kind = CellKind::Floor;
  ItemKind content = ItemKind::None;  // only meaningful for boxes

  constexpr bool operator==(const Cell&) const = default;
};

// grid[y][x]; the wall pattern is fixed and never changes.
using Grid = std::array<std::array<Cell, kWidth>, kHeight>;

Grid empty_grid();

struct Player {
  int id = 0;
  Pos pos;
  bool alive = true;
  int bombs_available = 1;
  int max_bombs = 1;
  int range = kInitialRange;
  int boxes_destroyed = 0;
  std::optional<int> elimination_turn;

  bool operator==(const Player&) const = default;
};

struct Bomb {
  int owner = 0;
  Pos pos;
  int timer = kBombTimer;
  int range = kInitialRange;

  bool operator==(const Bomb&) const = default;
};

struct Item {
  ItemKind kind = ItemKind::ExtraRange;
  Pos pos;

  bool operator==(const Item&) const = default;
};

// Bombs and items are kept sorted by cell index so equal situations compare equal.
struct GameState {
  Grid grid = empty_grid();
  std::vector<Player> players;
  std::vector<Bomb> bombs;
  std::vector<Item> items;
  int turn = 0;
  std::optional<int> post_box_countdown;

  const Cell& at(Pos p) const { return grid[p.y][p.x]; }
  Cell& at(Pos p) { return grid[p.y][p.x]; }
  int box_count() const;
  int alive_count() const;
  const Bomb* bomb_at(Pos p) const;
  const Item* item_at(Pos p) const;

  bool operator==(const GameState&) const = default;
};

// Places players on their seating corners with default stats.
GameState make_initial_state(const Grid& grid, int num_players);

// Per-turn outcome counters shared by both engines.
struct TurnEvents {
  std::array<int, kMaxPlayers> boxes_destroyed_by{};
  std::array<int, kMaxPlayers> range_pickups{};
  std::array<int, kMaxPlayers> bomb_pickups{};
  std::uint8_t killed_mask = 0;
  int boxes_destroyed = 0;
  int items_spawned = 0;
  int items_burned = 0;
  int bombs_exploded = 0;

  bool operator==(const TurnEvents&) const = default;
};

// Best group first; players inside a group are tied.
struct Ranking {
  std::vector<std::vector<int>> groups;

  // 0 for the best group; -1 if the player does not appear.
  int place_of(int player) const;
  bool operator==(const Ranking&) const = default;
};

char cell_char(const Cell& c);
std::string grid_row(const GameState& s, int y);

// 11 rows of 13 characters followed by one line per player, bomb and item.
std::string debug_dump(const GameState& s);

}  // namespace hypersonic
