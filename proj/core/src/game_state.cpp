#include "hypersonic/game_state.hpp"

#include <algorithm>
#include <sstream>

namespace hypersonic {

std::string to_string(Action a) {
  static constexpr const char* kMoves[] = {"STAY", "UP", "DOWN", "LEFT", "RIGHT"};
  std::string s = kMoves[static_cast<int>(a.move)];
  if (a.drop) s += "+BOMB";
  return s;
}

Grid empty_grid() {
  Grid g{};
  for (int y = 0; y < kHeight; ++y)
    for (int x = 0; x < kWidth; ++x)
      g[y][x].kind = is_wall({x, y}) ? CellKind::Wall : CellKind::Floor;
  return g;
}

int GameState::box_count() const {
  int n = 0;
  for (const auto& row : grid)
    for (const auto& c : row) n += c.kind == CellKind::Box;
  return n;
}

int GameState::alive_count() const {
  return static_cast<int>(std::count_if(players.begin(), players.end(), [](const Player& p) { return p.alive; }));
}

const Bomb* GameState::bomb_at(Pos p) const {
  auto it = std::find_if(bombs.begin(), bombs.end(), [p](const Bomb& b) { return b.pos == p; });
  return it == bombs.end() ? nullptr : &*it;
}

const Item* GameState::item_at(Pos p) const {
  auto it = std::find_if(items.begin(), items.end(), [p](const Item& i) { return i.pos == p; });
  return it == items.end() ? nullptr : &*it;
}

GameState make_initial_state(const Grid& grid, int num_players) {
  GameState s;
  s.grid = grid;
  for (int i = 0; i < num_players; ++i) {
    Player p;
    p.id = i;
    p.pos = kStartCorners[i];
    s.players.push_back(p);
  }
  if (s.box_count() == 0) s.post_box_countdown = kCountdownTurns;
  return s;
}

int Ranking::place_of(int player) const {
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (std::find(groups[g].begin(), groups[g].end(), player) != groups[g].end()) return static_cast<int>(g);
  return -1;
}

char cell_char(const Cell& c) {
  switch (c.kind) {
    case CellKind::Floor: return '.';
    case CellKind::Wall: return 'X';
    case CellKind::Box: return static_cast<char>('0' + static_cast<int>(c.content));
  }
  return '?';
}

std::string grid_row(const GameState& s, int y) {
  std::string row(kWidth, '.');
  for (int x = 0; x < kWidth; ++x) row[x] = cell_char(s.grid[y][x]);
  return row;
}

std::string debug_dump(const GameState& s) {
  std::ostringstream out;
  for (int y = 0; y < kHeight; ++y) out << grid_row(s, y) << '\n';
  for (const auto& p : s.players)
    out << "0 " << p.id << ' ' << p.pos.x << ' ' << p.pos.y << ' ' << p.bombs_available << ' ' << p.range
        << (p.alive ? "" : " dead") << '\n';
  for (const auto& b : s.bombs)
    out << "1 " << b.owner << ' ' << b.pos.x << ' ' << b.pos.y << ' ' << b.timer << ' ' << b.range << '\n';
  for (const auto& i : s.items)
    out << "2 0 " << i.pos.x << ' ' << i.pos.y << ' ' << static_cast<int>(i.kind) << " 0\n";
  return out.str();
}

}  // namespace hypersonic
