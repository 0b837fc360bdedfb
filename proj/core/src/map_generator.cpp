#include "hypersonic/map_generator.hpp"

#include <algorithm>
#include <vector>

namespace hypersonic {
namespace {

bool reserved(Pos p) {
  for (Pos c : kStartCorners) {
    if (manhattan(p, c) <= 1) return true;
  }
  return false;
}

std::vector<Pos> orbit(Pos p, int players) {
  std::vector<Pos> cells{p, {kWidth - 1 - p.x, kHeight - 1 - p.y}};
  if (players == 4) {
    cells.push_back({kWidth - 1 - p.x, p.y});
    cells.push_back({p.x, kHeight - 1 - p.y});
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

}  // namespace

GameState generate_map(const MapSpec& spec) {
  Rng rng(spec.seed);
  Grid grid = empty_grid();
  std::array<std::array<bool, kWidth>, kHeight> decided{};

  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      const Pos p{x, y};
      if (decided[y][x] || is_wall(p) || reserved(p)) continue;
      const auto cells = orbit(p, spec.players);
      for (Pos q : cells) decided[q.y][q.x] = true;

      // Both draws happen for every orbit so item settings never shift box placement.
      const double box_roll = uniform01(rng);
      const double total = spec.items.none + spec.items.extra_range + spec.items.extra_bomb;
      const double item_roll = uniform01(rng) * total;
      if (box_roll >= spec.box_density) continue;

      ItemKind content = ItemKind::None;
      if (total > 0 && item_roll >= spec.items.none) {
        content = item_roll < spec.items.none + spec.items.extra_range ? ItemKind::ExtraRange : ItemKind::ExtraBomb;
      }
      for (Pos q : cells) grid[q.y][q.x] = Cell{CellKind::Box, content};
    }
  }
  return make_initial_state(grid, spec.players);
}

}  // namespace hypersonic
