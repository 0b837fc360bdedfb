#pragma once

#include <cstdint>

#include "hypersonic/game_state.hpp"
#include "hypersonic/random.hpp"

namespace hypersonic {

struct ItemDistribution {
  double none = 1.0 / 3.0;
  double extra_range = 1.0 / 3.0;
  double extra_bomb = 1.0 / 3.0;

  bool operator==(const ItemDistribution&) const = default;
};

struct MapSpec {
  std::uint64_t seed = 1;
  int players = 2;
  double box_density = 0.35;
  ItemDistribution items;

  bool operator==(const MapSpec&) const = default;
};

// Symmetric random map: point-symmetric for every player count, additionally
// mirror-symmetric on both axes with 4 players. Start corners and their two
// neighbours are always left empty.
GameState generate_map(const MapSpec& spec);

}  // namespace hypersonic
