#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "hypersonic/action.hpp"
#include "hypersonic/bitplane.hpp"
#include "hypersonic/game_state.hpp"

namespace hypersonic {

// Blast ranges above this are equivalent to it on a 13-wide board.
inline constexpr int kMaxMaskRange = 13;

enum class RayDir : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

// Precomputed blast geometry. Depends only on the wall pattern.
struct BlastMaskTable {
  static constexpr int kMaxArm = kMaxMaskRange - 1;

  // arm[cell][dir][len]: the first `len` cells of the ray leaving `cell`, up to the first wall.
  std::array<std::array<std::array<BitPlane, kMaxArm + 1>, 4>, kCells> arm{};
  std::array<std::array<std::uint8_t, 4>, kCells> ray_length{};
  // Full cross on an obstacle-free board, indexed by range 1..13 (0 unused).
  std::array<std::array<BitPlane, kMaxMaskRange + 1>, kCells> cross{};

  BitPlane cross_mask(int cell, int range) const;

  // Blast of a bomb at `cell`; each arm stops on (and includes) the first obstacle.
  BitPlane blast(int cell, int range, const BitPlane& obstacles) const;
};

BlastMaskTable precompute_masks();

// Process-wide immutable table.
const BlastMaskTable& blast_masks();

struct PlayerBits {
  std::uint8_t cell = 0;
  bool alive = false;
  std::uint8_t bombs_available = 0;
  std::uint8_t max_bombs = 0;
  std::uint8_t range = 0;
  std::uint16_t boxes_destroyed = 0;
  std::int16_t elimination_turn = -1;

  Pos pos() const { return cell_pos(cell); }
  bool operator==(const PlayerBits&) const = default;
};

// Bit-plane game state. Bombs are bucketed by the turn they go off
// (bucket = turn % 8) so the explode-now set is a single lookup.
struct BitState {
  BitPlane boxes;
  BitPlane box_range;  // subset of boxes holding an ExtraRange item
  BitPlane box_bomb;   // subset of boxes holding an ExtraBomb item
  BitPlane item_range;
  BitPlane item_bomb;
  BitPlane bombs;
  std::array<BitPlane, kBombTimer> due{};
  std::array<std::uint8_t, kCells> bomb_owner{};
  std::array<std::uint8_t, kCells> bomb_range{};
  std::array<PlayerBits, kMaxPlayers> players{};
  std::uint8_t num_players = 0;
  std::int16_t turn = 0;
  std::int8_t countdown = -1;  // -1 while boxes remain

  BitPlane items() const { return item_range | item_bomb; }
  BitPlane obstacles() const { return boxes | item_range | item_bomb | bombs; }
  // Cells a player may step onto.
  BitPlane free_cells() const { return kValidCells.andnot(kWalls | boxes | bombs); }
  BitPlane exploding_now() const { return due[turn & 7] & bombs; }
  int bomb_timer(int cell) const;
  int alive_count() const;

  bool operator==(const BitState&) const = default;
};

BitState from_state(const GameState& s);
GameState to_state(const BitState& b);

struct BlastResult {
  BitPlane cells;
  BitPlane exploded;
  std::array<BitPlane, kMaxPlayers> by_owner{};
};

// Cells hit by this turn's explosion closure (empty when nothing goes off).
BitPlane propagate_blasts(const BitState& b);
BlastResult propagate_blasts_detailed(const BitState& b);

// Explosion phase of a turn, in place.
void explode(BitState& b, TurnEvents& events);

// Legal actions for a state whose explosions were already applied.
ActionSet legal_after_explosion(const BitState& b, int player);

// Placement, moves, pickups and turn bookkeeping, in place. Call after explode().
void apply_actions(BitState& b, const JointAction& actions, TurnEvents& events);

// Full turn in place.
inline void bit_step_inplace(BitState& b, const JointAction& actions, TurnEvents& events) {
  explode(b, events);
  apply_actions(b, actions, events);
}

std::pair<BitState, TurnEvents> bit_step(const BitState& b, const JointAction& actions);
ActionSet bit_legal_actions(const BitState& b, int player);

// Same end conditions as the reference is_terminal.
bool bit_is_terminal(const BitState& b);

}  // namespace hypersonic
