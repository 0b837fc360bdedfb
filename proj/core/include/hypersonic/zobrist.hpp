#pragma once

#include <array>
#include <cstdint>

#include "hypersonic/bit_engine.hpp"

namespace hypersonic {

// Player stats above this share the last key.
inline constexpr int kZobristStatSlots = 16;

struct ZobristKeys {
  std::array<std::uint64_t, kCells> box{};
  std::array<std::uint64_t, kCells> box_range{};
  std::array<std::uint64_t, kCells> box_bomb{};
  std::array<std::uint64_t, kCells> item_range{};
  std::array<std::uint64_t, kCells> item_bomb{};
  // Bombs are keyed by the due bucket rather than the timer so that a
  // bomb's key does not change while it ticks.
  std::array<std::array<std::uint64_t, kBombTimer>, kCells> bomb_due{};
  std::array<std::array<std::uint64_t, kMaxPlayers>, kCells> bomb_owner{};
  std::array<std::array<std::uint64_t, kZobristStatSlots>, kCells> bomb_range{};
  std::array<std::array<std::uint64_t, kCells>, kMaxPlayers> player_cell{};
  std::array<std::uint64_t, kMaxPlayers> player_dead{};
  std::array<std::array<std::uint64_t, kZobristStatSlots>, kMaxPlayers> player_range{};
  std::array<std::array<std::uint64_t, kZobristStatSlots>, kMaxPlayers> player_max_bombs{};
  std::array<std::array<std::uint64_t, kZobristStatSlots>, kMaxPlayers> player_available{};
};

ZobristKeys make_zobrist_keys(std::uint64_t seed);

// Keys shared by the whole process (fixed seed, so hashes are reproducible).
const ZobristKeys& zobrist_keys();

std::uint64_t zobrist_hash(const BitState& b, const ZobristKeys& keys = zobrist_keys());

// Hash of `after` given the hash of `before`, touching only what changed.
std::uint64_t zobrist_update(std::uint64_t hash, const BitState& before, const BitState& after,
                             const ZobristKeys& keys = zobrist_keys());

}  // namespace hypersonic
