#include "hypersonic/zobrist.hpp"

#include <algorithm>

#include "hypersonic/random.hpp"

namespace hypersonic {
namespace {

int slot(int value) { return std::clamp(value, 0, kZobristStatSlots - 1); }

std::uint64_t player_hash(const PlayerBits& p, int id, const ZobristKeys& k) {
  std::uint64_t h = k.player_cell[id][p.cell] ^ k.player_range[id][slot(p.range)] ^
                    k.player_max_bombs[id][slot(p.max_bombs)] ^ k.player_available[id][slot(p.bombs_available)];
  if (!p.alive) h ^= k.player_dead[id];
  return h;
}

std::uint64_t bomb_hash(const BitState& b, int cell, const ZobristKeys& k) {
  std::uint64_t h = k.bomb_owner[cell][b.bomb_owner[cell]] ^ k.bomb_range[cell][slot(b.bomb_range[cell])];
  for (int d = 0; d < kBombTimer; ++d)
    if (b.due[d].test(cell)) h ^= k.bomb_due[cell][d];
  return h;
}

template <typename Keys>
std::uint64_t fold(const BitPlane& plane, const Keys& keys) {
  std::uint64_t h = 0;
  plane.for_each([&](int c) { h ^= keys[c]; });
  return h;
}

}  // namespace

ZobristKeys make_zobrist_keys(std::uint64_t seed) {
  Rng rng(seed);
  ZobristKeys k;
  for (int c = 0; c < kCells; ++c) {
    k.box[c] = rng();
    k.box_range[c] = rng();
    k.box_bomb[c] = rng();
    k.item_range[c] = rng();
    k.item_bomb[c] = rng();
    for (auto& v : k.bomb_due[c]) v = rng();
    for (auto& v : k.bomb_owner[c]) v = rng();
    for (auto& v : k.bomb_range[c]) v = rng();
  }
  for (int p = 0; p < kMaxPlayers; ++p) {
    for (auto& v : k.player_cell[p]) v = rng();
    k.player_dead[p] = rng();
    for (auto& v : k.player_range[p]) v = rng();
    for (auto& v : k.player_max_bombs[p]) v = rng();
    for (auto& v : k.player_available[p]) v = rng();
  }
  return k;
}

const ZobristKeys& zobrist_keys() {
  static const ZobristKeys keys = make_zobrist_keys(0x5EED'B0BB'0000'0001ull);
  return keys;
}

std::uint64_t zobrist_hash(const BitState& b, const ZobristKeys& k) {
  std::uint64_t h = fold(b.boxes, k.box) ^ fold(b.box_range, k.box_range) ^ fold(b.box_bomb, k.box_bomb) ^
                    fold(b.item_range, k.item_range) ^ fold(b.item_bomb, k.item_bomb);
  b.bombs.for_each([&](int c) { h ^= bomb_hash(b, c, k); });
  for (int p = 0; p < b.num_players; ++p) h ^= player_hash(b.players[p], p, k);
  return h;
}

std::uint64_t zobrist_update(std::uint64_t h, const BitState& before, const BitState& after, const ZobristKeys& k) {
  h ^= fold(before.boxes ^ after.boxes, k.box);
  h ^= fold(before.box_range ^ after.box_range, k.box_range);
  h ^= fold(before.box_bomb ^ after.box_bomb, k.box_bomb);
  h ^= fold(before.item_range ^ after.item_range, k.item_range);
  h ^= fold(before.item_bomb ^ after.item_bomb, k.item_bomb);
  before.bombs.andnot(after.bombs).for_each([&](int c) { h ^= bomb_hash(before, c, k); });
  after.bombs.andnot(before.bombs).for_each([&](int c) { h ^= bomb_hash(after, c, k); });
  // A bomb can go off and be replaced on the same cell within one step.
  (before.bombs & after.bombs).for_each([&](int c) { h ^= bomb_hash(before, c, k) ^ bomb_hash(after, c, k); });
  for (int p = 0; p < after.num_players; ++p)
    if (!(before.players[p] == after.players[p])) h ^= player_hash(before.players[p], p, k) ^ player_hash(after.players[p], p, k);
  return h;
}

}  // namespace hypersonic
