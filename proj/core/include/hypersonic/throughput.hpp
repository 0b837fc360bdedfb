#pragma once

#include <cstdint>
#include <string>

#include "hypersonic/game_state.hpp"

namespace hypersonic {

enum class EngineKind { Reference, Bitboard };

std::string to_string(EngineKind e);

struct ThroughputResult {
  std::int64_t steps = 0;           // engine turns, i.e. actions of one random agent
  std::int64_t player_actions = 0;  // summed over every acting seat
  std::int64_t resets = 0;
  double elapsed_ms = 0.0;
};

// Random legal actions for every seat, starting over from `fixture` every
// `reset_every` steps or as soon as a player dies, until `duration_ms` is spent.
ThroughputResult throughput_bench(EngineKind engine, const GameState& fixture, double duration_ms, int reset_every = 15,
                                  std::uint64_t seed = 1);

// A generated map played forward by cheap search agents until `turns` turns
// have passed with everyone alive. Deterministic in (players, seed).
GameState make_midgame_fixture(int players, std::uint64_t seed, int turns = 40);

std::string fixture_text(const GameState& s);
GameState load_fixture(const std::string& path);
void save_fixture(const std::string& path, const GameState& s);

}  // namespace hypersonic
