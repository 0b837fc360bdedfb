#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hypersonic/action.hpp"
#include "hypersonic/game_state.hpp"

// Straightforward rule implementation; the behavioral oracle for the bitboard
// engine.
namespace hypersonic {

// Cells hit by one bomb against the current board. Arms stop on boxes, items
// and bombs (inclusive) and before walls or the grid edge.
std::vector<Pos> blast_cells(const GameState& state, const Bomb& bomb);

// Explodes every bomb whose timer reads 1 plus everything they chain into,
// then decrements the remaining timers. Exploded bombs are returned to their
// owners immediately.
std::pair<GameState, TurnEvents> resolve_explosions(const GameState& state);

// Legal actions once this turn's explosions are resolved. Empty for dead or
// unknown players.
std::vector<Action> legal_actions(const GameState& state, int player);

// Same as legal_actions but for a state whose explosions were already applied.
std::vector<Action> legal_actions_resolved(const GameState& resolved, int player);

// Advances one turn: explosions, bomb placement, simultaneous moves, pickups.
// Illegal parts of an action degrade to staying / not dropping.
std::pair<GameState, TurnEvents> step(const GameState& state, const JointAction& actions);

std::optional<Ranking> is_terminal(const GameState& state);

// Ranking of all players by survival, elimination turn and destroyed boxes.
Ranking rank_players(const GameState& state);

}  // namespace hypersonic
