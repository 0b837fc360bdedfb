#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <string>

#include "hypersonic/bit_engine.hpp"
#include "hypersonic/game_state.hpp"

namespace hypersonic {

// Weights of the composite state evaluation.
struct EvalWeights {
  double per_box = 1.0;
  double range_capped = 0.9;  // times min(5, range)
  double range_linear = 0.4;
  double bombs_cap2 = 3.4;  // times min(2, extra_bombs)
  double bombs_cap4 = 1.7;  // times min(4, extra_bombs)
  double bombs_linear = 0.7;
  double gamma = 0.95;  // decay of pending box destruction
  double opponent_distance = 0.05;
  double center_distance = -0.04;
  double box_distance = -0.1;
  int box_threshold = 20;
  double death = -1000.0;

  bool operator==(const EvalWeights&) const = default;
};

// Applies `key = value` lines (blank lines and '#' comments allowed) on top of
// `base`. Unknown keys and malformed lines throw std::runtime_error.
EvalWeights parse_weights(std::istream& in, EvalWeights base = {});
EvalWeights load_weights_file(const std::string& path, EvalWeights base = {});

// Data accumulated along one simulated line of play, from the search root.
struct EvalContext {
  double decayed_boxes = 0.0;
  int boxes_destroyed = 0;
  int range_pickups = 0;
  int bomb_pickups = 0;

  // `depth` is the turn offset of `events` from the root, starting at 1.
  void record(const TurnEvents& events, int player, int depth, double gamma);
};

// Explosion schedule of a state when nobody acts: bomb timers run out and
// chains fire. Every bomb has gone off after at most 8 steps.
struct FrozenTimeline {
  static constexpr int kMaxSteps = kBombTimer;

  int length = 0;                                  // steps until no bomb remains
  std::array<BitPlane, kMaxSteps> blast{};         // cells hit during step t+1
  std::array<BitPlane, kMaxSteps> free{};          // enterable cells after that explosion
  std::array<BitPlane, kMaxSteps> items{};         // items lying on the board after it
  std::array<std::array<std::uint8_t, kMaxPlayers>, kMaxSteps> credits{};  // boxes credited per player
};

FrozenTimeline frozen_timeline(const BitState& b);

// Sum of gamma^(d + current_depth) over boxes credited to `player` at frozen step d.
double estimated_bombs(const FrozenTimeline& timeline, int player, double gamma, int current_depth = 0);
double estimated_bombs(const BitState& b, int player, double gamma, int current_depth = 0);
double estimated_bombs(const GameState& s, int player, double gamma, int current_depth = 0);

// True when the player has a move-only sequence that outlives every pending
// bomb while the opponents stand still and drop nothing.
bool is_survivable(const BitState& b, int player, const FrozenTimeline& timeline);
bool is_survivable(const BitState& b, int player);
bool is_survivable(const GameState& s, int player);

// Last frozen step the player can still be alive after (FrozenTimeline::kMaxSteps + 1 if
// survivable, 0 if the player cannot outlive this turn's explosion or is dead).
int longest_survival(const BitState& b, int player, const FrozenTimeline& timeline);

// True when the attacker has a two-turn strategy that leaves the victim dead or
// unable to survive, whatever the victim does. Other players stand still.
bool can_kill(const BitState& b, int attacker, int victim);
bool can_kill(const GameState& s, int attacker, int victim);

double evaluate(const BitState& b, int player, const EvalContext& ctx, const EvalWeights& weights,
                const FrozenTimeline& timeline);
double evaluate(const BitState& b, int player, const EvalContext& ctx, const EvalWeights& weights = {});
double evaluate(const GameState& s, int player, const EvalContext& ctx, const EvalWeights& weights = {});

}  // namespace hypersonic
