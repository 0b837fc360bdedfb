#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hypersonic/action.hpp"
#include "hypersonic/bit_engine.hpp"
#include "hypersonic/random.hpp"

namespace hypersonic {

// Search budget: wall-clock milliseconds, or a fixed number of search
// iterations for reproducible runs. What counts as one iteration is up to
// the agent (node expansion, playout, individual evaluation).
struct Budget {
  enum class Mode : std::uint8_t { WallClock, Iterations };

  Mode mode = Mode::Iterations;
  double millis = 0.0;
  std::int64_t iterations = 0;

  static Budget wall(double ms) { return {Mode::WallClock, ms, 0}; }
  static Budget iters(std::int64_t n) { return {Mode::Iterations, 0.0, n}; }

  bool empty() const { return mode == Mode::WallClock ? millis <= 0.0 : iterations <= 0; }
  Budget scaled(double factor) const;
  std::string to_string() const;

  bool operator==(const Budget&) const = default;
};

// Parses "100ms" / "100" (milliseconds) or "5000it" (iterations).
Budget parse_budget(const std::string& text);

// Tracks consumption of one Budget. In iteration mode the clock is never
// consulted for decisions.
class SearchClock {
 public:
  explicit SearchClock(const Budget& budget);

  void tick(std::int64_t n = 1) { used_ += n; }
  bool done() const;
  std::int64_t iterations() const { return used_; }
  double elapsed_ms() const;
  // What is left of the budget.
  Budget remaining() const;

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::int64_t used_ = 0;
};

// Predicted action sequences of the opponents; past the end of a sequence
// (or for players without one) the player stays and drops nothing.
struct PredictedPlan {
  std::array<std::vector<Action>, kMaxPlayers> actions{};
  std::array<bool, kMaxPlayers> present{};

  Action at(int player, int depth) const {
    const auto& seq = actions[player];
    return depth < static_cast<int>(seq.size()) ? seq[depth] : Action::stay();
  }
  // Joint action at `depth` for every player except `me`, whose slot is `mine`.
  JointAction joint(int depth, int me, Action mine) const {
    JointAction j{};
    for (int p = 0; p < kMaxPlayers; ++p) j[p] = p == me ? mine : at(p, depth);
    return j;
  }
  int horizon(int player) const { return static_cast<int>(actions[player].size()); }
};

struct SearchStats {
  std::int64_t iterations = 0;  // agent-specific unit (expansions, playouts, evaluations)
  int depth = 0;
  double best_score = 0.0;
  double elapsed_ms = 0.0;
  std::int64_t prediction_iterations = 0;

  std::string to_string() const;
};

struct SearchResult {
  Action action;
  std::vector<Action> principal;  // the intended line, starting with `action`
  SearchStats stats;
};

// How much of a turn goes into predicting opponents.
struct PredictionPolicy {
  bool enabled = false;
  double share = 0.0;        // fraction of the turn budget
  bool per_opponent = true;  // share applies to each opponent, otherwise split between them
};

class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string name() const = 0;

  // Search for `me` with opponents following `plans`.
  virtual SearchResult search(const BitState& b, int me, const Budget& budget, const PredictedPlan& plans) = 0;

  virtual PredictionPolicy prediction_policy() const { return {}; }

  // A full turn: predict the opponents with this agent's own search, then
  // search for `me` with what is left of the budget.
  SearchResult decide(const BitState& b, int me, const Budget& turn_budget);
};

// Uniformly random legal actions.
class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}

  std::string name() const override { return "random"; }
  SearchResult search(const BitState& b, int me, const Budget& budget, const PredictedPlan& plans) override;

 private:
  Rng rng_;
};

}  // namespace hypersonic
