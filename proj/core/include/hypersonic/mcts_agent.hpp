#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypersonic/agent.hpp"
#include "hypersonic/random.hpp"

namespace hypersonic {

struct MctsParams {
  double uct_c = 1.0;
  int rollout_depth = 15;  // rounds from the root, tree part included
  double gamma = 0.98;
  double value_scale = 1.0 / 400.0;
  double reward_scale = 50.0;
  double survival_base = 200.0;
  int bomb_reward_cap = 4;  // ExtraBomb pickups pay while max_bombs is below this
  bool root_prune = true;
  bool final_by_max = true;  // final choice by max value (false: by mean)
  double prediction_share = 0.10;  // of the turn budget, per opponent
};

// Reward of one simulated round for `me`: boxes it destroyed plus one per
// ExtraBomb picked up while below the cap. `max_bombs_after` is after pickups.
double mcts_round_reward(const TurnEvents& events, int me, int max_bombs_after, const MctsParams& params = {});

// Value of a finished line: 0 when dead, otherwise
// scale * (sum of reward_r * reward_scale * gamma^r + max(0, survival_base - box_distance)).
double mcts_value(bool dead, double discounted_rewards, int box_distance, const MctsParams& params = {});

// Sum of Manhattan distances from the player to every remaining box.
int box_distance_sum(const BitState& b, int player);

// Root actions after which no opponent has a forced two-turn kill. Falls back
// to every legal action when all of them are trapped.
ActionSet root_prune(const BitState& b, int me, const PredictedPlan& plans);

struct RootChildStats {
  Action action;
  int visits = 0;
  double mean = 0.0;
  double max = 0.0;
};

// Index of the final choice: highest max (or mean), then most visits, then lowest action code.
int final_choice(const std::vector<RootChildStats>& children, bool by_max);

class MctsAgent final : public Agent {
 public:
  explicit MctsAgent(std::uint64_t seed, MctsParams params = {}) : params_(params), rng_(seed) {}

  std::string name() const override { return "mcts"; }
  SearchResult search(const BitState& b, int me, const Budget& budget, const PredictedPlan& plans) override;
  PredictionPolicy prediction_policy() const override { return {true, params_.prediction_share, true}; }

  const MctsParams& params() const { return params_; }
  // Root statistics of the last search.
  const std::vector<RootChildStats>& last_root() const { return last_root_; }

 private:
  MctsParams params_;
  Rng rng_;
  std::vector<RootChildStats> last_root_;
};

}  // namespace hypersonic
