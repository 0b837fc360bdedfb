#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypersonic/agent.hpp"
#include "hypersonic/evaluation.hpp"

namespace hypersonic {

struct BeamFeatures {
  bool zh = true;   // drop duplicate states within a level (Zobrist hash)
  bool op = true;   // opponents follow predicted plans
  bool lb = true;   // cap nodes per agent position within a level
  bool fmp = true;  // first move pruning
  bool sc = true;   // penalise states without an escape

  bool operator==(const BeamFeatures&) const = default;
};

// "zh,op,lb,fmp,sc" (any subset, any order); "none" or "" for all off.
BeamFeatures parse_beam_features(const std::string& text);
std::string to_string(const BeamFeatures& f);

struct BeamParams {
  int beam_width = 500;
  int local_beam_width = 12;
  double sc_penalty = 900.0;
  int max_depth = 60;
  double prediction_share = 0.15;  // of the turn budget, split between opponents
  BeamFeatures features;
  EvalWeights weights;

  // Only duplicate elimination, with the width doubled.
  static BeamParams vanilla();
};

struct RootPruning {
  ActionSet allowed;             // empty when no action survives
  std::optional<Action> forced;  // a certain win that overrides the search
};

RootPruning first_move_prune(const BitState& b, int me, const PredictedPlan& plans);

// Action that postpones death the longest (ties by evaluation).
Action longest_survival_action(const BitState& b, int me, const PredictedPlan& plans, const EvalWeights& weights = {});

// Shape of one retained search level.
struct BeamLevelStats {
  int size = 0;
  int max_per_cell = 0;  // most nodes sharing one agent position
  bool unique_hashes = true;
};

class BeamAgent final : public Agent {
 public:
  explicit BeamAgent(BeamParams params = {}) : params_(params) {}

  std::string name() const override { return "beam"; }
  SearchResult search(const BitState& b, int me, const Budget& budget, const PredictedPlan& plans) override;
  PredictionPolicy prediction_policy() const override;

  const BeamParams& params() const { return params_; }
  // Retained levels of the last search, from depth 1.
  const std::vector<BeamLevelStats>& last_levels() const { return levels_; }

 private:
  BeamParams params_;
  std::vector<BeamLevelStats> levels_;
};

}  // namespace hypersonic
