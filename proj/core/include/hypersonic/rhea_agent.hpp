#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypersonic/agent.hpp"
#include "hypersonic/evaluation.hpp"
#include "hypersonic/random.hpp"

namespace hypersonic {

inline constexpr int kGenomeLength = 17;

// Action codes, one per future turn.
using Genome = std::array<std::uint8_t, kGenomeLength>;

struct RheaParams {
  int population_size = 50;
  int offspring_size = 50;
  double mutation_probability = 0.5;
  double punishment = 1000.0;  // for a line that is no longer survivable right away
  double punishment_decay = 0.9;
  double prediction_share = 0.10;  // of the turn budget, per opponent
  EvalWeights weights;
};

Genome random_genome(Rng& rng);

// a[0, cut) followed by b[cut, end), for 1 <= cut < kGenomeLength.
Genome crossover_one_point(const Genome& a, const Genome& b, int cut);

// Every gene independently redrawn over all action codes with probability p.
Genome mutate(Genome g, double p, Rng& rng);

struct IndividualResult {
  double fitness = 0.0;
  double evaluation = 0.0;
  std::optional<int> first_unsurvivable;  // t*, turn index of the first non-survivable state
  std::vector<Action> effective;          // actions actually played after repair
};

// Plays the genome for `me` (opponents follow `plans`), replacing illegal
// genes and needlessly fatal ones by Stay, and scores the final state.
IndividualResult evaluate_individual(const BitState& b, int me, const Genome& genome, const PredictedPlan& plans,
                                     const RheaParams& params = {});

class RheaAgent final : public Agent {
 public:
  explicit RheaAgent(std::uint64_t seed, RheaParams params = {}) : params_(params), rng_(seed) {}

  std::string name() const override { return "rhea"; }
  SearchResult search(const BitState& b, int me, const Budget& budget, const PredictedPlan& plans) override;
  PredictionPolicy prediction_policy() const override { return {true, params_.prediction_share, true}; }

  const RheaParams& params() const { return params_; }
  // Best fitness after initialisation and after each generation of the last search.
  const std::vector<double>& last_best_history() const { return best_history_; }

 private:
  RheaParams params_;
  Rng rng_;
  std::vector<double> best_history_;
};

}  // namespace hypersonic
