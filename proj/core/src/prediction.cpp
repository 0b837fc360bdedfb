#include "hypersonic/prediction.hpp"

namespace hypersonic {

Budget prediction_budget(const PredictionPolicy& policy, const Budget& turn_budget, int opponents) {
  if (!policy.enabled || opponents <= 0) return turn_budget.scaled(0.0);
  return turn_budget.scaled(policy.per_opponent ? policy.share : policy.share / opponents);
}

PredictedPlan predict(const BitState& b, int me, Agent& algorithm, const Budget& per_opponent, std::int64_t* iterations_used) {
  PredictedPlan plan;
  std::int64_t used = 0;
  if (!per_opponent.empty()) {
    const PredictedPlan everyone_still;
    for (int q = 0; q < b.num_players; ++q) {
      if (q == me || !b.players[q].alive) continue;
      SearchResult r = algorithm.search(b, q, per_opponent, everyone_still);
      plan.actions[q] = std::move(r.principal);
      plan.present[q] = true;
      used += r.stats.iterations;
    }
  }
  if (iterations_used) *iterations_used = used;
  return plan;
}

}  // namespace hypersonic
