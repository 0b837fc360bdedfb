#pragma once

#include <cstdint>

#include "hypersonic/agent.hpp"

namespace hypersonic {

// Budget each opponent's prediction gets under `policy` for a turn.
Budget prediction_budget(const PredictionPolicy& policy, const Budget& turn_budget, int opponents);

// Runs `algorithm` for every living opponent of `me`, each time with all other
// players frozen, and keeps its principal line. An empty budget yields empty
// plans. `iterations_used` receives the total search iterations spent.
PredictedPlan predict(const BitState& b, int me, Agent& algorithm, const Budget& per_opponent,
                      std::int64_t* iterations_used = nullptr);

}  // namespace hypersonic
