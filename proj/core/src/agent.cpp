#include "hypersonic/agent.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "hypersonic/prediction.hpp"

namespace hypersonic {

Budget Budget::scaled(double factor) const {
  if (mode == Mode::WallClock) return wall(millis * factor);
  return iters(static_cast<std::int64_t>(static_cast<double>(iterations) * factor));
}

std::string Budget::to_string() const {
  std::ostringstream out;
  if (mode == Mode::WallClock) out << millis << "ms";
  else out << iterations << "it";
  return out.str();
}

Budget parse_budget(const std::string& text) {
  std::string number = text;
  bool iterations = false;
  if (number.ends_with("it")) {
    iterations = true;
    number.resize(number.size() - 2);
  } else if (number.ends_with("ms")) {
    number.resize(number.size() - 2);
  }
  if (iterations) {
    std::int64_t n = 0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), n);
    if (ec != std::errc{} || end != number.data() + number.size() || n < 0) throw std::invalid_argument("bad budget: " + text);
    return Budget::iters(n);
  }
  double ms = 0;
  const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), ms);
  if (ec != std::errc{} || end != number.data() + number.size() || ms < 0) throw std::invalid_argument("bad budget: " + text);
  return Budget::wall(ms);
}

SearchClock::SearchClock(const Budget& budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

bool SearchClock::done() const {
  if (budget_.mode == Budget::Mode::Iterations) return used_ >= budget_.iterations;
  return elapsed_ms() >= budget_.millis;
}

double SearchClock::elapsed_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
}

Budget SearchClock::remaining() const {
  if (budget_.mode == Budget::Mode::Iterations) return Budget::iters(std::max<std::int64_t>(0, budget_.iterations - used_));
  return Budget::wall(std::max(0.0, budget_.millis - elapsed_ms()));
}

std::string SearchStats::to_string() const {
  std::ostringstream out;
  out << "iterations=" << iterations << " depth=" << depth << " best=" << best_score << " elapsed_ms=" << elapsed_ms
      << " prediction_iterations=" << prediction_iterations;
  return out.str();
}

SearchResult Agent::decide(const BitState& b, int me, const Budget& turn_budget) {
  SearchClock clock(turn_budget);
  const PredictionPolicy policy = prediction_policy();
  int opponents = 0;
  for (int p = 0; p < b.num_players; ++p) opponents += p != me && b.players[p].alive;

  PredictedPlan plans;
  std::int64_t prediction_iterations = 0;
  if (policy.enabled && opponents > 0) {
    const Budget each = prediction_budget(policy, turn_budget, opponents);
    plans = predict(b, me, *this, each, &prediction_iterations);
    // Charge the allotment rather than what was used so iteration runs stay reproducible.
    if (turn_budget.mode == Budget::Mode::Iterations) clock.tick(each.iterations * opponents);
  }
  SearchResult result = search(b, me, clock.remaining(), plans);
  result.stats.prediction_iterations = prediction_iterations;
  result.stats.elapsed_ms = clock.elapsed_ms();
  return result;
}

SearchResult RandomAgent::search(const BitState& b, int me, const Budget&, const PredictedPlan&) {
  SearchResult r;
  const ActionSet legal = bit_legal_actions(b, me);
  r.action = legal.empty() ? Action::stay() : legal.nth(uniform_below(rng_, legal.size()));
  r.principal = {r.action};
  r.stats.iterations = 1;
  r.stats.depth = 1;
  return r;
}

}  // namespace hypersonic
