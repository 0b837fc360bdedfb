#include "hypersonic/throughput.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hypersonic/agent.hpp"
#include "hypersonic/bit_engine.hpp"
#include "hypersonic/map_generator.hpp"
#include "hypersonic/mcts_agent.hpp"
#include "hypersonic/protocol.hpp"
#include "hypersonic/reference_engine.hpp"

namespace hypersonic {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }

template <class State, class StepFn>
ThroughputResult run_bench(const State& fixture, double duration_ms, int reset_every, StepFn&& step_once) {
  ThroughputResult r;
  const auto start = Clock::now();
  State s = fixture;
  int since_reset = 0;
  while (true) {
    if ((r.steps & 15) == 0 && since(start) >= duration_ms) break;
    bool died = false;
    r.player_actions += step_once(s, died);
    ++r.steps;
    if (++since_reset >= reset_every || died) {
      s = fixture;
      since_reset = 0;
      ++r.resets;
    }
  }
  r.elapsed_ms = since(start);
  return r;
}

}  // namespace

std::string to_string(EngineKind e) { return e == EngineKind::Reference ? "reference" : "bitboard"; }

ThroughputResult throughput_bench(EngineKind engine, const GameState& fixture, double duration_ms, int reset_every,
                                  std::uint64_t seed) {
  Rng rng(seed);
  if (engine == EngineKind::Reference) {
    return run_bench(fixture, duration_ms, reset_every, [&](GameState& s, bool& died) {
      JointAction joint{};
      int acted = 0;
      const int alive = s.alive_count();
      const GameState resolved = resolve_explosions(s).first;
      for (int p = 0; p < static_cast<int>(s.players.size()); ++p) {
        if (!s.players[p].alive) continue;
        const std::vector<Action> legal = legal_actions_resolved(resolved, p);
        if (!legal.empty()) joint[p] = legal[uniform_below(rng, static_cast<int>(legal.size()))];
        ++acted;
      }
      s = step(s, joint).first;
      died = s.alive_count() < alive;
      return acted;
    });
  }
  return run_bench(from_state(fixture), duration_ms, reset_every, [&](BitState& s, bool& died) {
    // Explosions are resolved once per step and shared by every seat's move generation.
    // Players caught by the explosion still count as acting (they were asked).
    JointAction joint{};
    const int alive = s.alive_count();
    TurnEvents events;
    explode(s, events);
    for (int p = 0; p < s.num_players; ++p) {
      if (!s.players[p].alive) continue;
      const ActionSet legal = legal_after_explosion(s, p);
      joint[p] = legal.nth(uniform_below(rng, legal.size()));
    }
    apply_actions(s, joint, events);
    died = s.alive_count() < alive;
    return alive;
  });
}

GameState make_midgame_fixture(int players, std::uint64_t seed, int turns) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    MapSpec spec;
    spec.seed = mix_seed(seed, attempt);
    spec.players = players;
    GameState s = generate_map(spec);
    std::vector<MctsAgent> agents;
    for (int p = 0; p < players; ++p) agents.emplace_back(mix_seed(spec.seed, p));
    bool everyone_alive = true;
    for (int t = 0; t < turns && everyone_alive; ++t) {
      const BitState b = from_state(s);
      JointAction joint{};
      for (int p = 0; p < players; ++p) joint[p] = agents[p].search(b, p, Budget::iters(200), {}).action;
      s = step(s, joint).first;
      everyone_alive = s.alive_count() == players && !is_terminal(s);
    }
    if (everyone_alive) return s;
  }
}

std::string fixture_text(const GameState& s) { return encode_turn(s, 0); }

GameState load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  GameState s;
  if (!read_turn(in, s)) throw std::runtime_error("empty fixture " + path);
  return s;
}

void save_fixture(const std::string& path, const GameState& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write fixture " + path);
  out << fixture_text(s);
}

}  // namespace hypersonic
