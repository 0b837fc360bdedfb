#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypersonic/agent.hpp"
#include "hypersonic/agent_factory.hpp"
#include "hypersonic/game_state.hpp"
#include "hypersonic/map_generator.hpp"

namespace hypersonic {

struct BudgetPolicy {
  Budget first_turn = Budget::wall(1000.0);
  Budget turn = Budget::wall(100.0);

  // The first turn gets ten times the regular budget.
  static BudgetPolicy uniform(const Budget& turn) { return {turn.scaled(10.0), turn}; }
  const Budget& for_turn(int turn_index) const { return turn_index == 0 ? first_turn : turn; }
};

// Extra time granted past a wall-clock budget before the reply counts as late.
inline constexpr double kLateGraceMs = 5.0;

struct TurnReply {
  Action action;
  bool failed = false;   // no usable reply this turn
  bool crashed = false;  // the controller is gone for good
  std::string note;
  SearchStats stats;
};

// One seat at the table: an in-process agent, an external process, or a script.
class Controller {
 public:
  virtual ~Controller() = default;
  virtual std::string name() const = 0;
  virtual TurnReply act(const GameState& s, int me, const Budget& budget) = 0;
  // Called once when the match is over.
  virtual void finish() {}
};

class AgentController final : public Controller {
 public:
  explicit AgentController(std::unique_ptr<Agent> agent, std::string label = {});
  std::string name() const override { return label_; }
  TurnReply act(const GameState& s, int me, const Budget& budget) override;

 private:
  std::unique_ptr<Agent> agent_;
  std::string label_;
};

class ScriptedController final : public Controller {
 public:
  using Script = std::function<Action(const GameState&, int)>;
  ScriptedController(std::string label, Script script) : label_(std::move(label)), script_(std::move(script)) {}
  std::string name() const override { return label_; }
  TurnReply act(const GameState& s, int me, const Budget&) override { return {script_(s, me), false, false, {}, {}}; }

 private:
  std::string label_;
  Script script_;
};

// Runs `sh -c command` and talks the stream protocol over its stdin/stdout.
// The process receives the init line before its first turn. In iteration
// mode a reply may take up to `iteration_timeout_ms`.
class ExternalController final : public Controller {
 public:
  explicit ExternalController(std::string command, double iteration_timeout_ms = 30'000.0);
  ~ExternalController() override;
  ExternalController(const ExternalController&) = delete;
  ExternalController& operator=(const ExternalController&) = delete;

  std::string name() const override { return "external:" + command_; }
  TurnReply act(const GameState& s, int me, const Budget& budget) override;
  void finish() override;

 private:
  bool read_line(std::string& line, double timeout_ms);
  bool write_all(const std::string& text);

  std::string command_;
  double iteration_timeout_ms_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  bool started_ = false;
  bool dead_ = false;
  std::string buffer_;
};

// Agent kinds: beam, mcts, rhea, random, or external:<command>.
struct AgentSpec {
  std::string kind;
  std::string label;  // defaults to kind
  AgentOptions options;
  std::optional<BudgetPolicy> budgets;  // overrides the match-wide policy for this agent

  std::string display() const { return label.empty() ? kind : label; }
};

// "beam", "mcts", "rhea", "random", "external:<command>", or a beam with its
// own feature set: "beam[zh,op]" / "beam[vanilla]". A trailing "@<budget>"
// ("mcts@12500it", "beam@50ms") gives the agent its own turn budget, with ten
// times that for the first turn. Throws std::invalid_argument.
AgentSpec parse_agent_spec(const std::string& token, const AgentOptions& base = {});

std::unique_ptr<Controller> make_controller(const AgentSpec& spec, std::uint64_t seed);

struct PlayerTurnLog {
  bool acted = false;  // alive and asked for an action
  Action action;
  bool substituted = false;
  std::int64_t iterations = 0;
  std::int64_t prediction_iterations = 0;
  int depth = 0;
  double elapsed_ms = 0.0;
};

struct MatchResult {
  MapSpec map;
  std::vector<std::string> agents;
  GameState initial;
  GameState final_state;
  Ranking ranking;
  std::vector<int> boxes_destroyed;
  int turns = 0;
  std::vector<JointAction> actions;                    // per turn; Stay for dead players
  std::vector<std::array<PlayerTurnLog, kMaxPlayers>> diagnostics;  // per turn; only acting players are filled
  std::vector<bool> crashed;
  std::vector<std::string> incidents;  // substitutions and crashes, one line each
};

// Referee loop. Illegal, late or missing replies become Stay; a crashed
// controller plays Stay for the rest of the match.
MatchResult run_match(const std::vector<Controller*>& seats, const GameState& initial, const BudgetPolicy& budgets,
                      const MapSpec& map = {});
// Same with one budget policy per seat.
MatchResult run_match(const std::vector<Controller*>& seats, const GameState& initial,
                      const std::vector<BudgetPolicy>& budgets, const MapSpec& map = {});

struct Replay {
  static constexpr int kVersion = 1;

  MapSpec map;
  std::vector<std::string> agents;
  GameState initial;
  std::vector<JointAction> actions;
  Ranking ranking;

  bool operator==(const Replay&) const = default;
};

Replay to_replay(const MatchResult& r);
void write_replay(std::ostream& out, const Replay& r);
std::string replay_text(const Replay& r);
// Throws std::runtime_error on malformed input.
Replay read_replay(std::istream& in);

// Replays the recorded actions on the reference engine.
GameState replay_final_state(const Replay& r);

}  // namespace hypersonic
