#include "hypersonic/arena.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hypersonic/protocol.hpp"
#include "hypersonic/reference_engine.hpp"

namespace hypersonic {
namespace {

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) throw std::runtime_error("replay: bad number '" + text + "'");
  return v;
}

std::string expect_line(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("replay: missing '" + key + "' line");
  if (line.rfind(key, 0) != 0) throw std::runtime_error("replay: expected '" + key + "', got '" + line + "'");
  return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
}

}  // namespace

AgentController::AgentController(std::unique_ptr<Agent> agent, std::string label)
    : agent_(std::move(agent)), label_(label.empty() ? agent_->name() : std::move(label)) {}

TurnReply AgentController::act(const GameState& s, int me, const Budget& budget) {
  const SearchResult r = agent_->decide(from_state(s), me, budget);
  TurnReply reply;
  reply.action = r.action;
  reply.stats = r.stats;
  return reply;
}

AgentSpec parse_agent_spec(const std::string& text, const AgentOptions& base) {
  std::string token = text;
  std::optional<BudgetPolicy> budgets;
  if (const auto at = token.rfind('@'); at != std::string::npos && token.rfind("external:", 0) != 0) {
    budgets = BudgetPolicy::uniform(parse_budget(token.substr(at + 1)));
    token.resize(at);
  }
  AgentSpec spec{token, text, base, budgets};
  if (token.rfind("external:", 0) == 0) {
    if (token.size() == 9) throw std::invalid_argument("external agent needs a command");
    return spec;
  }
  if (const auto open = token.find('['); open != std::string::npos) {
    if (token.back() != ']' || token.substr(0, open) != "beam")
      throw std::invalid_argument("bad agent '" + token + "': only beam[...] takes features");
    const std::string inside = token.substr(open + 1, token.size() - open - 2);
    spec.kind = "beam";
    if (inside == "vanilla") {
      const EvalWeights weights = base.beam.weights;
      spec.options.beam = BeamParams::vanilla();
      spec.options.beam.weights = weights;
    } else {
      spec.options.beam.features = parse_beam_features(inside);
    }
    return spec;
  }
  if (token != "beam" && token != "mcts" && token != "rhea" && token != "random")
    throw std::invalid_argument("unknown agent '" + token + "'");
  return spec;
}

std::unique_ptr<Controller> make_controller(const AgentSpec& spec, std::uint64_t seed) {
  static const std::string kExternal = "external:";
  if (spec.kind.rfind(kExternal, 0) == 0) return std::make_unique<ExternalController>(spec.kind.substr(kExternal.size()));
  return std::make_unique<AgentController>(make_agent(spec.kind, seed, spec.options), spec.display());
}

MatchResult run_match(const std::vector<Controller*>& seats, const GameState& initial, const BudgetPolicy& budgets,
                      const MapSpec& map) {
  return run_match(seats, initial, std::vector<BudgetPolicy>(seats.size(), budgets), map);
}

MatchResult run_match(const std::vector<Controller*>& seats, const GameState& initial,
                      const std::vector<BudgetPolicy>& budgets, const MapSpec& map) {
  const int n = static_cast<int>(initial.players.size());
  if (static_cast<int>(seats.size()) != n || budgets.size() != seats.size())
    throw std::invalid_argument("run_match: one controller and budget policy per player required");

  MatchResult result;
  result.map = map;
  result.initial = initial;
  result.crashed.assign(n, false);
  for (Controller* c : seats) result.agents.push_back(c->name());

  GameState s = initial;
  for (int t = 0; !is_terminal(s); ++t) {
    JointAction joint{};
    std::array<PlayerTurnLog, kMaxPlayers> logs{};
    for (int p = 0; p < n; ++p) {
      if (!s.players[p].alive) continue;
      const Budget& budget = budgets[p].for_turn(t);
      PlayerTurnLog& log = logs[p];
      log.acted = true;
      const auto incident = [&](const std::string& what) {
        log.substituted = true;
        result.incidents.push_back("turn " + std::to_string(s.turn) + " player " + std::to_string(p) + ": " + what);
      };
      if (result.crashed[p]) {
        log.substituted = true;
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      TurnReply reply = seats[p]->act(s, p, budget);
      const double elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      log.iterations = reply.stats.iterations;
      log.prediction_iterations = reply.stats.prediction_iterations;
      log.depth = reply.stats.depth;
      log.elapsed_ms = elapsed;
      Action a = reply.action;
      if (reply.crashed) {
        result.crashed[p] = true;
        incident("crashed (" + reply.note + "), plays Stay from now on");
        a = Action::stay();
      } else if (reply.failed) {
        incident("no action (" + reply.note + ")");
        a = Action::stay();
      } else if (budget.mode == Budget::Mode::WallClock && elapsed > budget.millis + kLateGraceMs) {
        incident("late by " + format_double(elapsed - budget.millis) + " ms");
        a = Action::stay();
      } else {
        const std::vector<Action> legal = legal_actions(s, p);
        // An empty set means the coming explosion kills the player anyway.
        if (!legal.empty() && std::find(legal.begin(), legal.end(), a) == legal.end()) {
          incident("illegal " + to_string(a));
          a = Action::stay();
        }
      }
      log.action = a;
      joint[p] = a;
    }
    result.actions.push_back(joint);
    result.diagnostics.push_back(logs);
    s = step(s, joint).first;
  }
  for (Controller* c : seats) c->finish();

  result.final_state = s;
  result.ranking = *is_terminal(s);
  result.turns = static_cast<int>(result.actions.size());
  for (const Player& p : s.players) result.boxes_destroyed.push_back(p.boxes_destroyed);
  return result;
}

Replay to_replay(const MatchResult& r) { return {r.map, r.agents, r.initial, r.actions, r.ranking}; }

void write_replay(std::ostream& out, const Replay& r) {
  const int n = static_cast<int>(r.initial.players.size());
  out << "hypersonic-replay " << Replay::kVersion << '\n';
  out << "seed " << r.map.seed << '\n';
  out << "players " << r.map.players << '\n';
  out << "density " << format_double(r.map.box_density) << '\n';
  out << "items " << format_double(r.map.items.none) << ' ' << format_double(r.map.items.extra_range) << ' '
      << format_double(r.map.items.extra_bomb) << '\n';
  out << "agents " << r.agents.size() << '\n';
  for (const std::string& a : r.agents) out << a << '\n';
  out << "map\n" << encode_turn(r.initial, 0);
  out << "turns " << r.actions.size() << '\n';
  for (const JointAction& j : r.actions) {
    for (int p = 0; p < n; ++p) out << (p ? " " : "") << j[p].code();
    out << '\n';
  }
  out << "ranking";
  for (const auto& group : r.ranking.groups) {
    out << ' ';
    for (std::size_t i = 0; i < group.size(); ++i) out << (i ? "=" : "") << group[i];
  }
  out << "\nend\n";
}

std::string replay_text(const Replay& r) {
  std::ostringstream out;
  write_replay(out, r);
  return out.str();
}

Replay read_replay(std::istream& in) {
  Replay r;
  const std::string version = expect_line(in, "hypersonic-replay");
  if (version != std::to_string(Replay::kVersion)) throw std::runtime_error("replay: unsupported version " + version);
  r.map.seed = std::stoull(expect_line(in, "seed"));
  r.map.players = std::stoi(expect_line(in, "players"));
  r.map.box_density = parse_double(expect_line(in, "density"));
  {
    std::istringstream items(expect_line(in, "items"));
    std::string a, b, c;
    items >> a >> b >> c;
    r.map.items = {parse_double(a), parse_double(b), parse_double(c)};
  }
  const int agents = std::stoi(expect_line(in, "agents"));
  for (int i = 0; i < agents; ++i) {
    std::string name;
    if (!std::getline(in, name)) throw std::runtime_error("replay: missing agent name");
    r.agents.push_back(name);
  }
  expect_line(in, "map");
  if (!read_turn(in, r.initial)) throw std::runtime_error("replay: missing map");
  const int n = static_cast<int>(r.initial.players.size());
  const int turns = std::stoi(expect_line(in, "turns"));
  for (int t = 0; t < turns; ++t) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("replay: truncated action log");
    std::istringstream codes(line);
    JointAction j{};
    for (int p = 0; p < n; ++p) {
      int code = -1;
      if (!(codes >> code) || code < 0 || code >= kActionCount) throw std::runtime_error("replay: bad action line '" + line + "'");
      j[p] = Action::from_code(code);
    }
    r.actions.push_back(j);
  }
  std::istringstream groups(expect_line(in, "ranking"));
  for (std::string token; groups >> token;) {
    std::vector<int> group;
    std::istringstream ids(token);
    for (std::string id; std::getline(ids, id, '=');) group.push_back(std::stoi(id));
    r.ranking.groups.push_back(group);
  }
  expect_line(in, "end");
  return r;
}

GameState replay_final_state(const Replay& r) {
  GameState s = r.initial;
  for (const JointAction& j : r.actions) s = step(s, j).first;
  return s;
}

}  // namespace hypersonic
