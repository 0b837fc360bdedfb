#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypersonic/arena.hpp"
#include "hypersonic/evaluation.hpp"
#include "hypersonic/protocol.hpp"
#include "hypersonic/reference_engine.hpp"
#include "hypersonic/series.hpp"
#include "hypersonic/throughput.hpp"

using namespace hypersonic;

namespace {

struct AgentFlags {
  std::string beam_features = "zh,op,lb,fmp,sc";
  std::string weights_file;
  std::string mcts_final = "max";
  int beam_width = 500;

  void attach(CLI::App* app) {
    app->add_option("--beam-features", beam_features, "Beam enhancements: any of zh,op,lb,fmp,sc, or none")
        ->capture_default_str();
    app->add_option("--beam-width", beam_width, "Beam width")->capture_default_str();
    app->add_option("--weights", weights_file, "Evaluation weights file (key = value lines)");
    app->add_option("--mcts-final", mcts_final, "MCTS final move by max or mean value")
        ->check(CLI::IsMember({"max", "mean"}))
        ->capture_default_str();
  }

  AgentOptions options() const {
    AgentOptions o;
    o.beam.features = parse_beam_features(beam_features);
    o.beam.beam_width = beam_width;
    o.mcts.final_by_max = mcts_final == "max";
    if (!weights_file.empty()) {
      const EvalWeights w = load_weights_file(weights_file);
      o.beam.weights = o.rhea.weights = w;
    }
    return o;
  }
};

struct BudgetFlags {
  std::string turn = "100ms";
  std::string first;

  void attach(CLI::App* app) {
    app->add_option("--budget", turn, "Per-turn budget: 100ms or 5000it")->capture_default_str();
    app->add_option("--first-budget", first, "First-turn budget (default 10x --budget)");
  }

  BudgetPolicy policy() const {
    BudgetPolicy p = BudgetPolicy::uniform(parse_budget(turn));
    if (!first.empty()) p.first_turn = parse_budget(first);
    return p;
  }
};

std::vector<int> parse_players(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const int n = std::stoi(item);
    if (n < 2 || n > kMaxPlayers) throw std::invalid_argument("player count must be 2..4");
    out.push_back(n);
  }
  return out;
}

void print_ranking(const MatchResult& r) {
  for (std::size_t g = 0; g < r.ranking.groups.size(); ++g) {
    std::cout << "#" << g + 1 << ":";
    for (const int p : r.ranking.groups[g])
      std::cout << ' ' << p << " (" << r.agents[p] << ", " << r.boxes_destroyed[p] << " boxes)";
    std::cout << '\n';
  }
}

int run_play(const std::vector<std::string>& agent_tokens, std::uint64_t seed, double density,
             const BudgetFlags& budgets, const AgentFlags& flags, const std::string& replay_path, bool verbose) {
  const AgentOptions options = flags.options();
  MapSpec map;
  map.seed = seed;
  map.players = static_cast<int>(agent_tokens.size());
  map.box_density = density;
  std::vector<std::unique_ptr<Controller>> owned;
  std::vector<Controller*> seats;
  std::vector<BudgetPolicy> policies;
  for (std::size_t i = 0; i < agent_tokens.size(); ++i) {
    const AgentSpec spec = parse_agent_spec(agent_tokens[i], options);
    owned.push_back(make_controller(spec, mix_seed(seed, i)));
    seats.push_back(owned.back().get());
    policies.push_back(spec.budgets.value_or(budgets.policy()));
  }
  const MatchResult r = run_match(seats, generate_map(map), policies, map);
  std::cout << "turns " << r.turns << '\n';
  print_ranking(r);
  for (const std::string& line : r.incidents) std::cout << "incident: " << line << '\n';
  if (verbose) {
    for (std::size_t t = 0; t < r.diagnostics.size(); ++t)
      for (std::size_t p = 0; p < r.agents.size(); ++p) {
        const PlayerTurnLog& d = r.diagnostics[t][p];
        if (!d.acted) continue;
        std::printf("turn %zu player %zu %-10s iterations %lld depth %d %.2f ms\n", t, p, to_string(d.action).c_str(),
                    static_cast<long long>(d.iterations), d.depth, d.elapsed_ms);
      }
  }
  if (!replay_path.empty()) {
    std::ofstream out(replay_path);
    write_replay(out, to_replay(r));
    std::cout << "replay written to " << replay_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypersonic engine, search agents and arena"};
  app.require_subcommand(1);

  // play
  auto* play = app.add_subcommand("play", "Play one match");
  std::vector<std::string> play_agents{"beam", "mcts"};
  std::uint64_t play_seed = 1;
  double play_density = 0.35;
  std::string replay_path;
  bool verbose = false;
  BudgetFlags play_budget;
  AgentFlags play_flags;
  play->add_option("-a,--agent", play_agents, "Agent per seat: beam|mcts|rhea|random|external:<cmd>|beam[features]")
      ->capture_default_str();
  play->add_option("--seed", play_seed, "Map and agent seed")->capture_default_str();
  play->add_option("--density", play_density, "Box density")->capture_default_str();
  play->add_option("--replay", replay_path, "Write the replay to this file");
  play->add_flag("-v,--verbose", verbose, "Print per-turn search diagnostics");
  play_budget.attach(play);
  play_flags.attach(play);

  // series
  auto* series = app.add_subcommand("series", "Play a seeded series and print win statistics");
  std::vector<std::string> series_agents{"beam", "mcts"};
  SeriesConfig series_config;
  std::string csv_path;
  BudgetFlags series_budget;
  series_budget.turn = "5000it";
  AgentFlags series_flags;
  series->add_option("-a,--agent", series_agents, "One agent per seat (2 to 4)")->capture_default_str();
  series->add_option("-n,--games", series_config.games, "Number of games")->capture_default_str();
  series->add_option("--seed", series_config.seed, "Series seed")->capture_default_str();
  series->add_option("-j,--threads", series_config.threads, "Concurrent matches")->capture_default_str();
  series->add_option("--density", series_config.box_density, "Box density")->capture_default_str();
  series->add_option("--csv", csv_path, "Also write the table as comma-separated values");
  bool list_games = false;
  std::string replay_dir;
  series->add_flag("--list-games", list_games, "Print one line per game");
  series->add_option("--replays", replay_dir, "Write every game's replay into this directory");
  series_budget.attach(series);
  series_flags.attach(series);

  // bench
  auto* bench = app.add_subcommand("bench", "Random-agent engine throughput");
  std::string bench_players = "2,3,4";
  std::string fixtures_dir = HYPERSONIC_DEFAULT_DATA_DIR "/fixtures";
  double duration = 500.0;
  int reset_every = 15;
  bench->add_option("--players", bench_players, "Player counts")->capture_default_str();
  bench->add_option("--fixtures", fixtures_dir, "Directory with midgame_<n>.txt")->capture_default_str();
  bench->add_option("--duration", duration, "Milliseconds per engine and player count")->capture_default_str();
  bench->add_option("--reset", reset_every, "Reset to the fixture every this many steps")->capture_default_str();

  // genmap
  auto* genmap = app.add_subcommand("genmap", "Print a generated map, or a midgame fixture");
  MapSpec gen_spec;
  int midgame_turns = 0;
  std::string gen_out;
  genmap->add_option("--seed", gen_spec.seed, "Map seed")->capture_default_str();
  genmap->add_option("--players", gen_spec.players, "Player count")->check(CLI::Range(2, 4))->capture_default_str();
  genmap->add_option("--density", gen_spec.box_density, "Box density")->capture_default_str();
  genmap->add_option("--midgame", midgame_turns, "Play this many turns first (fixture mode)");
  genmap->add_option("-o,--output", gen_out, "Write to file instead of stdout");

  // replay
  auto* replay = app.add_subcommand("replay", "Re-simulate a replay file and check its recorded result");
  std::string replay_in;
  replay->add_option("file", replay_in, "Replay file")->required();

  // bot
  auto* bot = app.add_subcommand("bot", "Serve one agent over the stdin/stdout protocol");
  std::string bot_agent = "beam";
  std::uint64_t bot_seed = 1;
  BudgetFlags bot_budget;
  AgentFlags bot_flags;
  bot->add_option("-a,--agent", bot_agent, "beam|mcts|rhea|random|beam[features]")->capture_default_str();
  bot->add_option("--seed", bot_seed, "Agent seed")->capture_default_str();
  bot_budget.attach(bot);
  bot_flags.attach(bot);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*play) return run_play(play_agents, play_seed, play_density, play_budget, play_flags, replay_path, verbose);

    if (*series) {
      const AgentOptions options = series_flags.options();
      for (const std::string& token : series_agents) series_config.agents.push_back(parse_agent_spec(token, options));
      series_config.budgets = series_budget.policy();
      const SeriesStats stats = run_series(series_config, [](int done, int total) {
        std::fprintf(stderr, "\r%d/%d games", done, total);
        if (done == total) std::fprintf(stderr, "\n");
      });
      if (list_games) std::cout << format_games(stats);
      std::cout << format_text(stats);
      if (!replay_dir.empty()) {
        for (const GameSummary& g : stats.games) {
          std::ofstream out(replay_dir + "/game_" + std::to_string(g.index) + ".txt");
          out << g.replay;
        }
      }
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << format_csv(stats);
      }
      return 0;
    }

    if (*bench) {
      std::printf("actions per %.0f ms, reset every %d actions or on a death\n", duration, reset_every);
      std::printf("%-8s %14s %14s %8s\n", "players", "reference", "bitboard", "ratio");
      for (const int n : parse_players(bench_players)) {
        const GameState fixture = load_fixture(fixtures_dir + "/midgame_" + std::to_string(n) + ".txt");
        const ThroughputResult ref = throughput_bench(EngineKind::Reference, fixture, duration, reset_every);
        const ThroughputResult bit = throughput_bench(EngineKind::Bitboard, fixture, duration, reset_every);
        std::printf("%-8d %14lld %14lld %8.2f\n", n, static_cast<long long>(ref.steps),
                    static_cast<long long>(bit.steps), static_cast<double>(bit.steps) / ref.steps);
      }
      return 0;
    }

    if (*genmap) {
      const GameState s = midgame_turns > 0 ? make_midgame_fixture(gen_spec.players, gen_spec.seed, midgame_turns)
                                            : generate_map(gen_spec);
      if (gen_out.empty()) std::cout << fixture_text(s);
      else save_fixture(gen_out, s);
      return 0;
    }

    if (*replay) {
      std::ifstream in(replay_in);
      if (!in) throw std::runtime_error("cannot open " + replay_in);
      const Replay r = read_replay(in);
      const GameState end = replay_final_state(r);
      const auto ranking = is_terminal(end);
      const bool ok = ranking && *ranking == r.ranking;
      std::cout << r.actions.size() << " turns, recorded result " << (ok ? "reproduced" : "NOT reproduced") << '\n';
      return ok ? 0 : 1;
    }

    if (*bot) {
      const BudgetPolicy p = bot_budget.policy();
      const AgentSpec spec = parse_agent_spec(bot_agent, bot_flags.options());
      if (spec.kind.rfind("external:", 0) == 0) throw std::invalid_argument("bot serves in-process agents only");
      auto agent = make_agent(spec.kind, bot_seed, spec.options);
      run_bot(*agent, std::cin, std::cout, p.turn, p.first_turn);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
