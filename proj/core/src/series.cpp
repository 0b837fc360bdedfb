#include "hypersonic/series.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hypersonic {
namespace {

std::string fixed(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

GameSummary play_game(const SeriesConfig& c, int g) {
  const int n = static_cast<int>(c.agents.size());
  const int rotation = g / n;
  GameSummary out;
  out.index = g;
  out.map_seed = series_map_seed(c.seed, rotation);
  out.seat_agent = series_seating(n, g);

  MapSpec map;
  map.seed = out.map_seed;
  map.players = n;
  map.box_density = c.box_density;
  map.items = c.items;
  const GameState initial = generate_map(map);

  std::vector<std::unique_ptr<Controller>> owned;
  std::vector<Controller*> seats;
  std::vector<BudgetPolicy> budgets;
  for (int seat = 0; seat < n; ++seat) {
    const AgentSpec& spec = c.agents[out.seat_agent[seat]];
    owned.push_back(make_controller(spec, mix_seed(out.map_seed, seat)));
    seats.push_back(owned.back().get());
    budgets.push_back(spec.budgets.value_or(c.budgets));
  }
  const MatchResult r = run_match(seats, initial, budgets, map);
  out.ranking = r.ranking;
  out.boxes = r.boxes_destroyed;
  out.turns = r.turns;
  out.search.assign(n, {});
  for (const auto& row : r.diagnostics) {
    for (int seat = 0; seat < n; ++seat) {
      const PlayerTurnLog& log = row[seat];
      if (!log.acted) continue;
      AgentSearchSummary& s = out.search[out.seat_agent[seat]];
      s.mean_iterations += static_cast<double>(log.iterations);
      s.mean_depth += log.depth;
      ++s.turns;
    }
  }
  for (AgentSearchSummary& s : out.search) {
    if (s.turns == 0) continue;
    s.mean_iterations /= s.turns;
    s.mean_depth /= s.turns;
  }
  out.replay = replay_text(to_replay(r));
  return out;
}

}  // namespace

Interval wilson_interval(int successes, int trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = trials;
  const double p = successes / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double PairStats::win_pct() const { return games() ? 100.0 * wins / games() : 0.0; }
double PairStats::loss_pct() const { return games() ? 100.0 * losses / games() : 0.0; }
double PairStats::draw_pct() const { return games() ? 100.0 * draws / games() : 0.0; }
Interval PairStats::win_ci() const { return wilson_interval(wins, games()); }

const PairStats& SeriesStats::pair(int a, int b) const {
  for (const PairStats& p : pairs)
    if (p.a == a && p.b == b) return p;
  throw std::out_of_range("no such pair");
}

std::uint64_t series_map_seed(std::uint64_t seed, int rotation) { return mix_seed(seed, static_cast<std::uint64_t>(rotation)); }

std::vector<int> series_seating(int players, int game) {
  std::vector<int> seats(players);
  for (int seat = 0; seat < players; ++seat) seats[seat] = (seat + game) % players;
  return seats;
}

SeriesStats run_series(const SeriesConfig& config, const std::function<void(int, int)>& progress) {
  const int n = static_cast<int>(config.agents.size());
  if (n < 2 || n > kMaxPlayers) throw std::invalid_argument("series needs 2 to 4 agents");

  SeriesStats stats;
  stats.players = n;
  for (const AgentSpec& a : config.agents) stats.labels.push_back(a.display());
  stats.games.resize(config.games);

  std::atomic<int> next{0};
  std::atomic<int> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  const auto worker = [&] {
    for (int g; (g = next++) < config.games;) {
      try {
        stats.games[g] = play_game(config, g);
      } catch (...) {
        const std::lock_guard lock(progress_mutex);
        if (!failure) failure = std::current_exception();
      }
      const int finished = ++done;
      if (progress) {
        const std::lock_guard lock(progress_mutex);
        progress(finished, config.games);
      }
    }
  };
  const int threads = std::max(1, std::min(config.threads, config.games));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) stats.pairs.push_back({a, b, 0, 0, 0});
  stats.search.assign(n, {});
  for (const GameSummary& game : stats.games) {
    std::vector<int> place(n);
    for (int seat = 0; seat < n; ++seat) place[game.seat_agent[seat]] = game.ranking.place_of(seat);
    for (PairStats& p : stats.pairs) {
      if (place[p.a] < place[p.b]) ++p.wins;
      else if (place[p.a] > place[p.b]) ++p.losses;
      else ++p.draws;
    }
    for (int a = 0; a < n; ++a) {
      const AgentSearchSummary& s = game.search[a];
      stats.search[a].mean_iterations += s.mean_iterations * s.turns;
      stats.search[a].mean_depth += s.mean_depth * s.turns;
      stats.search[a].turns += s.turns;
    }
  }
  for (AgentSearchSummary& s : stats.search) {
    if (s.turns == 0) continue;
    s.mean_iterations /= s.turns;
    s.mean_depth /= s.turns;
  }
  return stats;
}

std::string format_text(const SeriesStats& s) {
  std::size_t width = 5;
  for (const std::string& l : s.labels) width = std::max(width, l.size());
  const auto pad = [](const std::string& text, std::size_t w) {
    return text.size() >= w ? text : std::string(w - text.size(), ' ') + text;
  };
  std::ostringstream out;
  out << s.players << " players, " << s.games.size() << " games\n";
  out << pad("agent", width) << "  " << pad("vs", width) << "    win%   lose%   draw%  win% 95% CI\n";
  for (const PairStats& p : s.pairs) {
    const Interval ci = p.win_ci();
    out << pad(s.labels[p.a], width) << "  " << pad(s.labels[p.b], width) << "  " << pad(fixed(p.win_pct(), 2), 6)
        << "  " << pad(fixed(p.loss_pct(), 2), 6) << "  " << pad(fixed(p.draw_pct(), 2), 6) << "  ["
        << fixed(100.0 * ci.low, 1) << ", " << fixed(100.0 * ci.high, 1) << "]\n";
  }
  out << pad("agent", width) << "  iterations/turn  depth\n";
  for (std::size_t a = 0; a < s.labels.size(); ++a)
    out << pad(s.labels[a], width) << "  " << pad(fixed(s.search[a].mean_iterations, 1), 15) << "  "
        << pad(fixed(s.search[a].mean_depth, 2), 5) << '\n';
  return out.str();
}

std::string format_games(const SeriesStats& s) {
  std::ostringstream out;
  for (const GameSummary& g : s.games) {
    out << "game " << g.index << " map " << g.map_seed << " turns " << g.turns << " |";
    for (std::size_t seat = 0; seat < g.seat_agent.size(); ++seat)
      out << ' ' << s.labels[g.seat_agent[seat]] << ":place " << g.ranking.place_of(static_cast<int>(seat)) + 1
          << ",boxes " << g.boxes[seat];
    out << '\n';
  }
  return out.str();
}

std::string format_csv(const SeriesStats& s) {
  std::ostringstream out;
  out << "players,agent,opponent,games,wins,losses,draws,win_pct,loss_pct,draw_pct,win_ci_low,win_ci_high\n";
  for (const PairStats& p : s.pairs) {
    const Interval ci = p.win_ci();
    out << s.players << ',' << s.labels[p.a] << ',' << s.labels[p.b] << ',' << p.games() << ',' << p.wins << ','
        << p.losses << ',' << p.draws << ',' << fixed(p.win_pct(), 2) << ',' << fixed(p.loss_pct(), 2) << ','
        << fixed(p.draw_pct(), 2) << ',' << fixed(100.0 * ci.low, 2) << ',' << fixed(100.0 * ci.high, 2) << '\n';
  }
  return out.str();
}

}  // namespace hypersonic
