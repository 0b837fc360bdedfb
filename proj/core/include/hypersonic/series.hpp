#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypersonic/arena.hpp"

namespace hypersonic {

// One agent per seat; agents.size() is the player count (2 or 3 or 4).
// Games come in rotations over one map: every agent takes every seat, so
// seating bias cancels within a rotation. Maps and agent seeds depend only on
// the rotation and the seat, never on which agent sits there.
struct SeriesConfig {
  std::vector<AgentSpec> agents;
  int games = 100;
  std::uint64_t seed = 1;
  BudgetPolicy budgets = BudgetPolicy::uniform(Budget::iters(1000));
  int threads = 1;
  double box_density = 0.35;
  ItemDistribution items;
};

// 95% Wilson score interval.
struct Interval {
  double low = 0.0;
  double high = 0.0;
};
Interval wilson_interval(int successes, int trials, double z = 1.96);

// Outcomes of `a` against `b`: a ranked strictly above b counts as a win.
struct PairStats {
  int a = 0;
  int b = 0;
  int wins = 0;
  int losses = 0;
  int draws = 0;

  int games() const { return wins + losses + draws; }
  double win_pct() const;
  double loss_pct() const;
  double draw_pct() const;
  Interval win_ci() const;
};

struct AgentSearchSummary {
  double mean_iterations = 0.0;  // per decided turn
  double mean_depth = 0.0;
  int turns = 0;
};

struct GameSummary {
  int index = 0;
  std::uint64_t map_seed = 0;
  std::vector<int> seat_agent;  // agent index per seat
  Ranking ranking;              // in seats
  std::vector<int> boxes;       // per seat
  int turns = 0;
  std::vector<AgentSearchSummary> search;  // per agent
  std::string replay;
};

struct SeriesStats {
  std::vector<std::string> labels;
  int players = 2;
  std::vector<PairStats> pairs;  // every ordered pair a != b
  std::vector<AgentSearchSummary> search;  // per agent, averaged over all decided turns
  std::vector<GameSummary> games;

  const PairStats& pair(int a, int b) const;
};

std::uint64_t series_map_seed(std::uint64_t seed, int rotation);
// Seat -> agent for game g.
std::vector<int> series_seating(int players, int game);

SeriesStats run_series(const SeriesConfig& config, const std::function<void(int done, int total)>& progress = {});

// Aligned table: one row per ordered pair with win/lose/draw percentages and the win interval.
std::string format_text(const SeriesStats& s);
// One line per game: seating, ranking, boxes and length.
std::string format_games(const SeriesStats& s);
// Same rows as comma-separated values with a header line.
std::string format_csv(const SeriesStats& s);

}  // namespace hypersonic
