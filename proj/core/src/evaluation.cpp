#include "hypersonic/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace hypersonic {
namespace {

struct WeightField {
  const char* key;
  double EvalWeights::*real;
  int EvalWeights::*integer;
};

constexpr WeightField kWeightFields[] = {
    {"per_box", &EvalWeights::per_box, nullptr},
    {"range_capped", &EvalWeights::range_capped, nullptr},
    {"range_linear", &EvalWeights::range_linear, nullptr},
    {"bombs_cap2", &EvalWeights::bombs_cap2, nullptr},
    {"bombs_cap4", &EvalWeights::bombs_cap4, nullptr},
    {"bombs_linear", &EvalWeights::bombs_linear, nullptr},
    {"gamma", &EvalWeights::gamma, nullptr},
    {"opponent_distance", &EvalWeights::opponent_distance, nullptr},
    {"center_distance", &EvalWeights::center_distance, nullptr},
    {"box_distance", &EvalWeights::box_distance, nullptr},
    {"box_threshold", nullptr, &EvalWeights::box_threshold},
    {"death", &EvalWeights::death, nullptr},
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

constexpr JointAction kAllStay{};

// Exact survival search, used when item pickups could change later blasts.
struct SurvivalKey {
  int turn;
  int cell;
  BitPlane item_range;
  BitPlane item_bomb;
  bool operator==(const SurvivalKey&) const = default;
};

struct SurvivalKeyHash {
  std::size_t operator()(const SurvivalKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.turn) * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(k.cell);
    for (const auto w : k.item_range.words()) h = (h ^ w) * 0x100000001B3ull;
    for (const auto w : k.item_bomb.words()) h = (h ^ w) * 0x100000001B3ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

bool survive_exact(const BitState& s, int player, std::unordered_set<SurvivalKey, SurvivalKeyHash>& failed) {
  BitState resolved = s;
  TurnEvents ignored;
  explode(resolved, ignored);
  if (!resolved.players[player].alive) return false;
  if (resolved.bombs.none()) return true;
  const SurvivalKey key{s.turn, s.players[player].cell, s.item_range, s.item_bomb};
  if (failed.contains(key)) return false;
  for (const Action a : legal_after_explosion(resolved, player)) {
    if (a.drop) continue;
    BitState next = resolved;
    JointAction joint = kAllStay;
    joint[player] = a;
    apply_actions(next, joint, ignored);
    if (survive_exact(next, player, failed)) return true;
  }
  failed.insert(key);
  return false;
}

// Cells the player can occupy after each frozen step, ignoring pickups.
// Returns the number of steps survived (kMaxSteps + 1 when all bombs are outlived)
// and flags whether a reachable item is later hit by a blast.
int frozen_reach(const BitState& b, int player, const FrozenTimeline& tl, bool* pickup_matters) {
  std::array<BitPlane, FrozenTimeline::kMaxSteps + 1> future{};
  for (int t = tl.length - 1; t >= 0; --t) future[t] = future[t + 1] | tl.blast[t];
  BitPlane reach = BitPlane::single(b.players[player].cell);
  bool conflict = false;
  for (int t = 0; t < tl.length; ++t) {
    const BitPlane alive = reach.andnot(tl.blast[t]);
    if (alive.none()) {
      if (pickup_matters) *pickup_matters = conflict;
      return t;
    }
    reach = alive | (alive.neighbours() & tl.free[t]);
    if ((reach & tl.items[t] & future[t + 1]).any()) conflict = true;
  }
  if (pickup_matters) *pickup_matters = conflict;
  return FrozenTimeline::kMaxSteps + 1;
}

bool victim_doomed_after_second_turn(const BitState& s1, int attacker, int victim) {
  if (!s1.players[victim].alive) return true;
  BitState resolved = s1;
  TurnEvents ignored;
  explode(resolved, ignored);
  if (!resolved.players[victim].alive) return true;
  ActionSet attacker_moves = legal_after_explosion(resolved, attacker);
  if (attacker_moves.empty()) attacker_moves.insert(Action::stay());
  const ActionSet victim_moves = legal_after_explosion(resolved, victim);
  for (const Action a : attacker_moves) {
    bool all_doomed = true;
    for (const Action v : victim_moves) {
      BitState s2 = resolved;
      JointAction joint = kAllStay;
      joint[attacker] = a;
      joint[victim] = v;
      apply_actions(s2, joint, ignored);
      if (s2.players[victim].alive && is_survivable(s2, victim)) {
        all_doomed = false;
        break;
      }
    }
    if (all_doomed) return true;
  }
  return false;
}

}  // namespace

EvalWeights parse_weights(std::istream& in, EvalWeights base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("weights line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto* field = std::find_if(std::begin(kWeightFields), std::end(kWeightFields),
                                     [&](const WeightField& f) { return key == f.key; });
    if (field == std::end(kWeightFields)) throw std::runtime_error("weights line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    std::istringstream parse(value);
    bool ok;
    if (field->real) ok = static_cast<bool>(parse >> base.*(field->real));
    else ok = static_cast<bool>(parse >> base.*(field->integer));
    if (!ok || !(parse >> std::ws).eof()) throw std::runtime_error("weights line " + std::to_string(line_no) + ": bad value '" + value + "'");
  }
  return base;
}

EvalWeights load_weights_file(const std::string& path, EvalWeights base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weights file " + path);
  return parse_weights(in, base);
}

void EvalContext::record(const TurnEvents& events, int player, int depth, double gamma) {
  const int boxes = events.boxes_destroyed_by[player];
  boxes_destroyed += boxes;
  if (boxes > 0) decayed_boxes += boxes * std::pow(gamma, depth);
  range_pickups += events.range_pickups[player];
  bomb_pickups += events.bomb_pickups[player];
}

FrozenTimeline frozen_timeline(const BitState& b) {
  FrozenTimeline tl;
  if (b.bombs.none()) return tl;
  BitState s = b;
  for (int t = 0; t < FrozenTimeline::kMaxSteps && s.bombs.any(); ++t) {
    const BlastResult blast = propagate_blasts_detailed(s);
    TurnEvents events;
    explode(s, events);
    tl.blast[t] = blast.cells;
    tl.free[t] = s.free_cells();
    tl.items[t] = s.items();
    for (int p = 0; p < s.num_players; ++p) tl.credits[t][p] = static_cast<std::uint8_t>(events.boxes_destroyed_by[p]);
    tl.length = t + 1;
    ++s.turn;
  }
  return tl;
}

double estimated_bombs(const FrozenTimeline& timeline, int player, double gamma, int current_depth) {
  double total = 0.0;
  for (int t = 0; t < timeline.length; ++t)
    if (timeline.credits[t][player] > 0) total += timeline.credits[t][player] * std::pow(gamma, t + 1 + current_depth);
  return total;
}

double estimated_bombs(const BitState& b, int player, double gamma, int current_depth) {
  return estimated_bombs(frozen_timeline(b), player, gamma, current_depth);
}

double estimated_bombs(const GameState& s, int player, double gamma, int current_depth) {
  return estimated_bombs(from_state(s), player, gamma, current_depth);
}

bool is_survivable(const BitState& b, int player, const FrozenTimeline& timeline) {
  if (player < 0 || player >= b.num_players || !b.players[player].alive) return false;
  bool pickup_matters = false;
  const bool outlived = frozen_reach(b, player, timeline, &pickup_matters) > FrozenTimeline::kMaxSteps;
  if (!pickup_matters) return outlived;
  // A collected item no longer stops a later ray, which can change what burns and when.
  std::unordered_set<SurvivalKey, SurvivalKeyHash> failed;
  return survive_exact(b, player, failed);
}

bool is_survivable(const BitState& b, int player) { return is_survivable(b, player, frozen_timeline(b)); }

bool is_survivable(const GameState& s, int player) { return is_survivable(from_state(s), player); }

int longest_survival(const BitState& b, int player, const FrozenTimeline& timeline) {
  if (player < 0 || player >= b.num_players || !b.players[player].alive) return 0;
  return frozen_reach(b, player, timeline, nullptr);
}

bool can_kill(const BitState& b, int attacker, int victim) {
  if (attacker == victim || attacker < 0 || victim < 0 || attacker >= b.num_players || victim >= b.num_players) return false;
  if (!b.players[attacker].alive || !b.players[victim].alive) return false;
  BitState resolved = b;
  TurnEvents ignored;
  explode(resolved, ignored);
  if (!resolved.players[victim].alive) return true;
  ActionSet attacker_moves = legal_after_explosion(resolved, attacker);
  if (attacker_moves.empty()) attacker_moves.insert(Action::stay());
  const ActionSet victim_moves = legal_after_explosion(resolved, victim);
  for (const Action a : attacker_moves) {
    bool forced = true;
    for (const Action v : victim_moves) {
      BitState s1 = resolved;
      JointAction joint = kAllStay;
      joint[attacker] = a;
      joint[victim] = v;
      apply_actions(s1, joint, ignored);
      if (!victim_doomed_after_second_turn(s1, attacker, victim)) {
        forced = false;
        break;
      }
    }
    if (forced) return true;
  }
  return false;
}

bool can_kill(const GameState& s, int attacker, int victim) { return can_kill(from_state(s), attacker, victim); }

double evaluate(const BitState& b, int player, const EvalContext& ctx, const EvalWeights& w, const FrozenTimeline& timeline) {
  const PlayerBits& p = b.players[player];
  double score = w.per_box * ctx.boxes_destroyed;

  const int range = p.range;
  score += w.range_capped * std::min(5, range) + w.range_linear * range;

  const int extra = p.max_bombs - 1;
  score += w.bombs_cap2 * std::min(2, extra) + w.bombs_cap4 * std::min(4, extra) + w.bombs_linear * extra;

  score += estimated_bombs(timeline, player, w.gamma);

  const Pos me = p.pos();
  int opponent_distance = 0;
  for (int q = 0; q < b.num_players; ++q)
    if (q != player && b.players[q].alive) opponent_distance += manhattan(me, b.players[q].pos());
  score += w.opponent_distance * opponent_distance;

  const int boxes = b.boxes.count();
  if (boxes > w.box_threshold) {
    score += w.center_distance * manhattan(me, kCenter);
  } else if (boxes > 0) {
    int total = 0;
    b.boxes.for_each([&](int c) { total += manhattan(me, cell_pos(c)); });
    score += w.box_distance * (static_cast<double>(total) / boxes);
  }

  if (!p.alive) score += w.death;
  return score;
}

double evaluate(const BitState& b, int player, const EvalContext& ctx, const EvalWeights& weights) {
  return evaluate(b, player, ctx, weights, frozen_timeline(b));
}

double evaluate(const GameState& s, int player, const EvalContext& ctx, const EvalWeights& weights) {
  return evaluate(from_state(s), player, ctx, weights);
}

}  // namespace hypersonic
