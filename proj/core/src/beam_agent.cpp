#include "hypersonic/beam_agent.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "hypersonic/zobrist.hpp"

namespace hypersonic {
namespace {

struct Node {
  BitState state;
  EvalContext ctx;
  double score = 0.0;
  std::uint64_t hash = 0;
  Action root;
};

struct Link {
  int parent;
  Action action;
};

bool ranks_before(const Node& a, const Node& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.hash < b.hash;
}

BitState after_action(const BitState& resolved, const JointAction& joint) {
  BitState next = resolved;
  TurnEvents ignored;
  apply_actions(next, joint, ignored);
  return next;
}

int credits_through(const FrozenTimeline& tl, int player, int last_step) {
  int total = 0;
  for (int t = 0; t <= last_step && t < tl.length; ++t) total += tl.credits[t][player];
  return total;
}

// An action after which both the agent and the last enemy are doomed, the
// enemy no later than the agent, and the agent wins any tie on boxes whatever
// the enemy does now. `resolved` has this turn's explosion applied.
std::optional<Action> suicide_win(const BitState& resolved, int me, ActionSet legal) {
  int enemy = -1;
  for (int p = 0; p < resolved.num_players; ++p) {
    if (p == me || !resolved.players[p].alive) continue;
    if (enemy >= 0) return std::nullopt;
    enemy = p;
  }
  if (enemy < 0) return std::nullopt;
  const ActionSet enemy_moves = legal_after_explosion(resolved, enemy);
  const int items = resolved.items().count();
  for (const Action a : legal) {
    bool certain = true;
    for (const Action ea : enemy_moves) {
      JointAction joint{};
      joint[me] = a;
      joint[enemy] = ea;
      const BitState child = after_action(resolved, joint);
      const FrozenTimeline tl = frozen_timeline(child);
      const int mine = longest_survival(child, me, tl);
      const int theirs = longest_survival(child, enemy, tl);
      if (mine > FrozenTimeline::kMaxSteps || theirs > mine) {
        certain = false;
        break;
      }
      if (theirs < mine) continue;
      const PlayerBits& e = child.players[enemy];
      const int my_boxes = child.players[me].boxes_destroyed + credits_through(tl, me, mine);
      const int enemy_best = e.boxes_destroyed + credits_through(tl, enemy, theirs) + 4 * (e.bombs_available + items);
      if (my_boxes <= enemy_best) {
        certain = false;
        break;
      }
    }
    if (certain && !enemy_moves.empty()) return a;
  }
  return std::nullopt;
}

}  // namespace

BeamFeatures parse_beam_features(const std::string& text) {
  BeamFeatures f{false, false, false, false, false};
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token.erase(std::remove(token.begin(), token.end(), ' '), token.end());
    std::transform(token.begin(), token.end(), token.begin(), [](unsigned char c) { return std::tolower(c); });
    if (token.empty() || token == "none") continue;
    if (token == "zh") f.zh = true;
    else if (token == "op") f.op = true;
    else if (token == "lb") f.lb = true;
    else if (token == "fmp") f.fmp = true;
    else if (token == "sc") f.sc = true;
    else if (token == "all") f = BeamFeatures{};
    else throw std::invalid_argument("unknown beam feature '" + token + "'");
  }
  return f;
}

std::string to_string(const BeamFeatures& f) {
  std::string out;
  const auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(f.zh, "zh");
  add(f.op, "op");
  add(f.lb, "lb");
  add(f.fmp, "fmp");
  add(f.sc, "sc");
  return out.empty() ? "none" : out;
}

BeamParams BeamParams::vanilla() {
  BeamParams p;
  p.beam_width = 1000;
  p.features = BeamFeatures{true, false, false, false, false};
  return p;
}

RootPruning first_move_prune(const BitState& b, int me, const PredictedPlan& plans) {
  RootPruning out;
  BitState resolved = b;
  TurnEvents ignored;
  explode(resolved, ignored);
  if (!resolved.players[me].alive) return out;
  const ActionSet legal = legal_after_explosion(resolved, me);

  if (const auto win = suicide_win(resolved, me, legal)) {
    out.forced = *win;
    out.allowed.insert(*win);
    return out;
  }

  ActionSet killers;
  for (const Action a : legal) {
    const BitState child = after_action(resolved, plans.joint(0, me, a));
    if (!is_survivable(child, me)) continue;
    out.allowed.insert(a);
    for (int e = 0; e < child.num_players; ++e) {
      if (e == me || !child.players[e].alive) continue;
      if (can_kill(child, me, e)) {
        killers.insert(a);
        break;
      }
    }
  }
  if (!killers.empty()) out.allowed = killers;
  return out;
}

Action longest_survival_action(const BitState& b, int me, const PredictedPlan& plans, const EvalWeights& weights) {
  BitState resolved = b;
  TurnEvents ignored;
  explode(resolved, ignored);
  Action best = Action::stay();
  int best_steps = -1;
  double best_score = 0.0;
  for (const Action a : legal_after_explosion(resolved, me)) {
    const BitState child = after_action(resolved, plans.joint(0, me, a));
    const FrozenTimeline tl = frozen_timeline(child);
    const int steps = longest_survival(child, me, tl);
    const double score = evaluate(child, me, {}, weights, tl);
    if (steps > best_steps || (steps == best_steps && score > best_score)) {
      best = a;
      best_steps = steps;
      best_score = score;
    }
  }
  return best;
}

PredictionPolicy BeamAgent::prediction_policy() const {
  return {params_.features.op, params_.prediction_share, false};
}

SearchResult BeamAgent::search(const BitState& b, int me, const Budget& budget, const PredictedPlan& given_plans) {
  SearchClock clock(budget);
  SearchResult result;
  levels_.clear();
  const PredictedPlan still;
  const PredictedPlan& plans = params_.features.op ? given_plans : still;
  const BeamFeatures& f = params_.features;
  const EvalWeights& w = params_.weights;

  const auto finish = [&](Action a) {
    result.action = a;
    if (result.principal.empty()) result.principal = {a};
    result.stats.iterations = clock.iterations();
    result.stats.elapsed_ms = clock.elapsed_ms();
    return result;
  };

  if (me < 0 || me >= b.num_players || !b.players[me].alive) return finish(Action::stay());

  ActionSet roots;
  if (f.fmp) {
    const RootPruning pruning = first_move_prune(b, me, plans);
    if (pruning.forced) return finish(*pruning.forced);
    roots = pruning.allowed;
    if (roots.empty()) return finish(longest_survival_action(b, me, plans, w));
  } else {
    roots = bit_legal_actions(b, me);
    if (roots.empty()) return finish(Action::stay());
  }

  std::vector<Node> level(1);
  level[0].state = b;
  level[0].hash = zobrist_hash(b);
  std::vector<std::vector<Link>> history;
  std::vector<Node> children;
  std::vector<Link> child_links;
  std::vector<int> order;
  std::unordered_set<std::uint64_t> seen;
  std::array<int, kCells> per_cell{};

  const int depth_limit = std::min(params_.max_depth, std::max(1, kTurnLimit - b.turn));
  const bool check_every = budget.mode == Budget::Mode::Iterations;
  bool stopped = false;

  for (int depth = 0; depth < depth_limit && !stopped; ++depth) {
    children.clear();
    child_links.clear();
    for (int i = 0; i < static_cast<int>(level.size()) && !stopped; ++i) {
      const Node& node = level[i];
      BitState resolved = node.state;
      TurnEvents explosion;
      explode(resolved, explosion);
      if (!resolved.players[me].alive) continue;
      const ActionSet actions = depth == 0 ? roots : legal_after_explosion(resolved, me);
      for (const Action a : actions) {
        Node child;
        child.state = resolved;
        TurnEvents events = explosion;
        apply_actions(child.state, plans.joint(depth, me, a), events);
        child.ctx = node.ctx;
        child.ctx.record(events, me, depth + 1, w.gamma);
        const FrozenTimeline tl = frozen_timeline(child.state);
        child.score = evaluate(child.state, me, child.ctx, w, tl);
        if (f.sc && !is_survivable(child.state, me, tl)) child.score -= params_.sc_penalty;
        child.hash = zobrist_update(node.hash, node.state, child.state);
        child.root = depth == 0 ? a : node.root;
        children.push_back(std::move(child));
        child_links.push_back({i, a});
        clock.tick();
        // The first level always completes so there is a scored answer.
        if (depth > 0 && (check_every || (clock.iterations() & 63) == 0) && clock.done()) {
          stopped = true;
          break;
        }
      }
    }
    if (stopped || children.empty()) break;

    order.resize(children.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return ranks_before(children[x], children[y]); });
    seen.clear();
    per_cell.fill(0);
    std::vector<Node> next;
    std::vector<Link> links;
    next.reserve(std::min<std::size_t>(children.size(), params_.beam_width));
    for (const int idx : order) {
      if (static_cast<int>(next.size()) >= params_.beam_width) break;
      Node& c = children[idx];
      if (f.zh && !seen.insert(c.hash).second) continue;
      if (f.lb) {
        int& count = per_cell[c.state.players[me].cell];
        if (count >= params_.local_beam_width) continue;
        ++count;
      }
      next.push_back(std::move(c));
      links.push_back(child_links[idx]);
    }
    level = std::move(next);
    history.push_back(std::move(links));
    BeamLevelStats stats;
    stats.size = static_cast<int>(level.size());
    per_cell.fill(0);
    seen.clear();
    for (const Node& n : level) {
      stats.max_per_cell = std::max(stats.max_per_cell, ++per_cell[n.state.players[me].cell]);
      stats.unique_hashes = seen.insert(n.hash).second && stats.unique_hashes;
    }
    levels_.push_back(stats);
    result.stats.depth = depth + 1;
    result.stats.best_score = level[0].score;
    if (clock.done()) break;
  }

  std::vector<Action> line;
  for (int d = static_cast<int>(history.size()) - 1, idx = 0; d >= 0; --d) {
    line.push_back(history[d][idx].action);
    idx = history[d][idx].parent;
  }
  std::reverse(line.begin(), line.end());
  result.principal = std::move(line);
  return finish(level[0].root);
}

}  // namespace hypersonic
