#include "hypersonic/mcts_agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypersonic/evaluation.hpp"

namespace hypersonic {
namespace {

struct TreeNode {
  BitState state;  // position after `depth` rounds
  int parent = -1;
  Action action;
  int depth = 0;
  double discounted = 0.0;  // weighted rewards of the rounds so far
  bool dead = false;        // dies in the explosion opening the next round
  ActionSet untried;
  std::array<int, kActionCount> children{};
  int visits = 0;
  double sum = 0.0;
  double max = 0.0;

  double mean() const { return visits ? sum / visits : 0.0; }
};

}  // namespace

double mcts_round_reward(const TurnEvents& events, int me, int max_bombs_after, const MctsParams& params) {
  double reward = events.boxes_destroyed_by[me];
  const int pickups = events.bomb_pickups[me];
  for (int k = 0; k < pickups; ++k)
    if (max_bombs_after - pickups + k < params.bomb_reward_cap) reward += 1.0;
  return reward;
}

double mcts_value(bool dead, double discounted_rewards, int box_distance, const MctsParams& params) {
  if (dead) return 0.0;
  return params.value_scale * (discounted_rewards + std::max(0.0, params.survival_base - box_distance));
}

int box_distance_sum(const BitState& b, int player) {
  const Pos me = b.players[player].pos();
  int total = 0;
  b.boxes.for_each([&](int c) { total += manhattan(me, cell_pos(c)); });
  return total;
}

ActionSet root_prune(const BitState& b, int me, const PredictedPlan& plans) {
  BitState resolved = b;
  TurnEvents ignored;
  explode(resolved, ignored);
  const ActionSet legal = legal_after_explosion(resolved, me);
  ActionSet allowed;
  for (const Action a : legal) {
    BitState child = resolved;
    apply_actions(child, plans.joint(0, me, a), ignored);
    bool trapped = false;
    for (int e = 0; e < child.num_players && !trapped; ++e)
      if (e != me && child.players[e].alive) trapped = can_kill(child, e, me);
    if (!trapped) allowed.insert(a);
  }
  return allowed.empty() ? legal : allowed;
}

int final_choice(const std::vector<RootChildStats>& children, bool by_max) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(children.size()); ++i) {
    if (best < 0) {
      best = i;
      continue;
    }
    const RootChildStats& c = children[i];
    const RootChildStats& b = children[best];
    const double cv = by_max ? c.max : c.mean;
    const double bv = by_max ? b.max : b.mean;
    if (cv != bv) {
      if (cv > bv) best = i;
    } else if (c.visits != b.visits) {
      if (c.visits > b.visits) best = i;
    } else if (c.action.code() < b.action.code()) {
      best = i;
    }
  }
  return best;
}

SearchResult MctsAgent::search(const BitState& b, int me, const Budget& budget, const PredictedPlan& plans) {
  SearchClock clock(budget);
  SearchResult result;
  last_root_.clear();
  const MctsParams& p = params_;

  const auto finish = [&](Action a) {
    result.action = a;
    if (result.principal.empty()) result.principal = {a};
    result.stats.iterations = clock.iterations();
    result.stats.elapsed_ms = clock.elapsed_ms();
    return result;
  };

  if (me < 0 || me >= b.num_players || !b.players[me].alive) return finish(Action::stay());
  const ActionSet allowed = p.root_prune ? root_prune(b, me, plans) : bit_legal_actions(b, me);
  if (allowed.empty()) return finish(Action::stay());
  if (allowed.size() == 1) return finish(allowed.nth(0));

  std::vector<double> weight(p.rollout_depth + 2);
  for (int r = 0; r < static_cast<int>(weight.size()); ++r) weight[r] = p.reward_scale * std::pow(p.gamma, r);

  std::vector<TreeNode> nodes;
  nodes.reserve(4096);
  const auto init = [&](TreeNode& n) {
    n.children.fill(-1);
    if (n.depth >= p.rollout_depth) return;
    BitState resolved = n.state;
    TurnEvents ignored;
    explode(resolved, ignored);
    if (!resolved.players[me].alive) {
      n.dead = true;
      return;
    }
    n.untried = legal_after_explosion(resolved, me);
  };

  nodes.emplace_back();
  nodes[0].state = b;
  init(nodes[0]);
  nodes[0].untried = allowed;

  int max_depth = 0;
  while (!clock.done() || !nodes[0].untried.empty()) {
    clock.tick();
    int n = 0;
    // Selection.
    for (;;) {
      const TreeNode& node = nodes[n];
      if (node.dead || node.depth >= p.rollout_depth || !node.untried.empty()) break;
      int best = -1;
      double best_uct = -std::numeric_limits<double>::infinity();
      const double log_n = std::log(static_cast<double>(node.visits));
      for (const int c : node.children) {
        if (c < 0) continue;
        const TreeNode& child = nodes[c];
        const double uct = child.mean() + p.uct_c * std::sqrt(log_n / child.visits);
        if (uct > best_uct) {
          best_uct = uct;
          best = c;
        }
      }
      if (best < 0) break;
      n = best;
    }
    // Expansion.
    if (!nodes[n].dead && nodes[n].depth < p.rollout_depth && !nodes[n].untried.empty()) {
      ActionSet& untried = nodes[n].untried;
      const Action a = untried.nth(uniform_below(rng_, untried.size()));
      untried = ActionSet(static_cast<std::uint16_t>(untried.bits() & ~(1u << a.code())));
      TreeNode child;
      child.state = nodes[n].state;
      TurnEvents events;
      explode(child.state, events);
      apply_actions(child.state, plans.joint(nodes[n].depth, me, a), events);
      child.parent = n;
      child.action = a;
      child.depth = nodes[n].depth + 1;
      child.discounted = nodes[n].discounted +
                         mcts_round_reward(events, me, child.state.players[me].max_bombs, p) * weight[child.depth];
      init(child);
      const int id = static_cast<int>(nodes.size());
      nodes[n].children[a.code()] = id;
      nodes.push_back(std::move(child));
      n = id;
      max_depth = std::max(max_depth, nodes[n].depth);
    }
    // Rollout.
    double value = 0.0;
    if (!nodes[n].dead) {
      BitState s = nodes[n].state;
      double discounted = nodes[n].discounted;
      bool dead = false;
      for (int d = nodes[n].depth; d < p.rollout_depth; ++d) {
        TurnEvents events;
        explode(s, events);
        if (!s.players[me].alive) {
          dead = true;
          break;
        }
        const ActionSet legal = legal_after_explosion(s, me);
        const Action a = legal.nth(uniform_below(rng_, legal.size()));
        apply_actions(s, plans.joint(d, me, a), events);
        discounted += mcts_round_reward(events, me, s.players[me].max_bombs, p) * weight[d + 1];
      }
      value = mcts_value(dead, discounted, box_distance_sum(s, me), p);
    }
    // Backpropagation.
    for (int k = n; k >= 0; k = nodes[k].parent) {
      TreeNode& node = nodes[k];
      ++node.visits;
      node.sum += value;
      node.max = std::max(node.max, value);
    }
  }

  for (const int c : nodes[0].children) {
    if (c < 0) continue;
    last_root_.push_back({nodes[c].action, nodes[c].visits, nodes[c].mean(), nodes[c].max});
  }
  const int pick = final_choice(last_root_, p.final_by_max);
  const Action chosen = last_root_[pick].action;

  result.principal.push_back(chosen);
  for (int n = nodes[0].children[chosen.code()];;) {
    int next = -1;
    for (const int c : nodes[n].children)
      if (c >= 0 && (next < 0 || nodes[c].max > nodes[next].max)) next = c;
    if (next < 0) break;
    result.principal.push_back(nodes[next].action);
    n = next;
  }
  result.stats.depth = max_depth;
  result.stats.best_score = last_root_[pick].max;
  return finish(chosen);
}

}  // namespace hypersonic
