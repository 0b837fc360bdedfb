#include "hypersonic/rhea_agent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypersonic {
namespace {

bool hit_next_turn(const BitState& s, int me) { return propagate_blasts(s).test(s.players[me].cell); }

struct Individual {
  Genome genome;
  IndividualResult result;
};

}  // namespace

Genome random_genome(Rng& rng) {
  Genome g;
  for (auto& gene : g) gene = static_cast<std::uint8_t>(uniform_below(rng, kActionCount));
  return g;
}

Genome crossover_one_point(const Genome& a, const Genome& b, int cut) {
  Genome child = b;
  std::copy(a.begin(), a.begin() + std::clamp(cut, 0, kGenomeLength), child.begin());
  return child;
}

Genome mutate(Genome g, double p, Rng& rng) {
  for (auto& gene : g)
    if (uniform01(rng) < p) gene = static_cast<std::uint8_t>(uniform_below(rng, kActionCount));
  return g;
}

IndividualResult evaluate_individual(const BitState& b, int me, const Genome& genome, const PredictedPlan& plans,
                                     const RheaParams& params) {
  IndividualResult r;
  const EvalWeights& w = params.weights;
  BitState s = b;
  EvalContext ctx;
  bool dead = !s.players[me].alive;
  for (int i = 0; i < kGenomeLength && !dead; ++i) {
    if (!r.first_unsurvivable && !is_survivable(s, me)) r.first_unsurvivable = i;
    BitState resolved = s;
    TurnEvents explosion;
    explode(resolved, explosion);
    if (!resolved.players[me].alive) {
      s = resolved;
      dead = true;
      break;
    }
    Action a = Action::from_code(genome[i]);
    if (!legal_after_explosion(resolved, me).contains(a)) a = Action::stay();
    BitState next = resolved;
    TurnEvents events = explosion;
    apply_actions(next, plans.joint(i, me, a), events);
    if (a != Action::stay() && hit_next_turn(next, me)) {
      BitState alt = resolved;
      TurnEvents alt_events = explosion;
      apply_actions(alt, plans.joint(i, me, Action::stay()), alt_events);
      if (!hit_next_turn(alt, me)) {
        a = Action::stay();
        next = std::move(alt);
        events = alt_events;
      }
    }
    r.effective.push_back(a);
    ctx.record(events, me, i + 1, w.gamma);
    s = std::move(next);
  }
  if (!dead && !r.first_unsurvivable && !is_survivable(s, me)) r.first_unsurvivable = kGenomeLength;
  r.evaluation = evaluate(s, me, ctx, w);
  r.fitness = r.evaluation;
  if (r.first_unsurvivable) r.fitness -= params.punishment * std::pow(params.punishment_decay, *r.first_unsurvivable);
  return r;
}

SearchResult RheaAgent::search(const BitState& b, int me, const Budget& budget, const PredictedPlan& plans) {
  SearchClock clock(budget);
  SearchResult result;
  best_history_.clear();
  const RheaParams& p = params_;

  const auto finish = [&](Action a) {
    result.action = a;
    if (result.principal.empty()) result.principal = {a};
    result.stats.iterations = clock.iterations();
    result.stats.elapsed_ms = clock.elapsed_ms();
    return result;
  };
  if (me < 0 || me >= b.num_players || !b.players[me].alive) return finish(Action::stay());

  const auto by_fitness = [](const Individual& x, const Individual& y) { return x.result.fitness > y.result.fitness; };

  std::vector<Individual> population;
  population.reserve(p.population_size + p.offspring_size);
  while (static_cast<int>(population.size()) < p.population_size && (population.empty() || !clock.done())) {
    Individual ind{random_genome(rng_), {}};
    ind.result = evaluate_individual(b, me, ind.genome, plans, p);
    population.push_back(std::move(ind));
    clock.tick();
  }
  std::stable_sort(population.begin(), population.end(), by_fitness);
  best_history_.push_back(population.front().result.fitness);

  std::vector<double> cumulative;
  while (!clock.done()) {
    const int parents = static_cast<int>(population.size());
    cumulative.resize(parents);
    const double lowest = population.back().result.fitness;
    double total = 0.0;
    for (int i = 0; i < parents; ++i) {
      total += population[i].result.fitness - lowest + 1.0;
      cumulative[i] = total;
    }
    const auto roulette = [&]() -> const Genome& {
      const double x = uniform01(rng_) * total;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
      return population[std::min<int>(static_cast<int>(it - cumulative.begin()), parents - 1)].genome;
    };
    for (int k = 0; k < p.offspring_size && !clock.done(); ++k) {
      const Genome& a = roulette();
      const Genome& c = roulette();
      Individual child{mutate(crossover_one_point(a, c, 1 + uniform_below(rng_, kGenomeLength - 1)), p.mutation_probability, rng_), {}};
      child.result = evaluate_individual(b, me, child.genome, plans, p);
      population.push_back(std::move(child));
      clock.tick();
    }
    std::stable_sort(population.begin(), population.end(), by_fitness);
    if (static_cast<int>(population.size()) > p.population_size) population.resize(p.population_size);
    best_history_.push_back(population.front().result.fitness);
  }

  const IndividualResult& best = population.front().result;
  result.principal = best.effective;
  result.stats.best_score = best.fitness;
  result.stats.depth = static_cast<int>(best.effective.size());
  return finish(best.effective.empty() ? Action::stay() : best.effective.front());
}

}  // namespace hypersonic
