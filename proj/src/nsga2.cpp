// SPDX-License-Identifier: Apache-2.0
#include "arb/nsga2.hpp"

#include <algorithm>
#include <numeric>

namespace arb {
namespace {

std::vector<const EvaluatedPoint*> rank_one_members(const RankedPopulation& pop) {
  std::vector<const EvaluatedPoint*> front;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (pop.rank[i] == 1) front.push_back(&pop.members[i]);
  }
  return front;
}

std::vector<EvaluatedPoint> rank_one_copy(const std::vector<EvaluatedPoint>& population) {
  std::vector<EvaluatedPoint> front;
  if (population.empty()) return front;
  const auto means = means_of(population);
  for (std::size_t i : nondominated_indices(means)) front.push_back(population[i]);
  return front;
}

class Nsga2Loop {
 public:
  Nsga2Loop(const NoisyProblem& problem, const Nsga2Config& cfg, Rng& rng)
      : cfg_(cfg),
        rng_(rng),
        evaluator_(problem, cfg.budget, rng),
        dispersion_(cfg.error_base_capacity),
        max_generations_(cfg.max_generations()) {}

  OptimizerResult run(const GenerationObserver& observer) {
    initialize();
    int generation = 0;
    while (!evaluator_.ledger().exhausted()) {
      ++generation;
      step(generation);
      if (observer) observer(generation, population_);
    }
    OptimizerResult result;
    result.front = rank_one_copy(population_);
    result.population = std::move(population_);
    result.log = evaluator_.take_log();
    result.generations = generation;
    return result;
  }

 private:
  [[nodiscard]] bool uses_bootstrap() const { return cfg_.strategy.kind == StrategyKind::arb; }

  void evaluate(EvaluatedPoint& point, int generation) {
    if (!evaluator_.evaluate(point, generation)) return;
    if (uses_bootstrap() && point.count() >= 2) dispersion_.push_latest_residual(point);
  }

  void initialize() {
    const auto& bounds = evaluator_.problem().bounds;
    if (uses_bootstrap()) {
      std::vector<EvaluatedPoint> initial;
      for (std::size_t i = 0; i < cfg_.arb_initial_size; ++i) {
        initial.push_back(evaluator_.make_point(random_point(bounds, rng_)));
      }
      for (auto& p : initial) evaluate(p, 0);
      auto ranked = nondominated_sort(std::move(initial));
      for (std::size_t i : environmental_select_indices(ranked, cfg_.error_base_capacity)) {
        evaluate(ranked.members[i], 0);
      }
      population_ = environmental_select(std::move(ranked.members), cfg_.popsize);
      return;
    }
    for (std::size_t i = 0; i < cfg_.popsize; ++i) {
      population_.push_back(evaluator_.make_point(random_point(bounds, rng_)));
    }
    for (auto& p : population_) evaluate(p, 0);
    if (cfg_.mode == ResamplingMode::one_shot) {
      auto ranked = nondominated_sort(std::move(population_));
      resample_one_shot(ranked, 0, 0);
      population_ = std::move(ranked.members);
    }
  }

  std::vector<EvaluatedPoint> make_offspring(std::size_t count) {
    const auto ranked = nondominated_sort(population_);
    const auto& bounds = evaluator_.problem().bounds;
    std::vector<EvaluatedPoint> offspring;
    while (offspring.size() < count) {
      const auto& p1 = ranked.members[tournament_select(ranked, rng_)].decision();
      const auto& p2 = ranked.members[tournament_select(ranked, rng_)].decision();
      auto [c1, c2] = sbx_crossover(p1, p2, bounds, cfg_.variation, rng_);
      polynomial_mutation(c1, bounds, cfg_.variation, rng_);
      polynomial_mutation(c2, bounds, cfg_.variation, rng_);
      offspring.push_back(evaluator_.make_point(std::move(c1)));
      if (offspring.size() < count) offspring.push_back(evaluator_.make_point(std::move(c2)));
    }
    return offspring;
  }

  DecisionContext context(const RankedPopulation& ranked, std::size_t i, int generation,
                          std::span<const EvaluatedPoint* const> front) {
    DecisionContext ctx;
    ctx.point_index = i;
    ctx.population = &ranked;
    ctx.generation = std::min(generation, max_generations_);
    ctx.max_generations = max_generations_;
    ctx.front = front;
    ctx.dispersion = &dispersion_;
    ctx.rng = &rng_;
    return ctx;
  }

  void resample_one_shot(RankedPopulation& ranked, std::size_t first, int generation) {
    const auto front = rank_one_members(ranked);
    for (std::size_t i = first; i < ranked.size(); ++i) {
      while (!evaluator_.ledger().exhausted() &&
             decide(cfg_.strategy, context(ranked, i, generation, front))) {
        evaluate(ranked.members[i], generation);
      }
    }
  }

  void resample_sequential(RankedPopulation& ranked, int generation) {
    const auto front = rank_one_members(ranked);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (evaluator_.ledger().exhausted()) break;
      if (decide(cfg_.strategy, context(ranked, i, generation, front))) {
        evaluate(ranked.members[i], generation);
      }
    }
  }

  void step(int generation) {
    const std::size_t count = std::min(cfg_.popsize, evaluator_.ledger().remaining());
    auto offspring = make_offspring(count);
    for (auto& child : offspring) evaluate(child, generation);

    const std::size_t parents = population_.size();
    std::vector<EvaluatedPoint> combined = std::move(population_);
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    auto ranked = nondominated_sort(std::move(combined));
    if (cfg_.mode == ResamplingMode::sequential) {
      resample_sequential(ranked, generation);
    } else {
      resample_one_shot(ranked, parents, generation);
    }
    population_ = environmental_select(std::move(ranked.members), cfg_.popsize);
  }

  const Nsga2Config& cfg_;
  Rng& rng_;
  Evaluator evaluator_;
  DispersionSet dispersion_;
  int max_generations_;
  std::vector<EvaluatedPoint> population_;
};

}  // namespace

std::string to_string(ResamplingMode mode) {
  return mode == ResamplingMode::one_shot ? "one_shot" : "sequential";
}

ResamplingMode resampling_mode_from_string(const std::string& name) {
  if (name == "one_shot") return ResamplingMode::one_shot;
  if (name == "sequential") return ResamplingMode::sequential;
  throw ConfigError("unknown resampling mode '" + name + "'");
}

void Nsga2Config::validate() const {
  if (popsize < 2 || popsize % 2 != 0) throw ConfigError("popsize must be even and >= 2");
  strategy.validate();
  variation.validate();
  if (strategy.kind == StrategyKind::arb) {
    if (error_base_capacity == 0) throw ConfigError("error base capacity must be positive");
    if (arb_initial_size < error_base_capacity || arb_initial_size < popsize) {
      throw ConfigError("initial population must be at least the error base and the popsize");
    }
  }
  if (budget < initialization_cost()) {
    throw ConfigError("budget " + std::to_string(budget) + " is smaller than the initialization cost " +
                      std::to_string(initialization_cost()));
  }
}

std::size_t Nsga2Config::initialization_cost() const {
  if (strategy.kind == StrategyKind::arb) return arb_initial_size + error_base_capacity;
  return popsize;
}

int Nsga2Config::max_generations() const {
  const std::size_t init = initialization_cost();
  const std::size_t rest = budget > init ? budget - init : 0;
  return std::max<int>(1, static_cast<int>(rest / std::max<std::size_t>(popsize, 1)));
}

std::size_t tournament_select(const RankedPopulation& pop, Rng& rng) {
  const std::size_t n = pop.size();
  if (n < 2) throw UsageError("tournament selection needs at least two members");
  const std::size_t a = rng.index(n);
  std::size_t b = rng.index(n - 1);
  if (b >= a) ++b;
  if (pop.rank[a] != pop.rank[b]) return pop.rank[a] < pop.rank[b] ? a : b;
  if (pop.crowding[a] != pop.crowding[b]) return pop.crowding[a] > pop.crowding[b] ? a : b;
  return rng.coin() ? a : b;
}

std::vector<std::size_t> environmental_select_indices(const RankedPopulation& pop, std::size_t popsize) {
  if (pop.size() < popsize) throw UsageError("environmental selection needs at least popsize members");
  std::vector<std::size_t> chosen;
  chosen.reserve(popsize);
  for (int r = 1; chosen.size() < popsize; ++r) {
    auto front = pop.front(r);
    if (chosen.size() + front.size() > popsize) {
      std::stable_sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
        return pop.crowding[a] > pop.crowding[b];
      });
      front.resize(popsize - chosen.size());
    }
    chosen.insert(chosen.end(), front.begin(), front.end());
  }
  return chosen;
}

std::vector<EvaluatedPoint> environmental_select(std::vector<EvaluatedPoint> points, std::size_t popsize) {
  auto ranked = nondominated_sort(std::move(points));
  std::vector<EvaluatedPoint> survivors;
  survivors.reserve(popsize);
  for (std::size_t i : environmental_select_indices(ranked, popsize)) {
    survivors.push_back(std::move(ranked.members[i]));
  }
  return survivors;
}

OptimizerResult nsga2_run(const NoisyProblem& problem, const Nsga2Config& cfg, Rng& rng,
                          const GenerationObserver& observer) {
  cfg.validate();
  Nsga2Loop loop(problem, cfg, rng);
  return loop.run(observer);
}

}  // namespace arb
