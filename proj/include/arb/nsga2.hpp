// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>

#include "arb/evaluator.hpp"
#include "arb/resampling.hpp"
#include "arb/variation.hpp"

namespace arb {

enum class ResamplingMode {
  one_shot,    // offspring are resampled at creation until the decision says stop
  sequential,  // every generation, each member of parents+offspring gets at most one more look
};

std::string to_string(ResamplingMode mode);
ResamplingMode resampling_mode_from_string(const std::string& name);

struct Nsga2Config {
  std::size_t popsize = 40;
  std::size_t budget = 10000;
  ResamplingMode mode = ResamplingMode::sequential;
  ResamplingStrategy strategy;
  VariationConfig variation;
  /// Bootstrap strategy only: size of the initial population (all evaluated
  /// once) and of the error base (its best members evaluated twice).
  std::size_t arb_initial_size = 120;
  std::size_t error_base_capacity = DispersionSet::default_capacity;

  void validate() const;
  [[nodiscard]] std::size_t initialization_cost() const;
  /// Generation horizon used by the time-based strategy.
  [[nodiscard]] int max_generations() const;
};

/// Called after every generation's survivor selection.
using GenerationObserver = std::function<void(int generation, const std::vector<EvaluatedPoint>& population)>;

/// Binary tournament: lower rank wins, then larger crowding, then a coin flip.
std::size_t tournament_select(const RankedPopulation& pop, Rng& rng);

/// Survivor indices: whole fronts by ascending rank, the boundary front split
/// by descending crowding distance (ties by index).
std::vector<std::size_t> environmental_select_indices(const RankedPopulation& pop, std::size_t popsize);
std::vector<EvaluatedPoint> environmental_select(std::vector<EvaluatedPoint> points, std::size_t popsize);

/// NSGA-II with a resampling decision function, run until the budget is spent.
OptimizerResult nsga2_run(const NoisyProblem& problem, const Nsga2Config& cfg, Rng& rng,
                          const GenerationObserver& observer = {});

}  // namespace arb
