// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>

#include "arb/bootstrap.hpp"
#include "arb/dominance.hpp"
#include "arb/rng.hpp"

namespace arb {

enum class StrategyKind { static_n, time, rank, strength, sederror, arb };
enum class Aggregation { max, mean };

std::string to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(const std::string& name);
std::string to_string(Aggregation agg);
Aggregation aggregation_from_string(const std::string& name);

/// A resampling decision function and its parameters.
struct ResamplingStrategy {
  StrategyKind kind = StrategyKind::static_n;
  /// Evaluation cap N: the fixed count for static, N_max for time/rank/strength.
  /// For sederror an optional cap (0 = none).
  int max_evaluations = 1;
  // sederror
  double se_threshold = 0.05;
  Aggregation aggregation = Aggregation::max;
  /// Use the per-objective standard deviation without the 1/sqrt(N) factor.
  bool se_verbatim = false;
  // arb
  ArbThresholds thresholds;
  std::size_t bootstrap_replicates = default_bootstrap_replicates;
  DominanceIndicator indicator = DominanceIndicator::strict;

  void validate() const;
};

/// Everything a decision function may look at. Pointers are non-owning.
struct DecisionContext {
  std::size_t point_index = 0;
  const RankedPopulation* population = nullptr;
  int generation = 0;       // n_gen
  int max_generations = 1;  // N_gen
  // Used by the bootstrap strategy only.
  std::span<const EvaluatedPoint* const> front;
  const DispersionSet* dispersion = nullptr;
  Rng* rng = nullptr;
};

/// TRUE if the point should be evaluated once more.
bool decide(const ResamplingStrategy& strategy, const DecisionContext& ctx);

/// Fraction of the population (self excluded) weakly dominated by member i.
double strength(std::size_t i, const RankedPopulation& pop);
double nu_strength(std::size_t i, const RankedPopulation& pop);
double nu_rank(std::size_t i, const RankedPopulation& pop);
double nu_time(int generation, int max_generations);

/// Aggregated standard error of the point's mean estimate.
double standard_error(const EvaluatedPoint& point, Aggregation aggregation, bool verbatim = false);
bool sederror_decide(const EvaluatedPoint& point, double se_threshold, Aggregation aggregation,
                     bool verbatim = false);

}  // namespace arb
