// SPDX-License-Identifier: Apache-2.0
#include "arb/resampling.hpp"

#include <algorithm>
#include <cmath>

namespace arb {
namespace {

constexpr double strength_tolerance = 1e-12;

bool below_cap(std::size_t evaluations, double nu, int cap) {
  return static_cast<double>(evaluations) < nu * static_cast<double>(cap);
}

}  // namespace

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::static_n: return "static";
    case StrategyKind::time: return "time";
    case StrategyKind::rank: return "rank";
    case StrategyKind::strength: return "strength";
    case StrategyKind::sederror: return "sederror";
    case StrategyKind::arb: return "arb";
  }
  return "static";
}

StrategyKind strategy_kind_from_string(const std::string& name) {
  if (name == "static") return StrategyKind::static_n;
  if (name == "time") return StrategyKind::time;
  if (name == "rank") return StrategyKind::rank;
  if (name == "strength") return StrategyKind::strength;
  if (name == "sederror") return StrategyKind::sederror;
  if (name == "arb") return StrategyKind::arb;
  throw UsageError("unknown resampling strategy '" + name + "'");
}

std::string to_string(Aggregation agg) { return agg == Aggregation::max ? "max" : "mean"; }

Aggregation aggregation_from_string(const std::string& name) {
  if (name == "max") return Aggregation::max;
  if (name == "mean") return Aggregation::mean;
  throw UsageError("unknown aggregation '" + name + "'");
}

void ResamplingStrategy::validate() const {
  switch (kind) {
    case StrategyKind::static_n:
    case StrategyKind::time:
    case StrategyKind::rank:
    case StrategyKind::strength:
      if (max_evaluations < 1) throw ConfigError("evaluation cap must be >= 1");
      break;
    case StrategyKind::sederror:
      if (!(se_threshold > 0.0)) throw ConfigError("se_threshold must be positive");
      if (max_evaluations < 0) throw ConfigError("sederror cap must be >= 0");
      break;
    case StrategyKind::arb:
      thresholds.validate();
      if (bootstrap_replicates == 0) throw ConfigError("bootstrap replicates must be positive");
      break;
  }
}

double strength(std::size_t i, const RankedPopulation& pop) {
  const std::size_t n = pop.size();
  std::size_t count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i && weakly_dominates(pop.members[i].mean(), pop.members[j].mean())) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(n);
}

double nu_strength(std::size_t i, const RankedPopulation& pop) {
  double max_strength = 0.0;
  for (std::size_t j = 0; j < pop.size(); ++j) max_strength = std::max(max_strength, strength(j, pop));
  if (max_strength == 0.0) return 1.0;
  const double ratio = strength(i, pop) / max_strength;
  const double unit = 1.0 / static_cast<double>(pop.size());
  // Second case of the piecewise rule; numerically the same ratio as the first.
  if (std::abs(max_strength - unit) <= strength_tolerance) return std::max(0.0, ratio);
  return ratio;
}

double nu_rank(std::size_t i, const RankedPopulation& pop) {
  const int max_rank = pop.max_rank();
  if (max_rank <= 1) return 1.0;
  return 1.0 - static_cast<double>(pop.rank[i] - 1) / static_cast<double>(max_rank - 1);
}

double nu_time(int generation, int max_generations) {
  if (max_generations < 1) throw UsageError("max_generations must be >= 1");
  return std::clamp(static_cast<double>(generation) / max_generations, 0.0, 1.0);
}

double standard_error(const EvaluatedPoint& point, Aggregation aggregation, bool verbatim) {
  const std::size_t n = point.count();
  if (n < 2) throw UsageError("standard error needs at least two samples");
  const auto& mean = point.mean();
  double agg = 0.0;
  for (std::size_t t = 0; t < mean.size(); ++t) {
    double ss = 0.0;
    for (const auto& y : point.samples()) ss += (y[t] - mean[t]) * (y[t] - mean[t]);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    agg = aggregation == Aggregation::max ? std::max(agg, sd) : agg + sd / static_cast<double>(mean.size());
  }
  return verbatim ? agg : agg / std::sqrt(static_cast<double>(n));
}

bool sederror_decide(const EvaluatedPoint& point, double se_threshold, Aggregation aggregation,
                     bool verbatim) {
  if (point.count() < 2) return true;
  return standard_error(point, aggregation, verbatim) > se_threshold;
}

bool decide(const ResamplingStrategy& strategy, const DecisionContext& ctx) {
  if (ctx.population == nullptr) throw UsageError("decision context has no population");
  const auto& pop = *ctx.population;
  const auto& point = pop.members.at(ctx.point_index);
  const std::size_t n = point.count();
  switch (strategy.kind) {
    case StrategyKind::static_n:
      return below_cap(n, 1.0, strategy.max_evaluations);
    case StrategyKind::time:
      return below_cap(n, nu_time(ctx.generation, ctx.max_generations), strategy.max_evaluations);
    case StrategyKind::rank:
      return below_cap(n, nu_rank(ctx.point_index, pop), strategy.max_evaluations);
    case StrategyKind::strength:
      return below_cap(n, nu_strength(ctx.point_index, pop), strategy.max_evaluations);
    case StrategyKind::sederror:
      if (strategy.max_evaluations > 0 && n >= static_cast<std::size_t>(strategy.max_evaluations)) {
        return false;
      }
      return sederror_decide(point, strategy.se_threshold, strategy.aggregation, strategy.se_verbatim);
    case StrategyKind::arb:
      if (ctx.dispersion == nullptr || ctx.rng == nullptr) {
        throw UsageError("bootstrap decision needs a dispersion set and a random stream");
      }
      return arb_decide(point, ctx.front, *ctx.dispersion, strategy.thresholds,
                        strategy.bootstrap_replicates, *ctx.rng, strategy.indicator);
  }
  throw UsageError("unknown resampling strategy");
}

}  // namespace arb
