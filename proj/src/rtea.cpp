// SPDX-License-Identifier: Apache-2.0
#include "arb/rtea.hpp"

#include <algorithm>
#include <cmath>

#include "arb/dominance.hpp"

namespace arb {

void RteaConfig::validate() const {
  if (initial < 1) throw ConfigError("RTEA needs an initial sample of at least one point");
  if (initial > budget) throw ConfigError("RTEA initial sample exceeds the budget");
  if (!(refinement >= 0.0 && refinement < 1.0)) throw ConfigError("RTEA refinement fraction must lie in [0, 1)");
  if (budget - refinement_evaluations() < initial) {
    throw ConfigError("RTEA initial sample does not fit before the refinement phase");
  }
}

std::size_t RteaConfig::refinement_evaluations() const {
  return static_cast<std::size_t>(std::floor(refinement * static_cast<double>(budget) + 1e-9));
}

std::vector<std::size_t> FrontArchive::front() const {
  std::vector<std::size_t> out;
  for (std::size_t h = 0; h < points_.size(); ++h) {
    if (in_front_[h]) out.push_back(h);
  }
  return out;
}

bool FrontArchive::dominated_by_front(const ObjectiveVector& y, std::size_t skip) const {
  for (std::size_t h = 0; h < points_.size(); ++h) {
    if (h != skip && in_front_[h] && dominates(points_[h].mean(), y)) return true;
  }
  return false;
}

void FrontArchive::demote_dominated_by(std::size_t handle) {
  const auto& y = points_[handle].mean();
  for (std::size_t h = 0; h < points_.size(); ++h) {
    if (h != handle && in_front_[h] && dominates(y, points_[h].mean())) in_front_[h] = 0;
  }
}

std::size_t FrontArchive::add(EvaluatedPoint point) {
  if (point.count() == 0) throw UsageError("only evaluated points can enter the archive");
  const std::size_t handle = points_.size();
  points_.push_back(std::move(point));
  in_front_.push_back(0);
  if (!dominated_by_front(points_[handle].mean(), handle)) {
    demote_dominated_by(handle);
    in_front_[handle] = 1;
  }
  return handle;
}

void FrontArchive::refresh(std::size_t handle, const ObjectiveVector& old_mean) {
  if (points_[handle].mean() == old_mean) return;
  const bool was_front = in_front_[handle] != 0;
  in_front_[handle] = 0;
  const auto& y = points_[handle].mean();

  // Archive points that only the old position of `handle` may have dominated.
  std::vector<std::size_t> promoted;
  if (was_front) {
    std::vector<std::size_t> candidates;
    for (std::size_t h = 0; h < points_.size(); ++h) {
      if (h != handle && !in_front_[h] && dominates(old_mean, points_[h].mean())) candidates.push_back(h);
    }
    for (std::size_t c : candidates) {
      const auto& yc = points_[c].mean();
      bool dominated = dominated_by_front(yc, handle) || dominates(y, yc);
      for (std::size_t other : candidates) {
        if (dominated) break;
        dominated = other != c && dominates(points_[other].mean(), yc);
      }
      if (!dominated) promoted.push_back(c);
    }
    for (std::size_t c : promoted) in_front_[c] = 1;
  }

  if (!dominated_by_front(y, handle)) {
    demote_dominated_by(handle);
    in_front_[handle] = 1;
  }
}

namespace {

std::size_t least_evaluated(const FrontArchive& archive, Rng& rng) {
  const auto front = archive.front();
  std::size_t fewest = archive.point(front.front()).count();
  for (std::size_t h : front) fewest = std::min(fewest, archive.point(h).count());
  std::vector<std::size_t> ties;
  for (std::size_t h : front) {
    if (archive.point(h).count() == fewest) ties.push_back(h);
  }
  return ties[rng.index(ties.size())];
}

bool resample(FrontArchive& archive, Evaluator& evaluator, int iteration, Rng& rng) {
  const std::size_t h = least_evaluated(archive, rng);
  const ObjectiveVector old_mean = archive.point(h).mean();
  if (!evaluator.evaluate(archive.point(h), iteration)) return false;
  archive.refresh(h, old_mean);
  return true;
}

}  // namespace

OptimizerResult rtea_run(const NoisyProblem& problem, const RteaConfig& cfg,
                         const VariationConfig& variation, Rng& rng) {
  cfg.validate();
  variation.validate();
  Evaluator evaluator(problem, cfg.budget, rng);
  FrontArchive archive;

  for (std::size_t i = 0; i < cfg.initial; ++i) {
    auto p = evaluator.make_point(random_point(problem.bounds, rng));
    evaluator.evaluate(p, 0);
    archive.add(std::move(p));
  }

  const std::size_t optimization_end = cfg.budget - cfg.refinement_evaluations();
  int iteration = 0;
  while (evaluator.ledger().spent() < optimization_end) {
    ++iteration;
    const auto front = archive.front();
    const auto& p1 = archive.point(front[rng.index(front.size())]).decision();
    const auto& p2 = archive.point(front[rng.index(front.size())]).decision();
    auto children = sbx_crossover(p1, p2, problem.bounds, variation, rng);
    polynomial_mutation(children.first, problem.bounds, variation, rng);
    auto child = evaluator.make_point(std::move(children.first));
    evaluator.evaluate(child, iteration);
    archive.add(std::move(child));

    for (std::size_t r = 0; r < cfg.resamples; ++r) {
      if (evaluator.ledger().spent() >= optimization_end) break;
      resample(archive, evaluator, iteration, rng);
    }
  }

  ++iteration;
  while (!evaluator.ledger().exhausted()) {
    if (!resample(archive, evaluator, iteration, rng)) break;
  }

  OptimizerResult result;
  for (std::size_t h : archive.front()) result.front.push_back(archive.point(h));
  result.population = archive.points();
  result.log = evaluator.take_log();
  result.generations = iteration;
  return result;
}

}  // namespace arb
