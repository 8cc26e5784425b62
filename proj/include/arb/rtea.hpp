// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arb/evaluator.hpp"
#include "arb/variation.hpp"

namespace arb {

struct RteaConfig {
  std::size_t budget = 10000;  // m
  std::size_t resamples = 1;   // k, per iteration
  std::size_t initial = 40;    // p
  double refinement = 0.1;     // z, share of the budget spent on refinement

  void validate() const;
  [[nodiscard]] std::size_t refinement_evaluations() const;
};

/// Every point seen so far, split into the non-dominated front (by means) and
/// an archive of dominated points. Kept exact under mean updates.
class FrontArchive {
 public:
  /// Inserts an evaluated point and returns its handle.
  std::size_t add(EvaluatedPoint point);
  /// Re-establishes the split after point `handle` received new samples.
  void refresh(std::size_t handle, const ObjectiveVector& old_mean);

  [[nodiscard]] EvaluatedPoint& point(std::size_t handle) { return points_[handle]; }
  [[nodiscard]] const EvaluatedPoint& point(std::size_t handle) const { return points_[handle]; }
  [[nodiscard]] const std::vector<EvaluatedPoint>& points() const { return points_; }
  /// Front handles in ascending order.
  [[nodiscard]] std::vector<std::size_t> front() const;
  [[nodiscard]] bool in_front(std::size_t handle) const { return in_front_[handle] != 0; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }

 private:
  bool dominated_by_front(const ObjectiveVector& y, std::size_t skip) const;
  void demote_dominated_by(std::size_t handle);

  std::vector<EvaluatedPoint> points_;
  std::vector<char> in_front_;
};

/// Rolling Tide EA: initialization, alternating offspring creation and front
/// re-evaluation, then refinement of the front with the last z*m evaluations.
OptimizerResult rtea_run(const NoisyProblem& problem, const RteaConfig& cfg,
                         const VariationConfig& variation, Rng& rng);

}  // namespace arb
