// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "arb/problems.hpp"

namespace arb {

struct MetricParams {
  double nadir_delta = 0.1;  // nadir = (1 + delta) * per-objective maximum of the true front
  std::size_t pf_sample_size = 1000;
  double igd_power = 2.0;

  void validate() const;
};

struct MetricReport {
  double hv_raw = 0.0;
  double hv_normalized = 0.0;
  double igd_p = 0.0;
  double p = 2.0;
  ObjectiveVector nadir;
  std::size_t pf_sample_size = 0;
  std::size_t filtered_size = 0;  // size of the true-mean non-dominated subset
};

/// Returned points whose TRUE means are not dominated by another returned
/// point's true mean (input order kept).
std::vector<EvaluatedPoint> true_nondominated_filter(std::span<const EvaluatedPoint> returned,
                                                     const NoisyProblem& problem);

/// Exact bi-objective dominated hypervolume with respect to `nadir`. Points
/// not strictly better than the nadir in every objective contribute nothing.
double hypervolume(std::span<const ObjectiveVector> set, std::span<const double> nadir);

/// (1 + delta) times the per-objective maximum of a true-front sample.
ObjectiveVector problem_nadir(const NoisyProblem& problem, double delta, std::size_t pf_sample_size);

/// HV of the true means of the filtered set divided by the HV of a true-front sample.
double hv_normalized(std::span<const EvaluatedPoint> returned, const NoisyProblem& problem,
                     std::span<const double> nadir, std::size_t pf_sample_size);

/// Power-mean inverted generational distance from pf to set.
double igd_p(std::span<const ObjectiveVector> set, std::span<const ObjectiveVector> pf, double p);

/// All metrics of one returned set, computed on true means after filtering.
MetricReport evaluate_metrics(std::span<const EvaluatedPoint> returned, const NoisyProblem& problem,
                              const MetricParams& params);

}  // namespace arb
