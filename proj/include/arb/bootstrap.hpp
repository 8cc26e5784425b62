// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>
#include <span>
#include <vector>

#include "arb/rng.hpp"
#include "arb/types.hpp"

namespace arb {

/// Pool of scaled residuals sqrt(N/(N-1)) * (y^(n) - ybar) collected from
/// re-evaluated points. Holds the most recent `capacity` entries.
class DispersionSet {
 public:
  static constexpr std::size_t default_capacity = 100;

  explicit DispersionSet(std::size_t capacity = default_capacity);

  /// Appends one already-scaled residual, evicting the oldest beyond capacity.
  void push(ObjectiveVector residual);
  /// Appends all N scaled residuals of a point. Requires N >= 2.
  void push_residuals(const EvaluatedPoint& point);
  /// Appends the scaled residual of the point's newest sample only. Requires N >= 2.
  void push_latest_residual(const EvaluatedPoint& point);

  /// Entries (oldest first) shifted so every component has mean exactly zero.
  [[nodiscard]] std::vector<ObjectiveVector> centered() const;

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] const std::deque<ObjectiveVector>& raw() const { return entries_; }

 private:
  std::deque<ObjectiveVector> entries_;
  std::size_t capacity_;
};

/// B bootstrap replicates of a point's sample mean, stored row-major.
struct BootstrapMeans {
  std::size_t dim = 0;
  std::vector<double> values;

  [[nodiscard]] std::size_t size() const { return dim == 0 ? 0 : values.size() / dim; }
  [[nodiscard]] std::span<const double> operator[](std::size_t b) const {
    return {values.data() + b * dim, dim};
  }
};

/// Default number of bootstrap replicates.
inline constexpr std::size_t default_bootstrap_replicates = 100;

/// Variance-corrected bootstrap of the mean from the point's own samples:
/// ybar + (1/N) sum_n sqrt(N/(N-1)) (Y~^(n) - ybar). Requires N >= 2.
BootstrapMeans bootstrap_means_own(const EvaluatedPoint& point, std::size_t replicates, Rng& rng);

/// Mixed bootstrap: one summand drawn from the dispersion set, N-1 from the
/// point's own scaled residuals. For N = 1 each draw is ybar + E~.
BootstrapMeans bootstrap_means_mixed(const EvaluatedPoint& point, const DispersionSet& dispersion,
                                     std::size_t replicates, Rng& rng);
/// Same, with an already re-centered residual pool.
BootstrapMeans bootstrap_means_mixed(const EvaluatedPoint& point,
                                     std::span<const ObjectiveVector> centered_residuals,
                                     std::size_t replicates, Rng& rng);

/// Coordinate test counted by the probability-of-dominance estimator.
enum class DominanceIndicator {
  strict,  // a_d < b_d for every d
  weak,    // a_d <= b_d for every d
};

/// Fraction of cross pairs (a, b) with a dominating b under `indicator`.
double prob_dominance(const BootstrapMeans& a, const BootstrapMeans& b,
                      DominanceIndicator indicator = DominanceIndicator::strict);

/// Lower bound alpha_l in (0, 0.5], upper bound alpha_u in (0.5, 1].
struct ArbThresholds {
  double alpha_l = 0.2;
  double alpha_u = 0.9;

  void validate() const;
};

/// Threshold rule: FALSE above alpha_u (confident), FALSE below alpha_l
/// (hopeless), TRUE inside the band.
bool arb_classify(double max_probability, const ArbThresholds& thresholds);

/// Largest estimated probability that the candidate's mean dominates a front
/// member's mean. The candidate itself (by address) is skipped; returns 0 if
/// nothing is left to compare against.
double arb_max_probability(const EvaluatedPoint& candidate,
                           std::span<const EvaluatedPoint* const> front,
                           const DispersionSet& dispersion, std::size_t replicates, Rng& rng,
                           DominanceIndicator indicator = DominanceIndicator::strict);

/// Resampling decision of the bootstrap dominance strategy. Every call draws
/// fresh bootstrap replicates for the candidate and each front member.
bool arb_decide(const EvaluatedPoint& candidate, std::span<const EvaluatedPoint* const> front,
                const DispersionSet& dispersion, const ArbThresholds& thresholds,
                std::size_t replicates, Rng& rng,
                DominanceIndicator indicator = DominanceIndicator::strict);

}  // namespace arb
