// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "arb/types.hpp"

namespace arb {

/// a_t <= b_t for every objective.
bool weakly_dominates(std::span<const double> a, std::span<const double> b);
/// a weakly dominates b and is strictly better in at least one objective.
bool dominates(std::span<const double> a, std::span<const double> b);
/// Neither point dominates the other.
bool indifferent(std::span<const double> a, std::span<const double> b);

/// Pareto rank (1 = non-dominated) of every point, by iterative front peeling.
std::vector<int> pareto_ranks(std::span<const ObjectiveVector> points);

/// Indices of the non-dominated points, in input order.
std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> points);

/// NSGA-II cuboid crowding distance of each member of one front.
/// Boundary points get +infinity; objectives with zero range contribute 0.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Population sorted into Pareto fronts by sample means.
struct RankedPopulation {
  std::vector<EvaluatedPoint> members;
  std::vector<int> rank;         // 1-based front index per member
  std::vector<double> crowding;  // crowding distance within the member's front

  [[nodiscard]] std::size_t size() const { return members.size(); }
  [[nodiscard]] int max_rank() const;
  /// Member indices of front r, in input order.
  [[nodiscard]] std::vector<std::size_t> front(int r) const;
};

/// Ranks and crowding distances computed on the members' means. Members keep
/// their input order. Throws UsageError on empty input.
RankedPopulation nondominated_sort(std::vector<EvaluatedPoint> points);

/// Means of a list of evaluated points.
std::vector<ObjectiveVector> means_of(std::span<const EvaluatedPoint> points);

}  // namespace arb
