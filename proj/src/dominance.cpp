// SPDX-License-Identifier: Apache-2.0
#include "arb/dominance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace arb {
namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw UsageError("objective vectors differ in length");
}

}  // namespace

bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] > b[t]) return false;
  }
  return true;
}

bool dominates(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  bool strict = false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] > b[t]) return false;
    if (a[t] < b[t]) strict = true;
  }
  return strict;
}

bool indifferent(std::span<const double> a, std::span<const double> b) {
  return !dominates(a, b) && !dominates(b, a);
}

std::vector<int> pareto_ranks(std::span<const ObjectiveVector> points) {
  const std::size_t n = points.size();
  std::vector<int> rank(n, 0);
  std::vector<std::size_t> dominated_by_count(n, 0);
  std::vector<std::vector<std::size_t>> dominated_set(n);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated_set[i].push_back(j);
        ++dominated_by_count[j];
      } else if (dominates(points[j], points[i])) {
        dominated_set[j].push_back(i);
        ++dominated_by_count[i];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominated_by_count[i] == 0) current.push_back(i);
  }
  int r = 1;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      rank[i] = r;
      for (std::size_t j : dominated_set[i]) {
        if (--dominated_by_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
    ++r;
  }
  return rank;
}

std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> points) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      dominated = j != i && dominates(points[j], points[i]);
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
  const std::size_t n = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(n, 0.0);
  if (n == 0) return distance;
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  const std::size_t objectives = front.front().size();
  std::vector<std::size_t> order(n);
  for (std::size_t t = 0; t < objectives; ++t) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a][t] < front[b][t];
    });
    const double lo = front[order.front()][t];
    const double hi = front[order.back()][t];
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    const double range = hi - lo;
    if (range <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (distance[order[k]] == inf) continue;
      distance[order[k]] += (front[order[k + 1]][t] - front[order[k - 1]][t]) / range;
    }
  }
  return distance;
}

int RankedPopulation::max_rank() const {
  return rank.empty() ? 0 : *std::max_element(rank.begin(), rank.end());
}

std::vector<std::size_t> RankedPopulation::front(int r) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rank.size(); ++i) {
    if (rank[i] == r) out.push_back(i);
  }
  return out;
}

std::vector<ObjectiveVector> means_of(std::span<const EvaluatedPoint> points) {
  std::vector<ObjectiveVector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.mean());
  return out;
}

RankedPopulation nondominated_sort(std::vector<EvaluatedPoint> points) {
  if (points.empty()) throw UsageError("nondominated_sort needs a nonempty population");
  const auto means = means_of(points);
  for (const auto& m : means) {
    if (m.empty() || m.size() != means.front().size()) {
      throw UsageError("population means must be nonempty and of equal length");
    }
  }
  RankedPopulation pop;
  pop.rank = pareto_ranks(means);
  pop.crowding.assign(points.size(), 0.0);
  const int fronts = *std::max_element(pop.rank.begin(), pop.rank.end());
  for (int r = 1; r <= fronts; ++r) {
    std::vector<std::size_t> idx;
    std::vector<ObjectiveVector> front;
    for (std::size_t i = 0; i < means.size(); ++i) {
      if (pop.rank[i] == r) {
        idx.push_back(i);
        front.push_back(means[i]);
      }
    }
    const auto cd = crowding_distance(front);
    for (std::size_t k = 0; k < idx.size(); ++k) pop.crowding[idx[k]] = cd[k];
  }
  pop.members = std::move(points);
  return pop;
}

}  // namespace arb
