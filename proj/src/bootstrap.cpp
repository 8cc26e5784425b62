// SPDX-License-Identifier: Apache-2.0
#include "arb/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arb {
namespace {

// Counts pairs with a < b (strict) or a <= b (weak) in both coordinates in
// O(B log B): sweep b by first coordinate, Fenwick tree over a's second.
std::size_t count_dominating_pairs_2d(const BootstrapMeans& a, const BootstrapMeans& b, bool strict) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::size_t> ord_a(na), ord_b(nb);
  std::iota(ord_a.begin(), ord_a.end(), std::size_t{0});
  std::iota(ord_b.begin(), ord_b.end(), std::size_t{0});
  std::sort(ord_a.begin(), ord_a.end(), [&](auto i, auto j) { return a[i][0] < a[j][0]; });
  std::sort(ord_b.begin(), ord_b.end(), [&](auto i, auto j) { return b[i][0] < b[j][0]; });

  std::vector<std::size_t> by_second(na);
  std::iota(by_second.begin(), by_second.end(), std::size_t{0});
  std::sort(by_second.begin(), by_second.end(), [&](auto i, auto j) { return a[i][1] < a[j][1]; });
  std::vector<double> second_sorted(na);
  std::vector<std::size_t> slot(na);
  for (std::size_t k = 0; k < na; ++k) {
    second_sorted[k] = a[by_second[k]][1];
    slot[by_second[k]] = k;
  }

  std::vector<std::size_t> tree(na + 1, 0);
  auto add = [&](std::size_t pos) {
    for (++pos; pos <= na; pos += pos & (~pos + 1)) ++tree[pos];
  };
  auto prefix = [&](std::size_t count) {
    std::size_t s = 0;
    for (; count > 0; count -= count & (~count + 1)) s += tree[count];
    return s;
  };

  std::size_t total = 0;
  std::size_t next_a = 0;
  for (std::size_t jb : ord_b) {
    const double b0 = b[jb][0];
    const double b1 = b[jb][1];
    while (next_a < na && (strict ? a[ord_a[next_a]][0] < b0 : a[ord_a[next_a]][0] <= b0)) {
      add(slot[ord_a[next_a]]);
      ++next_a;
    }
    const auto it = strict ? std::lower_bound(second_sorted.begin(), second_sorted.end(), b1)
                           : std::upper_bound(second_sorted.begin(), second_sorted.end(), b1);
    total += prefix(static_cast<std::size_t>(it - second_sorted.begin()));
  }
  return total;
}

std::size_t count_dominating_pairs(const BootstrapMeans& a, const BootstrapMeans& b, bool strict) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ai = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto bj = b[j];
      bool all = true;
      for (std::size_t d = 0; d < a.dim && all; ++d) {
        all = strict ? ai[d] < bj[d] : ai[d] <= bj[d];
      }
      total += all ? 1 : 0;
    }
  }
  return total;
}

}  // namespace

DispersionSet::DispersionSet(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw UsageError("dispersion set capacity must be positive");
}

void DispersionSet::push(ObjectiveVector residual) {
  if (!entries_.empty() && residual.size() != entries_.front().size()) {
    throw UsageError("residual dimension differs from the dispersion set");
  }
  entries_.push_back(std::move(residual));
  while (entries_.size() > capacity_) entries_.pop_front();
}

void DispersionSet::push_residuals(const EvaluatedPoint& point) {
  const std::size_t n = point.count();
  if (n < 2) throw UsageError("residuals need a point with at least two samples");
  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(n - 1));
  for (const auto& y : point.samples()) {
    ObjectiveVector r(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) r[t] = scale * (y[t] - point.mean()[t]);
    push(std::move(r));
  }
}

void DispersionSet::push_latest_residual(const EvaluatedPoint& point) {
  const std::size_t n = point.count();
  if (n < 2) throw UsageError("residuals need a point with at least two samples");
  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(n - 1));
  const auto& y = point.samples().back();
  ObjectiveVector r(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) r[t] = scale * (y[t] - point.mean()[t]);
  push(std::move(r));
}

std::vector<ObjectiveVector> DispersionSet::centered() const {
  std::vector<ObjectiveVector> out(entries_.begin(), entries_.end());
  if (out.empty()) return out;
  const std::size_t dim = out.front().size();
  for (std::size_t t = 0; t < dim; ++t) {
    double sum = 0.0;
    for (const auto& e : out) sum += e[t];
    const double mean = sum / static_cast<double>(out.size());
    for (auto& e : out) e[t] -= mean;
  }
  return out;
}

BootstrapMeans bootstrap_means_own(const EvaluatedPoint& point, std::size_t replicates, Rng& rng) {
  const std::size_t n = point.count();
  if (n < 2) throw UsageError("own-sample bootstrap needs at least two samples");
  const auto& mean = point.mean();
  const auto samples = point.samples();
  const std::size_t dim = mean.size();
  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(n - 1));

  BootstrapMeans out{dim, std::vector<double>(replicates * dim)};
  std::vector<double> acc(dim);
  for (std::size_t b = 0; b < replicates; ++b) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& y = samples[rng.index(n)];
      for (std::size_t t = 0; t < dim; ++t) acc[t] += scale * (y[t] - mean[t]);
    }
    for (std::size_t t = 0; t < dim; ++t) {
      out.values[b * dim + t] = mean[t] + acc[t] / static_cast<double>(n);
    }
  }
  return out;
}

BootstrapMeans bootstrap_means_mixed(const EvaluatedPoint& point, const DispersionSet& dispersion,
                                     std::size_t replicates, Rng& rng) {
  const auto centered = dispersion.centered();
  return bootstrap_means_mixed(point, centered, replicates, rng);
}

BootstrapMeans bootstrap_means_mixed(const EvaluatedPoint& point,
                                     std::span<const ObjectiveVector> centered_residuals,
                                     std::size_t replicates, Rng& rng) {
  if (centered_residuals.empty()) throw UsageError("mixed bootstrap needs a nonempty dispersion set");
  const std::size_t n = point.count();
  if (n < 1) throw UsageError("mixed bootstrap needs an evaluated point");
  const auto& mean = point.mean();
  const auto samples = point.samples();
  const std::size_t dim = mean.size();
  if (centered_residuals.front().size() != dim) {
    throw UsageError("dispersion set dimension differs from the point");
  }
  const double scale = n > 1 ? std::sqrt(static_cast<double>(n) / static_cast<double>(n - 1)) : 0.0;

  BootstrapMeans out{dim, std::vector<double>(replicates * dim)};
  std::vector<double> acc(dim);
  for (std::size_t b = 0; b < replicates; ++b) {
    const auto& pooled = centered_residuals[rng.index(centered_residuals.size())];
    for (std::size_t t = 0; t < dim; ++t) acc[t] = pooled[t];
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const auto& y = samples[rng.index(n)];
      for (std::size_t t = 0; t < dim; ++t) acc[t] += scale * (y[t] - mean[t]);
    }
    for (std::size_t t = 0; t < dim; ++t) {
      out.values[b * dim + t] = mean[t] + acc[t] / static_cast<double>(n);
    }
  }
  return out;
}

double prob_dominance(const BootstrapMeans& a, const BootstrapMeans& b, DominanceIndicator indicator) {
  if (a.dim != b.dim) throw UsageError("bootstrap means differ in objective dimension");
  if (a.size() == 0 || b.size() == 0) return 0.0;
  const bool strict = indicator == DominanceIndicator::strict;
  const std::size_t hits =
      a.dim == 2 ? count_dominating_pairs_2d(a, b, strict) : count_dominating_pairs(a, b, strict);
  return static_cast<double>(hits) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

void ArbThresholds::validate() const {
  if (!(alpha_l > 0.0 && alpha_l <= 0.5)) throw ConfigError("alpha_l must lie in (0, 0.5]");
  if (!(alpha_u > 0.5 && alpha_u <= 1.0)) throw ConfigError("alpha_u must lie in (0.5, 1]");
  if (!(alpha_l < alpha_u)) throw ConfigError("alpha_l must be below alpha_u");
}

bool arb_classify(double max_probability, const ArbThresholds& thresholds) {
  if (max_probability > thresholds.alpha_u) return false;
  if (max_probability < thresholds.alpha_l) return false;
  return true;
}

double arb_max_probability(const EvaluatedPoint& candidate,
                           std::span<const EvaluatedPoint* const> front,
                           const DispersionSet& dispersion, std::size_t replicates, Rng& rng,
                           DominanceIndicator indicator) {
  if (front.empty()) throw UsageError("probability of dominance needs a nonempty front");
  const auto centered = dispersion.centered();
  const auto own = bootstrap_means_mixed(candidate, centered, replicates, rng);
  double best = 0.0;
  for (const EvaluatedPoint* member : front) {
    if (member == &candidate) continue;
    const auto other = bootstrap_means_mixed(*member, centered, replicates, rng);
    best = std::max(best, prob_dominance(own, other, indicator));
  }
  return best;
}

bool arb_decide(const EvaluatedPoint& candidate, std::span<const EvaluatedPoint* const> front,
                const DispersionSet& dispersion, const ArbThresholds& thresholds,
                std::size_t replicates, Rng& rng, DominanceIndicator indicator) {
  if (front.empty()) throw UsageError("ARB decision needs a nonempty front");
  const auto centered = dispersion.centered();
  const auto own = bootstrap_means_mixed(candidate, centered, replicates, rng);
  double best = 0.0;
  for (const EvaluatedPoint* member : front) {
    if (member == &candidate) continue;
    const auto other = bootstrap_means_mixed(*member, centered, replicates, rng);
    best = std::max(best, prob_dominance(own, other, indicator));
    // The maximum can only grow, so the upper threshold is final once crossed.
    if (best > thresholds.alpha_u) return false;
  }
  return arb_classify(best, thresholds);
}

}  // namespace arb
