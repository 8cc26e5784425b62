// SPDX-License-Identifier: Apache-2.0
#include "arb/variation.hpp"

#include <algorithm>
#include <cmath>

namespace arb {
namespace {

constexpr double eps = 1.0e-14;

double spread_factor(double u, double beta, double eta) {
  const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
  if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
  return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

}  // namespace

void VariationConfig::validate() const {
  if (!(crossover_eta > 0.0) || !(mutation_eta > 0.0)) {
    throw ConfigError("distribution indices must be positive");
  }
  if (crossover_probability < 0.0 || crossover_probability > 1.0) {
    throw ConfigError("crossover probability must lie in [0, 1]");
  }
  if (mutation_probability > 1.0) throw ConfigError("mutation probability must be <= 1");
}

std::pair<DecisionVector, DecisionVector> sbx_crossover(const DecisionVector& parent1,
                                                        const DecisionVector& parent2,
                                                        const Bounds& bounds,
                                                        const VariationConfig& cfg, Rng& rng) {
  DecisionVector c1 = parent1;
  DecisionVector c2 = parent2;
  if (rng.uniform() > cfg.crossover_probability) return {c1, c2};
  const double eta = cfg.crossover_eta;
  for (std::size_t i = 0; i < parent1.size(); ++i) {
    if (rng.uniform() > 0.5) continue;
    if (std::abs(parent1[i] - parent2[i]) <= eps) continue;
    const double y1 = std::min(parent1[i], parent2[i]);
    const double y2 = std::max(parent1[i], parent2[i]);
    const double lo = bounds.lower[i];
    const double hi = bounds.upper[i];
    const double u = rng.uniform();

    double betaq = spread_factor(u, 1.0 + 2.0 * (y1 - lo) / (y2 - y1), eta);
    double child1 = 0.5 * ((y1 + y2) - betaq * (y2 - y1));
    betaq = spread_factor(u, 1.0 + 2.0 * (hi - y2) / (y2 - y1), eta);
    double child2 = 0.5 * ((y1 + y2) + betaq * (y2 - y1));
    child1 = std::clamp(child1, lo, hi);
    child2 = std::clamp(child2, lo, hi);
    if (rng.uniform() <= 0.5) std::swap(child1, child2);
    c1[i] = child1;
    c2[i] = child2;
  }
  return {c1, c2};
}

void polynomial_mutation(DecisionVector& x, const Bounds& bounds, const VariationConfig& cfg, Rng& rng) {
  const double pm = cfg.mutation_probability_for(x.size());
  const double eta = cfg.mutation_eta;
  const double power = 1.0 / (eta + 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rng.uniform() > pm) continue;
    const double lo = bounds.lower[i];
    const double hi = bounds.upper[i];
    if (hi <= lo) continue;
    const double y = x[i];
    const double delta1 = (y - lo) / (hi - lo);
    const double delta2 = (hi - y) / (hi - lo);
    const double u = rng.uniform();
    double deltaq;
    if (u <= 0.5) {
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
      deltaq = std::pow(val, power) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
      deltaq = 1.0 - std::pow(val, power);
    }
    x[i] = std::clamp(y + deltaq * (hi - lo), lo, hi);
  }
}

DecisionVector random_point(const Bounds& bounds, Rng& rng) {
  DecisionVector x(bounds.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
  return x;
}

}  // namespace arb
