// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "arb/rng.hpp"
#include "arb/types.hpp"

namespace arb {

/// Simulated binary crossover and polynomial mutation settings, shared by all
/// optimizers. A negative mutation probability means 1/D.
struct VariationConfig {
  double crossover_eta = 15.0;
  double crossover_probability = 0.9;
  double mutation_eta = 20.0;
  double mutation_probability = -1.0;

  void validate() const;
  [[nodiscard]] double mutation_probability_for(std::size_t dim) const {
    return mutation_probability < 0.0 ? 1.0 / static_cast<double>(dim) : mutation_probability;
  }
};

/// Bounded simulated binary crossover (Deb & Agrawal); children stay in bounds.
std::pair<DecisionVector, DecisionVector> sbx_crossover(const DecisionVector& parent1,
                                                        const DecisionVector& parent2,
                                                        const Bounds& bounds,
                                                        const VariationConfig& cfg, Rng& rng);

/// Bounded polynomial mutation, in place.
void polynomial_mutation(DecisionVector& x, const Bounds& bounds, const VariationConfig& cfg, Rng& rng);

/// Uniform random point inside the bounds.
DecisionVector random_point(const Bounds& bounds, Rng& rng);

}  // namespace arb
