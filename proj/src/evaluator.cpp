// SPDX-License-Identifier: Apache-2.0
#include "arb/evaluator.hpp"

namespace arb {

bool Evaluator::evaluate(EvaluatedPoint& point, int generation) {
  if (!ledger_.charge()) return false;
  auto y = evaluate_noisy(problem_, point.decision(), rng_);
  log_.push_back({point.id(), generation, y});
  point.add_sample(std::move(y));
  return true;
}

}  // namespace arb
