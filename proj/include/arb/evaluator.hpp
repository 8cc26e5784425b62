// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "arb/problems.hpp"

namespace arb {

/// Evaluations spent against a hard cap.
class BudgetLedger {
 public:
  explicit BudgetLedger(std::size_t cap) : cap_(cap) {}

  [[nodiscard]] std::size_t spent() const { return spent_; }
  [[nodiscard]] std::size_t cap() const { return cap_; }
  [[nodiscard]] std::size_t remaining() const { return cap_ - spent_; }
  [[nodiscard]] bool exhausted() const { return spent_ >= cap_; }

  /// Books one evaluation; false (and nothing booked) once the cap is reached.
  bool charge() {
    if (spent_ >= cap_) return false;
    ++spent_;
    return true;
  }

 private:
  std::size_t cap_;
  std::size_t spent_ = 0;
};

/// One line of the evaluation log.
struct EvaluationRecord {
  std::uint64_t point_id = 0;
  int generation = 0;
  ObjectiveVector sample;
};

/// Owns the ledger and the evaluation log of one optimizer run.
class Evaluator {
 public:
  Evaluator(const NoisyProblem& problem, std::size_t budget, Rng& rng)
      : problem_(problem), ledger_(budget), rng_(rng) {}

  /// New unevaluated point with a fresh id.
  EvaluatedPoint make_point(DecisionVector x) { return EvaluatedPoint(std::move(x), next_id_++); }

  /// Adds one noisy sample to the point. Returns false if the budget is spent.
  bool evaluate(EvaluatedPoint& point, int generation);

  [[nodiscard]] const BudgetLedger& ledger() const { return ledger_; }
  [[nodiscard]] const NoisyProblem& problem() const { return problem_; }
  [[nodiscard]] std::vector<EvaluationRecord> take_log() { return std::move(log_); }
  [[nodiscard]] const std::vector<EvaluationRecord>& log() const { return log_; }

 private:
  const NoisyProblem& problem_;
  BudgetLedger ledger_;
  Rng& rng_;
  std::vector<EvaluationRecord> log_;
  std::uint64_t next_id_ = 0;
};

/// Output shared by all optimizers.
struct OptimizerResult {
  std::vector<EvaluatedPoint> population;  // final population (NSGA-II) or all points (RTEA)
  std::vector<EvaluatedPoint> front;       // returned non-dominated set under means
  std::vector<EvaluationRecord> log;
  int generations = 0;
};

}  // namespace arb
