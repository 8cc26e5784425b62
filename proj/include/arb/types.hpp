// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace arb {

/// Objective values of one evaluation (minimization).
using ObjectiveVector = std::vector<double>;
/// Point in the decision space.
using DecisionVector = std::vector<double>;

/// Precondition violated by the caller (bad arguments, wrong dimension, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Experiment or optimizer configuration that cannot be run.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decision vector together with every noisy observation taken at it.
///
/// The mean is kept as running sum / count, so it always equals the
/// component-wise average of the stored samples. A freshly constructed
/// point has no samples and an empty mean.
class EvaluatedPoint {
 public:
  EvaluatedPoint() = default;
  explicit EvaluatedPoint(DecisionVector decision, std::uint64_t id = 0)
      : decision_(std::move(decision)), id_(id) {}

  void add_sample(ObjectiveVector y) {
    if (samples_.empty()) {
      sum_.assign(y.size(), 0.0);
    } else if (y.size() != sum_.size()) {
      throw UsageError("objective sample has inconsistent dimension");
    }
    for (std::size_t t = 0; t < y.size(); ++t) sum_[t] += y[t];
    samples_.push_back(std::move(y));
    mean_.resize(sum_.size());
    const double n = static_cast<double>(samples_.size());
    for (std::size_t t = 0; t < sum_.size(); ++t) mean_[t] = sum_[t] / n;
  }

  [[nodiscard]] const DecisionVector& decision() const { return decision_; }
  [[nodiscard]] std::span<const ObjectiveVector> samples() const { return samples_; }
  [[nodiscard]] const ObjectiveVector& mean() const { return mean_; }
  [[nodiscard]] std::size_t count() const { return samples_.size(); }
  [[nodiscard]] std::uint64_t id() const { return id_; }
  [[nodiscard]] std::size_t objectives() const { return mean_.size(); }

 private:
  DecisionVector decision_;
  std::vector<ObjectiveVector> samples_;
  ObjectiveVector sum_;
  ObjectiveVector mean_;
  std::uint64_t id_ = 0;
};

/// Box constraints of a decision space.
struct Bounds {
  DecisionVector lower;
  DecisionVector upper;

  [[nodiscard]] std::size_t dim() const { return lower.size(); }
  [[nodiscard]] bool contains(std::span<const double> x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    }
    return true;
  }
};

}  // namespace arb
