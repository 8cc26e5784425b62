// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arb/config.hpp"
#include "arb/evaluator.hpp"

namespace arb {

inline constexpr int record_schema_version = 1;

/// A returned point as stored in a record.
struct ReturnedPoint {
  DecisionVector decision;
  ObjectiveVector mean;
  std::size_t count = 0;
};

/// Provenance and outcome of one optimizer run.
///
/// Wall time is kept in memory only; the serialized form is a pure function of
/// slice and seed.
struct RunRecord {
  std::string fingerprint;
  Slice slice;
  std::uint64_t seed = 0;
  std::size_t replication = 0;
  int generations = 0;
  std::vector<EvaluationRecord> log;
  std::vector<ReturnedPoint> returned;
  MetricReport metrics;
  double wall_time_s = 0.0;

  [[nodiscard]] json to_json() const;
  static RunRecord from_json(const json& j);
  /// Canonical single-line JSON text.
  [[nodiscard]] std::string serialize() const;
};

void write_record(const std::filesystem::path& path, const RunRecord& record);
RunRecord read_record(const std::filesystem::path& path);

}  // namespace arb
