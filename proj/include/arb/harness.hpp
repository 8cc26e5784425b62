// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <vector>

#include "arb/run_record.hpp"

namespace arb {

/// Runs one slice with one seed and scores the returned set.
RunRecord run_single(const Slice& slice, std::uint64_t seed, std::size_t replication);

/// Record file name: <fingerprint>-r<replication>.json
std::filesystem::path record_path(const std::filesystem::path& dir, const std::string& fingerprint,
                                  std::size_t replication);

struct SweepOptions {
  std::filesystem::path records_dir;  // empty: keep records in memory only
  std::size_t jobs = 1;
  bool reuse_existing = true;  // skip runs whose record file already exists
};

/// Every slice x replication of the config at `budget`. Records come back in
/// slice order, then replication order, whatever the execution order was.
std::vector<RunRecord> sweep(const ExperimentConfig& config, std::size_t budget, const SweepOptions& options);

/// All records in a directory, sorted by fingerprint then replication.
std::vector<RunRecord> load_records(const std::filesystem::path& dir);

}  // namespace arb
