// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "arb/selection.hpp"

namespace arb {

/// One row per run, ordered by setting, family, strategy, budget, replication.
std::string runs_csv(std::span<const RunRecord> records);
/// One row per setting x family x budget, reporting the family's best configuration by mean HV.
std::string aggregate_csv(std::span<const RunRecord> records);
/// Mean and sample standard deviation of HV and IGD per setting x strategy x budget.
std::string strategies_csv(std::span<const RunRecord> records);
/// Mean HV against noise scale, one series per problem x noise law x strategy.
std::string hv_sigma_csv(std::span<const RunRecord> records);

std::string split_csv(std::span<const SplitFraction> fractions);
std::string winner_table_csv(const WinnerTable& table);

struct ReportFiles {
  std::filesystem::path runs;
  std::filesystem::path aggregate;
  std::filesystem::path strategies;
  std::filesystem::path hv_sigma;
};

/// Writes runs.csv, aggregate.csv, strategies.csv and hv_vs_sigma.csv into out_dir.
ReportFiles write_report(std::span<const RunRecord> records, const std::filesystem::path& out_dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace arb
