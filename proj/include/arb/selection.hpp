// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "arb/run_record.hpp"

namespace arb {

/// Problem and noise of a record, as used to group comparisons.
struct SettingKey {
  std::string problem;
  NoiseKind noise = NoiseKind::none;
  int df = 1;
  double sigma = 0.0;

  static SettingKey of(const Slice& slice);
  [[nodiscard]] std::string label() const;
  auto operator<=>(const SettingKey&) const = default;
};

/// Fraction of random replication splits a family wins in one setting.
struct SplitFraction {
  SettingKey setting;
  std::string family;
  double fraction = 0.0;
};

/// Split-replication protocol: per split, each family's best configuration is
/// chosen on n_select replications by mean normalized HV and scored on the
/// next n_compare; the family with the highest held-out mean wins (ties split
/// equally). Fractions of each setting sum to 1.
std::vector<SplitFraction> select_params_split(std::span<const RunRecord> records, std::size_t n_select,
                                               std::size_t n_compare, std::size_t n_repeats, Rng& rng);

/// Win counts shaped as families x noise kinds.
struct WinnerTable {
  std::vector<std::string> families;
  std::vector<std::string> noise_kinds;
  std::vector<std::vector<double>> counts;  // [family][noise kind]
  /// Configuration carried from the prestudy, keyed by "setting|family".
  std::map<std::string, std::string> chosen;
  std::size_t comparisons = 0;  // settings x replications counted

  [[nodiscard]] double total() const;
  [[nodiscard]] double row_total(std::size_t family) const;
  [[nodiscard]] double column_total(std::size_t kind) const;
};

/// Pre-study protocol: each family's configuration with the best mean
/// prestudy HV is compared on the full-budget records, per setting and
/// replication. Missing full-budget slices raise ConfigError naming each gap.
WinnerTable select_params_prestudy(std::span<const RunRecord> prestudy, std::span<const RunRecord> full);

}  // namespace arb
