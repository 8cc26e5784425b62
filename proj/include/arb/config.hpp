// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arb/metrics.hpp"
#include "arb/nsga2.hpp"
#include "arb/rtea.hpp"

namespace arb {

using json = nlohmann::json;

inline constexpr int config_schema_version = 1;

/// Comparison families: every configured strategy belongs to exactly one.
inline constexpr std::string_view family_arb = "ARB";
inline constexpr std::string_view family_dynamic = "NSGA-II DYN";
inline constexpr std::string_view family_static = "NSGA-II STA";
inline constexpr std::string_view family_rtea = "RTEA";
std::vector<std::string> canonical_families();

enum class Algorithm { nsga2, rtea };

/// One fully specified optimizer (no grids left).
struct StrategyConfig {
  Algorithm algorithm = Algorithm::nsga2;
  ResamplingMode mode = ResamplingMode::sequential;
  ResamplingStrategy resampling;
  std::size_t arb_initial_size = 120;
  std::size_t error_base_capacity = DispersionSet::default_capacity;
  // RTEA
  std::size_t rtea_resamples = 1;
  std::size_t rtea_initial = 40;
  double rtea_refinement = 0.1;
  std::string family;  // empty: derived from the algorithm / resampling kind

  [[nodiscard]] std::string family_name() const;
  /// Short human-readable identifier, unique per parameterization.
  [[nodiscard]] std::string label() const;
  [[nodiscard]] json to_json() const;
  static StrategyConfig from_json(const json& j);
};

/// One problem x noise x strategy x budget combination.
struct Slice {
  std::string problem = "UF1";
  std::size_t dim = 10;
  NoiseLaw noise;
  StrategyConfig strategy;
  std::size_t budget = 10000;
  std::size_t popsize = 40;
  VariationConfig variation;
  MetricParams metrics;

  void validate() const;
  [[nodiscard]] json to_json() const;
  static Slice from_json(const json& j);
  /// 16 hex digits of FNV-1a over the canonical JSON dump.
  [[nodiscard]] std::string fingerprint() const;
  /// Problem and noise, e.g. "UF1 gaussian sigma=1".
  [[nodiscard]] std::string setting_label() const;
  [[nodiscard]] NoisyProblem make_noisy_problem() const;
  [[nodiscard]] Nsga2Config nsga2_config() const;
  [[nodiscard]] RteaConfig rtea_config() const;
};

enum class SelectionProtocol { split_replications, prestudy };

struct SplitOptions {
  std::size_t n_select = 5;
  std::size_t n_compare = 5;
  std::size_t n_repeats = 100;
};

/// Whole experiment: grids are expanded when the config is parsed.
struct ExperimentConfig {
  std::vector<std::string> problems{"UF1"};
  std::size_t dim = 10;
  std::vector<NoiseLaw> noise;
  std::vector<StrategyConfig> strategies;
  std::size_t budget = 10000;
  std::size_t popsize = 40;
  std::size_t replications = 10;
  std::uint64_t base_seed = 1;
  SelectionProtocol protocol = SelectionProtocol::prestudy;
  std::size_t prestudy_budget = 2000;
  SplitOptions split;
  VariationConfig variation;
  MetricParams metrics;
  std::string output_dir = "arbench-out";

  void validate() const;
  /// Cross product problems x noise x strategies at the given budget.
  [[nodiscard]] std::vector<Slice> slices(std::size_t run_budget) const;
  [[nodiscard]] std::vector<Slice> slices() const { return slices(budget); }

  static ExperimentConfig from_json(const json& j);
  static ExperimentConfig from_file(const std::filesystem::path& path);
};

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t x);
/// seed = splitmix64(splitmix64(base ^ fnv1a64(fingerprint)) + replication)
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view fingerprint, std::size_t replication);

/// Shortest round-trip decimal text of a double.
std::string format_number(double v);

}  // namespace arb
