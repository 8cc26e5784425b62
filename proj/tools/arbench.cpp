// SPDX-License-Identifier: Apache-2.0
//
// arbench: benchmark driver for noisy multi-objective resampling strategies.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "arb/harness.hpp"
#include "arb/report.hpp"
#include "arb/selection.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* out_env = "ARBENCH_OUT";

fs::path output_root(const std::string& flag, const arb::ExperimentConfig& cfg) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(out_env); env != nullptr && *env != '\0') return env;
  return cfg.output_dir;
}

fs::path full_dir(const fs::path& root) { return root / "records" / "full"; }
fs::path prestudy_dir(const fs::path& root) { return root / "records" / "prestudy"; }

void write_timings(const fs::path& path, const std::vector<arb::RunRecord>& records) {
  std::string out = "fingerprint,replication,wall_time_s\n";
  for (const auto& r : records) {
    if (r.wall_time_s > 0.0) out += fmt::format("{},{},{:.3f}\n", r.fingerprint, r.replication, r.wall_time_s);
  }
  arb::write_text_file(path, out);
}

void print_summary(const arb::RunRecord& r) {
  fmt::print("{} {} rep={} seed={} evals={} front={} hv={} igd={}\n", r.slice.setting_label(),
             r.slice.strategy.label(), r.replication, r.seed, r.log.size(), r.returned.size(),
             arb::format_number(r.metrics.hv_normalized), arb::format_number(r.metrics.igd_p));
}

int cmd_list(const arb::ExperimentConfig& cfg) {
  const auto slices = cfg.slices();
  for (std::size_t i = 0; i < slices.size(); ++i) {
    fmt::print("{:4} {} {} {}\n", i, slices[i].fingerprint(), slices[i].setting_label(), slices[i].strategy.label());
  }
  return 0;
}

int cmd_run(const arb::ExperimentConfig& cfg, std::size_t slice_index, std::size_t replication,
            const std::optional<std::uint64_t>& seed, const fs::path& root) {
  const auto slices = cfg.slices();
  if (slice_index >= slices.size()) {
    throw arb::UsageError(fmt::format("slice {} out of range, config has {} slices", slice_index, slices.size()));
  }
  const auto& slice = slices[slice_index];
  const auto fp = slice.fingerprint();
  const auto record = arb::run_single(slice, seed.value_or(arb::derive_seed(cfg.base_seed, fp, replication)),
                                      replication);
  const auto path = arb::record_path(root / "records" / "single", fp, replication);
  arb::write_record(path, record);
  print_summary(record);
  fmt::print("record: {}\n", path.string());
  return 0;
}

int cmd_report(const std::vector<arb::RunRecord>& records, const fs::path& dir) {
  const auto files = arb::write_report(records, dir);
  fmt::print("wrote {}\n      {}\n      {}\n      {}\n", files.runs.string(), files.aggregate.string(),
             files.strategies.string(), files.hv_sigma.string());
  return 0;
}

int cmd_sweep(const arb::ExperimentConfig& cfg, std::size_t jobs, const fs::path& root) {
  arb::SweepOptions opts;
  opts.jobs = jobs;
  if (cfg.protocol == arb::SelectionProtocol::prestudy) {
    opts.records_dir = prestudy_dir(root);
    const auto pre = arb::sweep(cfg, cfg.prestudy_budget, opts);
    fmt::print("prestudy: {} records\n", pre.size());
    write_timings(root / "timings_prestudy.csv", pre);
  }
  opts.records_dir = full_dir(root);
  const auto full = arb::sweep(cfg, cfg.budget, opts);
  fmt::print("full: {} records\n", full.size());
  write_timings(root / "timings.csv", full);
  return cmd_report(full, root / "report");
}

int cmd_select(const arb::ExperimentConfig& cfg, const fs::path& root) {
  const auto full = arb::load_records(full_dir(root));
  if (full.empty()) throw arb::UsageError("no records under " + full_dir(root).string() + "; run sweep first");
  if (cfg.protocol == arb::SelectionProtocol::split_replications) {
    arb::Rng rng(arb::splitmix64(cfg.base_seed));
    const auto fractions =
        arb::select_params_split(full, cfg.split.n_select, cfg.split.n_compare, cfg.split.n_repeats, rng);
    const auto path = root / "report" / "selection_split.csv";
    arb::write_text_file(path, arb::split_csv(fractions));
    std::cout << arb::split_csv(fractions);
    fmt::print("wrote {}\n", path.string());
    return 0;
  }
  const auto pre = arb::load_records(prestudy_dir(root));
  const auto table = arb::select_params_prestudy(pre, full);
  const auto path = root / "report" / "selection_prestudy.csv";
  arb::write_text_file(path, arb::winner_table_csv(table));
  std::string chosen = "setting,family,strategy\n";
  for (const auto& [key, label] : table.chosen) {
    const auto bar = key.find('|');
    chosen += fmt::format("{},{},\"{}\"\n", key.substr(0, bar), key.substr(bar + 1), label);
  }
  arb::write_text_file(root / "report" / "selection_prestudy_choices.csv", chosen);
  std::cout << arb::winner_table_csv(table);
  fmt::print("wrote {}\n", path.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resampling strategies for noisy multi-objective evolutionary optimization"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::size_t jobs = 1;
  std::string format = "csv";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, std::string("output root (default: $") + out_env + " or config output_dir)");
  };

  auto* list = app.add_subcommand("list", "print the slices of a config with their indices");
  list->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);

  auto* run = app.add_subcommand("run", "run one slice of a config");
  add_common(run);
  std::size_t slice_index = 0;
  std::size_t replication = 0;
  std::uint64_t seed_value = 0;
  run->add_option("--slice", slice_index, "slice index (see `list`)");
  run->add_option("--replication", replication, "replication index");
  auto* seed_opt = run->add_option("--seed", seed_value, "explicit seed (default: derived from base_seed)");

  auto* sweep = app.add_subcommand("sweep", "run every slice x replication (and the prestudy), then report");
  add_common(sweep);
  sweep->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);

  auto* select = app.add_subcommand("select", "apply the configured parameter-selection protocol");
  add_common(select);

  auto* report = app.add_subcommand("report", "write CSV reports from stored records");
  add_common(report);
  report->add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = arb::ExperimentConfig::from_file(config_path);
    const fs::path root = output_root(out, cfg);
    if (*list) return cmd_list(cfg);
    if (*run) {
      std::optional<std::uint64_t> seed;
      if (seed_opt->count() > 0) seed = seed_value;
      return cmd_run(cfg, slice_index, replication, seed, root);
    }
    if (*sweep) return cmd_sweep(cfg, jobs, root);
    if (*select) return cmd_select(cfg, root);
    if (*report) {
      const auto records = arb::load_records(full_dir(root));
      if (records.empty()) throw arb::UsageError("no records under " + full_dir(root).string());
      return cmd_report(records, root / "report");
    }
  } catch (const arb::ConfigError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
