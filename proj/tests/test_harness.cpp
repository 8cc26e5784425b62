// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "arb/harness.hpp"
#include "arb/report.hpp"
#include "arb/selection.hpp"

using namespace arb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("arb-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

// Compares against tests/golden/<name>; ARB_UPDATE_GOLDEN=1 rewrites the file instead.
void check_golden(const std::string& name, const std::string& actual) {
  const fs::path path = fs::path(ARB_TEST_DIR) / "golden" / name;
  if (std::getenv("ARB_UPDATE_GOLDEN") != nullptr) write_text_file(path, actual);
  CHECK(slurp(path) == actual);
}

StrategyConfig static_n(int n) {
  StrategyConfig s;
  s.mode = ResamplingMode::one_shot;
  s.resampling.kind = StrategyKind::static_n;
  s.resampling.max_evaluations = n;
  return s;
}

StrategyConfig rank_n(int n) {
  StrategyConfig s;
  s.resampling.kind = StrategyKind::rank;
  s.resampling.max_evaluations = n;
  return s;
}

StrategyConfig arb_strategy(double lo, double hi) {
  StrategyConfig s;
  s.resampling.kind = StrategyKind::arb;
  s.resampling.thresholds = {lo, hi};
  return s;
}

StrategyConfig rtea_strategy() {
  StrategyConfig s;
  s.algorithm = Algorithm::rtea;
  return s;
}

RunRecord synthetic(const std::string& problem, NoiseLaw noise, StrategyConfig strategy, std::size_t budget,
                    std::size_t rep, double hv) {
  RunRecord r;
  r.slice.problem = problem;
  r.slice.noise = noise;
  r.slice.strategy = std::move(strategy);
  r.slice.budget = budget;
  r.fingerprint = r.slice.fingerprint();
  r.replication = rep;
  r.seed = derive_seed(1, r.fingerprint, rep);
  r.metrics.hv_normalized = hv;
  r.metrics.hv_raw = hv * 0.8;
  r.metrics.igd_p = 1.0 - hv;
  return r;
}

const NoiseLaw gauss1{NoiseKind::gaussian, 1, 1.0};
const NoiseLaw chisq1{NoiseKind::chisq, 1, 1.0};
const NoiseLaw quiet{};

json small_config() {
  return json::parse(R"({
    "schema_version": 1,
    "problems": ["UF1"],
    "noise": [{"kind": "gaussian", "sigma": [0.1, 0.5, 1.0]}],
    "strategies": [
      {"algorithm": "nsga2", "mode": "one_shot", "resampling": {"kind": "static", "n": [1]}},
      {"algorithm": "rtea", "k": [1]}
    ],
    "budget": 300,
    "replications": 5,
    "base_seed": 3,
    "protocol": "split_replications",
    "split": {"n_select": 2, "n_compare": 3, "n_repeats": 10}
  })");
}

}  // namespace

TEST_CASE("configuration grids expand in problem, noise, strategy order") {
  auto j = small_config();
  j["problems"] = {"UF1", "UF3"};
  j["noise"].push_back({{"kind", "chisq"}, {"df", {1, 2}}, {"sigma", {1.0}}});
  j["noise"].push_back({{"kind", "none"}});
  j["strategies"].push_back(
      {{"algorithm", "nsga2"}, {"resampling", {{"kind", "arb"}, {"alpha_l", {0.1, 0.2}}, {"alpha_u", {0.9}}}}});
  const auto c = ExperimentConfig::from_json(j);
  CHECK(c.noise.size() == 6);
  CHECK(c.strategies.size() == 4);
  const auto slices = c.slices();
  CHECK(slices.size() == 2 * 6 * 4);
  CHECK(slices.front().problem == "UF1");
  CHECK(slices.back().problem == "UF3");
  CHECK(slices[0].noise.sigma == 0.1);
  CHECK(slices[1].strategy.algorithm == Algorithm::rtea);
  CHECK(slices[3].strategy.label() == "arb[alpha_l=0.2,alpha_u=0.9,B=100]/sequential");
  CHECK(c.split.n_select == 2);
  CHECK(c.protocol == SelectionProtocol::split_replications);
}

TEST_CASE("configuration errors are descriptive") {
  auto bad_version = small_config();
  bad_version["schema_version"] = 2;
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad_version), ConfigError);

  auto unknown = small_config();
  unknown["budgett"] = 5;
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(unknown), doctest::Contains("budgett"), ConfigError);

  auto too_small = small_config();
  too_small["budget"] = 10;
  CHECK_THROWS_AS(ExperimentConfig::from_json(too_small), ConfigError);

  auto bad_alpha = small_config();
  bad_alpha["strategies"][0] = {{"resampling", {{"kind", "arb"}, {"alpha_l", {0.95}}, {"alpha_u", {0.9}}}}};
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad_alpha), ConfigError);

  auto bad_noise = small_config();
  bad_noise["noise"][0]["kind"] = "cauchy";
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad_noise), ConfigError);

  auto no_reps = small_config();
  no_reps["replications"] = 0;
  CHECK_THROWS_AS(ExperimentConfig::from_json(no_reps), ConfigError);

  auto split = small_config();
  split["split"]["n_select"] = 4;
  CHECK_THROWS_AS(ExperimentConfig::from_json(split), ConfigError);

  auto prestudy = small_config();
  prestudy["protocol"] = "prestudy";
  prestudy["prestudy_budget"] = 600;
  CHECK_THROWS_AS(ExperimentConfig::from_json(prestudy), ConfigError);

  auto dup = small_config();
  dup["strategies"].push_back(dup["strategies"][0]);
  CHECK_THROWS_AS(ExperimentConfig::from_json(dup), ConfigError);

  auto wrong_type = small_config();
  wrong_type["budget"] = "lots";
  CHECK_THROWS_AS(ExperimentConfig::from_json(wrong_type), ConfigError);

  CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/arb.json"), ConfigError);
}

TEST_CASE("shipped configurations parse") {
  for (const char* name : {"smoke.json", "desk_scale.json"}) {
    const auto path = fs::path(ARB_TEST_DIR) / ".." / "configs" / name;
    CHECK_NOTHROW(ExperimentConfig::from_file(path));
  }
}

TEST_CASE("slice fingerprints and seeds") {
  Slice a;
  a.noise = gauss1;
  Slice b = a;
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint().size() == 16);
  b.noise.sigma = 0.5;
  CHECK(a.fingerprint() != b.fingerprint());
  // sigma is irrelevant without noise.
  Slice c, d;
  d.noise.sigma = 0.5;
  CHECK(c.fingerprint() == d.fingerprint());
  b = a;
  b.budget = 2000;
  CHECK(a.fingerprint() != b.fingerprint());

  CHECK(Slice::from_json(a.to_json()).fingerprint() == a.fingerprint());
  auto arb_slice = a;
  arb_slice.strategy = arb_strategy(0.1, 0.7);
  CHECK(Slice::from_json(arb_slice.to_json()).to_json() == arb_slice.to_json());

  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(derive_seed(1, "abc", 0) == derive_seed(1, "abc", 0));
  CHECK(derive_seed(1, "abc", 0) != derive_seed(1, "abc", 1));
  CHECK(derive_seed(1, "abc", 0) != derive_seed(2, "abc", 0));
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("a single run is deterministic and spends its budget") {
  Slice s;
  s.noise = gauss1;
  s.budget = 2000;
  s.strategy = arb_strategy(0.2, 0.9);
  const auto a = run_single(s, 99, 0);
  const auto b = run_single(s, 99, 0);
  CHECK(a.serialize() == b.serialize());
  CHECK(a.log.size() == 2000);
  CHECK(a.fingerprint == s.fingerprint());
  CHECK(RunRecord::from_json(json::parse(a.serialize())).serialize() == a.serialize());

  const auto dir = scratch("record");
  write_record(record_path(dir, a.fingerprint, 0), a);
  CHECK(read_record(record_path(dir, a.fingerprint, 0)).serialize() == a.serialize());
  CHECK(record_path(dir, "abcd", 3).filename() == "abcd-r3.json");
}

TEST_CASE("zero-noise runs score within the normalized range") {
  for (auto strategy : {static_n(1), static_n(5), rank_n(5), arb_strategy(0.2, 0.9), rtea_strategy()}) {
    Slice s;
    s.budget = 1000;
    s.strategy = strategy;
    const auto r = run_single(s, 5, 0);
    CHECK(r.log.size() == 1000);
    CHECK(r.metrics.hv_normalized >= 0.0);
    CHECK(r.metrics.hv_normalized <= 1.01);
  }
}

TEST_CASE("invalid slices fail before any evaluation") {
  Slice s;
  s.budget = 10;
  CHECK_THROWS_AS(run_single(s, 1, 0), ConfigError);
  s.budget = 1000;
  s.problem = "UF9";
  CHECK_THROWS_AS(run_single(s, 1, 0), ConfigError);
}

TEST_CASE("sweep produces one record per slice and replication, independent of order and workers") {
  const auto config = ExperimentConfig::from_json(small_config());
  const auto dir = scratch("sweep");
  const auto records = sweep(config, config.budget, {dir, 1, true});
  CHECK(records.size() == 30);

  // Re-running reuses the stored records.
  const auto again = sweep(config, config.budget, {dir, 1, true});
  REQUIRE(again.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) CHECK(again[i].serialize() == records[i].serialize());

  auto reordered_json = small_config();
  std::swap(reordered_json["strategies"][0], reordered_json["strategies"][1]);
  reordered_json["noise"][0]["sigma"] = {1.0, 0.5, 0.1};
  const auto reordered = ExperimentConfig::from_json(reordered_json);
  const auto parallel = sweep(reordered, reordered.budget, {{}, 2, false});
  std::map<std::pair<std::string, std::size_t>, std::string> by_key;
  for (const auto& r : parallel) by_key[{r.fingerprint, r.replication}] = r.serialize();
  for (const auto& r : records) CHECK(by_key.at({r.fingerprint, r.replication}) == r.serialize());

  const auto loaded = load_records(dir);
  CHECK(loaded.size() == 30);
  CHECK(runs_csv(loaded) == runs_csv(parallel));
  CHECK(aggregate_csv(loaded) == aggregate_csv(parallel));
  CHECK(hv_sigma_csv(loaded) == hv_sigma_csv(parallel));
}

TEST_CASE("reports are complete and reproducible") {
  const auto config = ExperimentConfig::from_json(small_config());
  const auto records = sweep(config, config.budget, {{}, 1, false});
  const auto out1 = scratch("report1");
  const auto out2 = scratch("report2");
  const auto f1 = write_report(records, out1);
  const auto f2 = write_report(records, out2);
  for (const char* name : {"runs.csv", "aggregate.csv", "strategies.csv", "hv_vs_sigma.csv"}) {
    CHECK(slurp(out1 / name) == slurp(out2 / name));
  }
  CHECK(lines(slurp(f1.runs)) == 31);
  // 3 settings x 2 families.
  CHECK(lines(slurp(f1.aggregate)) == 1 + 3 * 2);
  CHECK(slurp(f1.runs).find('\r') == std::string::npos);

  const auto blocked = scratch("blocked") / "file";
  write_text_file(blocked, "x");
  CHECK_THROWS(write_report(records, blocked / "sub"));
  CHECK_THROWS_AS(write_report({}, out1), UsageError);
}

TEST_CASE("aggregate reports each family's best configuration") {
  std::vector<RunRecord> records;
  for (std::size_t rep = 0; rep < 3; ++rep) {
    records.push_back(synthetic("UF1", gauss1, static_n(1), 10000, rep, 0.2));
    records.push_back(synthetic("UF1", gauss1, static_n(5), 10000, rep, 0.3));
    records.push_back(synthetic("UF1", gauss1, rank_n(5), 10000, rep, 0.25));
    records.push_back(synthetic("UF1", gauss1, arb_strategy(0.2, 0.9), 10000, rep, 0.4));
    records.push_back(synthetic("UF1", chisq1, static_n(1), 10000, rep, 0.6));
  }
  const auto agg = aggregate_csv(records);
  CHECK(lines(agg) == 1 + 4);
  CHECK(agg.find("static[n=5]") != std::string::npos);
  CHECK(agg.find("UF1,gaussian,,1,NSGA-II STA,\"static[n=1]") == std::string::npos);
  CHECK(lines(strategies_csv(records)) == 1 + 5);
}

TEST_CASE("CSV formats are frozen") {
  std::vector<RunRecord> records;
  for (std::size_t rep = 0; rep < 2; ++rep) {
    records.push_back(synthetic("UF1", gauss1, static_n(1), 10000, rep, 0.2 + 0.1 * rep));
    records.push_back(synthetic("UF1", gauss1, arb_strategy(0.2, 0.9), 10000, rep, 0.4));
    records.push_back(synthetic("UF1", {NoiseKind::gaussian, 1, 0.5}, arb_strategy(0.2, 0.9), 10000, rep, 0.5));
    records.push_back(synthetic("UF1", chisq1, rtea_strategy(), 10000, rep, 0.7));
    records.push_back(synthetic("UF2", quiet, rank_n(5), 10000, rep, 0.9));
  }
  check_golden("runs.csv", runs_csv(records));
  check_golden("aggregate.csv", aggregate_csv(records));
  check_golden("strategies.csv", strategies_csv(records));
  check_golden("hv_vs_sigma.csv", hv_sigma_csv(records));

  Rng rng(1);
  check_golden("split.csv", split_csv(select_params_split(records, 1, 1, 10, rng)));
  check_golden("winners.csv", winner_table_csv(select_params_prestudy(records, records)));
}

TEST_CASE("split selection: one family always wins") {
  std::vector<RunRecord> records;
  for (std::size_t rep = 0; rep < 10; ++rep) {
    records.push_back(synthetic("UF1", gauss1, static_n(1), 10000, rep, 0.1 * rep));
    records.push_back(synthetic("UF1", gauss1, static_n(5), 10000, rep, 0.05 * rep));
  }
  Rng rng(2);
  const auto fractions = select_params_split(records, 5, 5, 100, rng);
  REQUIRE(fractions.size() == 1);
  CHECK(fractions[0].family == "NSGA-II STA");
  CHECK(fractions[0].fraction == 1.0);
}

TEST_CASE("split selection: identical families share the wins") {
  std::vector<RunRecord> records;
  Rng values(3);
  for (std::size_t rep = 0; rep < 10; ++rep) {
    const double hv = values.uniform();
    records.push_back(synthetic("UF1", gauss1, static_n(1), 10000, rep, hv));
    records.push_back(synthetic("UF1", gauss1, arb_strategy(0.2, 0.9), 10000, rep, hv));
  }
  Rng rng(4);
  const auto fractions = select_params_split(records, 5, 5, 100, rng);
  REQUIRE(fractions.size() == 2);
  for (const auto& f : fractions) CHECK(std::abs(f.fraction - 0.5) <= 0.15);
}

TEST_CASE("split selection fractions sum to one per setting") {
  std::vector<RunRecord> records;
  Rng values(5);
  for (const auto& noise : {gauss1, chisq1, quiet}) {
    for (std::size_t rep = 0; rep < 10; ++rep) {
      records.push_back(synthetic("UF1", noise, static_n(1), 10000, rep, values.uniform()));
      records.push_back(synthetic("UF1", noise, static_n(5), 10000, rep, values.uniform()));
      records.push_back(synthetic("UF1", noise, rank_n(5), 10000, rep, values.uniform()));
      records.push_back(synthetic("UF1", noise, arb_strategy(0.2, 0.9), 10000, rep, values.uniform()));
      records.push_back(synthetic("UF1", noise, rtea_strategy(), 10000, rep, std::round(values.uniform())));
    }
  }
  Rng rng(6);
  const auto fractions = select_params_split(records, 5, 5, 100, rng);
  std::map<SettingKey, double> sums;
  for (const auto& f : fractions) sums[f.setting] += f.fraction;
  CHECK(sums.size() == 3);
  for (const auto& [setting, sum] : sums) CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(select_params_split(records, 6, 5, 100, rng), UsageError);
  CHECK_THROWS_AS(select_params_split(records, 0, 5, 100, rng), UsageError);
}

TEST_CASE("pre-study table accounting") {
  std::vector<RunRecord> pre, full;
  Rng values(7);
  std::size_t settings = 0;
  for (const auto& noise : {gauss1, chisq1, quiet, NoiseLaw{NoiseKind::gaussian, 1, 0.1}}) {
    ++settings;
    for (std::size_t rep = 0; rep < 4; ++rep) {
      for (auto s : {static_n(1), static_n(5), rank_n(5), arb_strategy(0.2, 0.9), rtea_strategy()}) {
        pre.push_back(synthetic("UF1", noise, s, 2000, rep, values.uniform()));
        full.push_back(synthetic("UF1", noise, s, 10000, rep, values.uniform()));
      }
    }
  }
  const auto table = select_params_prestudy(pre, full);
  CHECK(table.families == canonical_families());
  CHECK(table.noise_kinds == std::vector<std::string>{"chisq", "gaussian", "none"});
  CHECK(table.comparisons == settings * 4);
  CHECK(table.total() == doctest::Approx(16.0));
  CHECK(table.column_total(0) == doctest::Approx(4.0));
  CHECK(table.column_total(1) == doctest::Approx(8.0));
  CHECK(table.column_total(2) == doctest::Approx(4.0));
  double rows = 0;
  for (std::size_t f = 0; f < table.families.size(); ++f) rows += table.row_total(f);
  CHECK(rows == doctest::Approx(16.0));
  CHECK(lines(winner_table_csv(table)) == 1 + 4 + 1);
}

TEST_CASE("pre-study with one family gives it every win") {
  std::vector<RunRecord> pre, full;
  for (const auto& noise : {gauss1, chisq1}) {
    for (std::size_t rep = 0; rep < 3; ++rep) {
      pre.push_back(synthetic("UF1", noise, arb_strategy(0.2, 0.9), 2000, rep, 0.1));
      pre.push_back(synthetic("UF1", noise, arb_strategy(0.1, 0.9), 2000, rep, 0.2));
      full.push_back(synthetic("UF1", noise, arb_strategy(0.1, 0.9), 10000, rep, 0.3));
    }
  }
  const auto table = select_params_prestudy(pre, full);
  CHECK(table.row_total(0) == 6.0);
  CHECK(table.total() == 6.0);
  CHECK(table.chosen.at("UF1 gaussian sigma=1|ARB") == "arb[alpha_l=0.1,alpha_u=0.9,B=100]/sequential");
}

TEST_CASE("pre-study reports missing slices") {
  std::vector<RunRecord> pre, full;
  pre.push_back(synthetic("UF1", gauss1, static_n(5), 2000, 0, 0.5));
  pre.push_back(synthetic("UF1", chisq1, static_n(5), 2000, 0, 0.5));
  full.push_back(synthetic("UF1", gauss1, static_n(1), 10000, 0, 0.5));
  full.push_back(synthetic("UF2", gauss1, static_n(5), 10000, 0, 0.5));
  try {
    select_params_prestudy(pre, full);
    FAIL("expected a configuration error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("UF1 gaussian sigma=1 / static[n=5]/one_shot") != std::string::npos);
    CHECK(msg.find("UF1 chisq1 sigma=1") != std::string::npos);
    CHECK(msg.find("UF2 gaussian sigma=1 (no prestudy records)") != std::string::npos);
  }
}
