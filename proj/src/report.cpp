// SPDX-License-Identifier: Apache-2.0
#include "arb/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include <fmt/format.h>

namespace arb {
namespace {

std::vector<const RunRecord*> ordered(std::span<const RunRecord> records) {
  std::vector<const RunRecord*> out;
  for (const auto& r : records) out.push_back(&r);
  std::sort(out.begin(), out.end(), [](const RunRecord* a, const RunRecord* b) {
    auto key = [](const RunRecord* r) {
      return std::make_tuple(SettingKey::of(r->slice), r->slice.strategy.family_name(), r->slice.strategy.label(),
                             r->slice.budget, r->replication, r->fingerprint);
    };
    return key(a) < key(b);
  });
  return out;
}

std::string noise_columns(const SettingKey& s) {
  return fmt::format("{},{},{}", to_string(s.noise), s.noise == NoiseKind::chisq ? std::to_string(s.df) : "",
                     format_number(s.sigma));
}

// Strategy labels contain commas; quote them.
std::string quoted(const std::string& s) { return "\"" + s + "\""; }

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
};

Summary summarize(const std::vector<double>& v) {
  Summary s;
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

using GroupKey = std::tuple<SettingKey, std::string, std::string, std::size_t>;

std::map<GroupKey, std::vector<const RunRecord*>> group(std::span<const RunRecord> records) {
  std::map<GroupKey, std::vector<const RunRecord*>> groups;
  for (const RunRecord* r : ordered(records)) {
    groups[{SettingKey::of(r->slice), r->slice.strategy.family_name(), r->slice.strategy.label(), r->slice.budget}]
        .push_back(r);
  }
  return groups;
}

}  // namespace

std::string runs_csv(std::span<const RunRecord> records) {
  std::string out =
      "fingerprint,problem,noise,df,sigma,family,strategy,budget,replication,seed,evaluations,generations,"
      "returned_size,filtered_size,hv_raw,hv_normalized,igd_p\n";
  for (const RunRecord* r : ordered(records)) {
    const auto s = SettingKey::of(r->slice);
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r->fingerprint, s.problem, noise_columns(s),
                       r->slice.strategy.family_name(), quoted(r->slice.strategy.label()), r->slice.budget,
                       r->replication, r->seed, r->log.size(), r->generations, r->returned.size(),
                       r->metrics.filtered_size, format_number(r->metrics.hv_raw),
                       format_number(r->metrics.hv_normalized), format_number(r->metrics.igd_p));
  }
  return out;
}

namespace {

struct ConfigRow {
  SettingKey setting;
  std::string family;
  std::string label;
  std::size_t budget = 0;
  std::size_t runs = 0;
  Summary hv;
  Summary igd;
};

std::vector<ConfigRow> config_rows(std::span<const RunRecord> records) {
  std::vector<ConfigRow> rows;
  for (const auto& [key, runs] : group(records)) {
    const auto& [setting, family, label, budget] = key;
    std::vector<double> hv, igd;
    for (const RunRecord* r : runs) {
      hv.push_back(r->metrics.hv_normalized);
      igd.push_back(r->metrics.igd_p);
    }
    rows.push_back({setting, family, label, budget, runs.size(), summarize(hv), summarize(igd)});
  }
  return rows;
}

std::string format_row(const ConfigRow& row) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{}\n", row.setting.problem, noise_columns(row.setting), row.family,
                     quoted(row.label), row.budget, row.runs, format_number(row.hv.mean), format_number(row.hv.sd),
                     format_number(row.igd.mean), format_number(row.igd.sd));
}

constexpr const char* aggregate_header = "problem,noise,df,sigma,family,strategy,budget,runs,hv_mean,hv_sd,igd_mean,igd_sd\n";

}  // namespace

std::string strategies_csv(std::span<const RunRecord> records) {
  std::string out = aggregate_header;
  for (const auto& row : config_rows(records)) out += format_row(row);
  return out;
}

std::string aggregate_csv(std::span<const RunRecord> records) {
  // One row per setting x family x budget: the family's configuration with the highest mean HV.
  // Rows arrive grouped by (setting, family, label, budget); ties keep the smallest label.
  std::map<std::tuple<SettingKey, std::string, std::size_t>, ConfigRow> best;
  for (auto& row : config_rows(records)) {
    auto key = std::make_tuple(row.setting, row.family, row.budget);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(std::move(key), std::move(row));
    } else if (row.hv.mean > it->second.hv.mean) {
      it->second = std::move(row);
    }
  }
  std::string out = aggregate_header;
  for (const auto& [key, row] : best) out += format_row(row);
  return out;
}

std::string hv_sigma_csv(std::span<const RunRecord> records) {
  // problem, noise kind, df, family, strategy, budget -> sigma -> mean HV
  using SeriesKey = std::tuple<std::string, NoiseKind, int, std::string, std::string, std::size_t>;
  std::map<SeriesKey, std::map<double, double>> series;
  for (const auto& [key, runs] : group(records)) {
    const auto& [setting, family, label, budget] = key;
    std::vector<double> hv;
    for (const RunRecord* r : runs) hv.push_back(r->metrics.hv_normalized);
    series[{setting.problem, setting.noise, setting.df, family, label, budget}][setting.sigma] = summarize(hv).mean;
  }
  std::string out = "problem,noise,df,family,strategy,budget,sigma,hv_mean\n";
  for (const auto& [key, points] : series) {
    const auto& [problem, noise, df, family, label, budget] = key;
    for (const auto& [sigma, hv] : points) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", problem, to_string(noise),
                         noise == NoiseKind::chisq ? std::to_string(df) : "", family, quoted(label), budget,
                         format_number(sigma), format_number(hv));
    }
  }
  return out;
}

std::string split_csv(std::span<const SplitFraction> fractions) {
  std::string out = "problem,noise,df,sigma,family,fraction\n";
  for (const auto& f : fractions) {
    out += fmt::format("{},{},{},{}\n", f.setting.problem, noise_columns(f.setting), f.family,
                       format_number(f.fraction));
  }
  return out;
}

std::string winner_table_csv(const WinnerTable& table) {
  std::string out = "family";
  for (const auto& k : table.noise_kinds) out += "," + k;
  out += ",total\n";
  for (std::size_t f = 0; f < table.families.size(); ++f) {
    out += table.families[f];
    for (double c : table.counts[f]) out += "," + format_number(c);
    out += "," + format_number(table.row_total(f)) + "\n";
  }
  out += "total";
  for (std::size_t k = 0; k < table.noise_kinds.size(); ++k) out += "," + format_number(table.column_total(k));
  out += "," + format_number(table.total()) + "\n";
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ReportFiles write_report(std::span<const RunRecord> records, const std::filesystem::path& out_dir) {
  if (records.empty()) throw UsageError("report needs at least one record");
  ReportFiles files{out_dir / "runs.csv", out_dir / "aggregate.csv", out_dir / "strategies.csv",
                    out_dir / "hv_vs_sigma.csv"};
  write_text_file(files.runs, runs_csv(records));
  write_text_file(files.aggregate, aggregate_csv(records));
  write_text_file(files.strategies, strategies_csv(records));
  write_text_file(files.hv_sigma, hv_sigma_csv(records));
  return files;
}

}  // namespace arb
