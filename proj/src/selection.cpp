// SPDX-License-Identifier: Apache-2.0
#include "arb/selection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace arb {
namespace {

// setting -> family -> configuration label -> replication -> normalized HV
using ScoreIndex =
    std::map<SettingKey, std::map<std::string, std::map<std::string, std::map<std::size_t, double>>>>;

ScoreIndex index_scores(std::span<const RunRecord> records) {
  ScoreIndex index;
  for (const auto& r : records) {
    index[SettingKey::of(r.slice)][r.slice.strategy.family_name()][r.slice.strategy.label()][r.replication] =
        r.metrics.hv_normalized;
  }
  return index;
}

double mean_over(const std::map<std::size_t, double>& scores, std::span<const std::size_t> reps) {
  double sum = 0.0;
  for (std::size_t r : reps) sum += scores.at(r);
  return sum / static_cast<double>(reps.size());
}

double mean_all(const std::map<std::size_t, double>& scores) {
  double sum = 0.0;
  for (const auto& [rep, v] : scores) sum += v;
  return sum / static_cast<double>(scores.size());
}

// Configuration with the highest mean; ties go to the smallest label.
template <typename Score>
std::string best_config(const std::map<std::string, std::map<std::size_t, double>>& configs, Score score) {
  std::string best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& [label, scores] : configs) {
    const double v = score(scores);
    if (best.empty() || v > best_value) {
      best = label;
      best_value = v;
    }
  }
  return best;
}

std::size_t noise_column(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::chisq: return 0;
    case NoiseKind::gaussian: return 1;
    case NoiseKind::none: return 2;
  }
  return 2;
}

}  // namespace

SettingKey SettingKey::of(const Slice& slice) {
  SettingKey k;
  k.problem = slice.problem;
  k.noise = slice.noise.kind;
  k.df = slice.noise.kind == NoiseKind::chisq ? slice.noise.df : 1;
  k.sigma = slice.noise.kind == NoiseKind::none ? 0.0 : slice.noise.sigma;
  return k;
}

std::string SettingKey::label() const {
  switch (noise) {
    case NoiseKind::none: return problem + " none";
    case NoiseKind::gaussian: return fmt::format("{} gaussian sigma={}", problem, format_number(sigma));
    case NoiseKind::chisq: return fmt::format("{} chisq{} sigma={}", problem, df, format_number(sigma));
  }
  return problem;
}

std::vector<SplitFraction> select_params_split(std::span<const RunRecord> records, std::size_t n_select,
                                               std::size_t n_compare, std::size_t n_repeats, Rng& rng) {
  if (n_select == 0 || n_compare == 0 || n_repeats == 0) {
    throw UsageError("split protocol needs positive n_select, n_compare and n_repeats");
  }
  std::vector<SplitFraction> out;
  for (const auto& [setting, families] : index_scores(records)) {
    // Replications available for every configuration of the setting.
    std::set<std::size_t> common;
    bool first = true;
    for (const auto& [family, configs] : families) {
      for (const auto& [label, scores] : configs) {
        std::set<std::size_t> reps;
        for (const auto& [rep, v] : scores) reps.insert(rep);
        if (first) {
          common = reps;
          first = false;
        } else {
          std::set<std::size_t> both;
          std::set_intersection(common.begin(), common.end(), reps.begin(), reps.end(),
                                std::inserter(both, both.begin()));
          common = std::move(both);
        }
      }
    }
    if (common.size() < n_select + n_compare) {
      throw UsageError(fmt::format("setting '{}' has {} shared replications, split needs {}", setting.label(),
                                   common.size(), n_select + n_compare));
    }

    std::vector<std::size_t> reps(common.begin(), common.end());
    std::map<std::string, double> wins;
    for (const auto& [family, configs] : families) wins[family] = 0.0;

    for (std::size_t repeat = 0; repeat < n_repeats; ++repeat) {
      for (std::size_t i = reps.size(); i > 1; --i) std::swap(reps[i - 1], reps[rng.index(i)]);
      const std::span<const std::size_t> selection(reps.data(), n_select);
      const std::span<const std::size_t> comparison(reps.data() + n_select, n_compare);

      std::map<std::string, double> held_out;
      double top = -std::numeric_limits<double>::infinity();
      for (const auto& [family, configs] : families) {
        const auto chosen = best_config(configs, [&](const auto& s) { return mean_over(s, selection); });
        const double v = mean_over(configs.at(chosen), comparison);
        held_out[family] = v;
        top = std::max(top, v);
      }
      std::vector<std::string> winners;
      for (const auto& [family, v] : held_out) {
        if (v == top) winners.push_back(family);
      }
      for (const auto& w : winners) wins[w] += 1.0 / static_cast<double>(winners.size());
    }
    for (const auto& [family, w] : wins) {
      out.push_back({setting, family, w / static_cast<double>(n_repeats)});
    }
  }
  return out;
}

double WinnerTable::total() const {
  double t = 0.0;
  for (std::size_t f = 0; f < families.size(); ++f) t += row_total(f);
  return t;
}

double WinnerTable::row_total(std::size_t family) const {
  return std::accumulate(counts[family].begin(), counts[family].end(), 0.0);
}

double WinnerTable::column_total(std::size_t kind) const {
  double t = 0.0;
  for (const auto& row : counts) t += row[kind];
  return t;
}

WinnerTable select_params_prestudy(std::span<const RunRecord> prestudy, std::span<const RunRecord> full) {
  const auto pre = index_scores(prestudy);
  const auto main = index_scores(full);

  WinnerTable table;
  table.families = canonical_families();
  for (const auto& [setting, families] : pre) {
    for (const auto& [family, configs] : families) {
      if (std::find(table.families.begin(), table.families.end(), family) == table.families.end()) {
        table.families.push_back(family);
      }
    }
  }
  table.noise_kinds = {"chisq", "gaussian", "none"};
  table.counts.assign(table.families.size(), std::vector<double>(table.noise_kinds.size(), 0.0));

  std::vector<std::string> gaps;
  struct Plan {
    SettingKey setting;
    std::map<std::string, const std::map<std::size_t, double>*> scores;  // family -> full-budget scores
  };
  std::vector<Plan> plans;
  for (const auto& [setting, families] : pre) {
    Plan plan{setting, {}};
    const auto full_setting = main.find(setting);
    for (const auto& [family, configs] : families) {
      const auto chosen = best_config(configs, mean_all);
      table.chosen[setting.label() + "|" + family] = chosen;
      if (full_setting == main.end()) {
        gaps.push_back(setting.label() + " / " + chosen);
        continue;
      }
      const auto fam = full_setting->second.find(family);
      if (fam == full_setting->second.end() || !fam->second.contains(chosen)) {
        gaps.push_back(setting.label() + " / " + chosen);
        continue;
      }
      plan.scores[family] = &fam->second.at(chosen);
    }
    plans.push_back(std::move(plan));
  }
  for (const auto& [setting, families] : main) {
    if (!pre.contains(setting)) gaps.push_back(setting.label() + " (no prestudy records)");
  }
  if (!gaps.empty()) {
    std::string msg = "missing slices for the pre-study comparison:";
    for (const auto& g : gaps) msg += "\n  " + g;
    throw ConfigError(msg);
  }

  for (const auto& plan : plans) {
    std::set<std::size_t> reps;
    bool first = true;
    for (const auto& [family, scores] : plan.scores) {
      std::set<std::size_t> mine;
      for (const auto& [rep, v] : *scores) mine.insert(rep);
      if (first) {
        reps = mine;
        first = false;
      } else {
        std::set<std::size_t> both;
        std::set_intersection(reps.begin(), reps.end(), mine.begin(), mine.end(), std::inserter(both, both.begin()));
        reps = std::move(both);
      }
    }
    const std::size_t column = noise_column(plan.setting.noise);
    for (std::size_t rep : reps) {
      double top = -std::numeric_limits<double>::infinity();
      for (const auto& [family, scores] : plan.scores) top = std::max(top, scores->at(rep));
      std::vector<std::string> winners;
      for (const auto& [family, scores] : plan.scores) {
        if (scores->at(rep) == top) winners.push_back(family);
      }
      for (const auto& w : winners) {
        const auto row = static_cast<std::size_t>(
            std::find(table.families.begin(), table.families.end(), w) - table.families.begin());
        table.counts[row][column] += 1.0 / static_cast<double>(winners.size());
      }
      ++table.comparisons;
    }
  }
  return table;
}

}  // namespace arb
