// SPDX-License-Identifier: Apache-2.0
#include "arb/config.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>

namespace arb {
namespace {

std::vector<json> as_list(const json& j) {
  if (j.is_array()) return {j.begin(), j.end()};
  return {j};
}

template <typename T>
std::vector<T> list_of(const json& obj, const char* key, std::vector<T> fallback) {
  if (!obj.contains(key)) return fallback;
  std::vector<T> out;
  for (const auto& v : as_list(obj.at(key))) out.push_back(v.get<T>());
  if (out.empty()) throw ConfigError(std::string("grid '") + key + "' is empty");
  return out;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

std::string indicator_name(DominanceIndicator d) { return d == DominanceIndicator::strict ? "strict" : "weak"; }

DominanceIndicator indicator_from(const std::string& s) {
  if (s == "strict") return DominanceIndicator::strict;
  if (s == "weak") return DominanceIndicator::weak;
  throw ConfigError("unknown dominance indicator '" + s + "'");
}

Algorithm algorithm_from(const std::string& s) {
  if (s == "nsga2") return Algorithm::nsga2;
  if (s == "rtea") return Algorithm::rtea;
  throw ConfigError("unknown algorithm '" + s + "'");
}

json noise_to_json(const NoiseLaw& n) {
  json j{{"kind", to_string(n.kind)}, {"sigma", n.kind == NoiseKind::none ? 0.0 : n.sigma}};
  if (n.kind == NoiseKind::chisq) j["df"] = n.df;
  return j;
}

NoiseLaw noise_from_json(const json& j) {
  NoiseLaw n;
  n.kind = noise_kind_from_string(j.at("kind").get<std::string>());
  n.sigma = j.value("sigma", 0.0);
  n.df = j.value("df", 1);
  return n;
}

json variation_to_json(const VariationConfig& v) {
  return {{"crossover_eta", v.crossover_eta},
          {"crossover_probability", v.crossover_probability},
          {"mutation_eta", v.mutation_eta},
          {"mutation_probability", v.mutation_probability}};
}

VariationConfig variation_from_json(const json& j) {
  reject_unknown_keys(j, {"crossover_eta", "crossover_probability", "mutation_eta", "mutation_probability"},
                      "variation");
  VariationConfig v;
  v.crossover_eta = j.value("crossover_eta", v.crossover_eta);
  v.crossover_probability = j.value("crossover_probability", v.crossover_probability);
  v.mutation_eta = j.value("mutation_eta", v.mutation_eta);
  v.mutation_probability = j.value("mutation_probability", v.mutation_probability);
  return v;
}

json metrics_to_json(const MetricParams& m) {
  return {{"nadir_delta", m.nadir_delta}, {"pf_sample_size", m.pf_sample_size}, {"igd_power", m.igd_power}};
}

MetricParams metrics_from_json(const json& j) {
  reject_unknown_keys(j, {"nadir_delta", "pf_sample_size", "igd_power"}, "metrics");
  MetricParams m;
  m.nadir_delta = j.value("nadir_delta", m.nadir_delta);
  m.pf_sample_size = j.value("pf_sample_size", m.pf_sample_size);
  m.igd_power = j.value("igd_power", m.igd_power);
  return m;
}

std::vector<NoiseLaw> expand_noise(const json& entry) {
  reject_unknown_keys(entry, {"kind", "df", "sigma"}, "noise entry");
  const auto kind = noise_kind_from_string(entry.at("kind").get<std::string>());
  if (kind == NoiseKind::none) return {NoiseLaw{}};
  std::vector<NoiseLaw> out;
  for (int df : list_of<int>(entry, "df", {1})) {
    for (double sigma : list_of<double>(entry, "sigma", default_sigma_grid())) {
      NoiseLaw n{kind, kind == NoiseKind::chisq ? df : 1, sigma};
      if (kind == NoiseKind::gaussian && entry.contains("df")) {
        throw ConfigError("df is only meaningful for chisq noise");
      }
      out.push_back(n);
    }
  }
  return out;
}

std::vector<StrategyConfig> expand_strategy(const json& entry) {
  reject_unknown_keys(entry, {"algorithm", "mode", "family", "resampling", "initial_size", "error_base", "k",
                              "p", "z"},
                      "strategy entry");
  StrategyConfig base;
  base.algorithm = algorithm_from(entry.value("algorithm", std::string("nsga2")));
  base.family = entry.value("family", std::string());
  std::vector<StrategyConfig> out;

  if (base.algorithm == Algorithm::rtea) {
    for (auto k : list_of<std::size_t>(entry, "k", {1})) {
      for (auto p : list_of<std::size_t>(entry, "p", {40})) {
        for (double z : list_of<double>(entry, "z", {0.1})) {
          StrategyConfig s = base;
          s.rtea_resamples = k;
          s.rtea_initial = p;
          s.rtea_refinement = z;
          out.push_back(s);
        }
      }
    }
    return out;
  }

  base.mode = resampling_mode_from_string(entry.value("mode", std::string("sequential")));
  base.arb_initial_size = entry.value("initial_size", base.arb_initial_size);
  base.error_base_capacity = entry.value("error_base", base.error_base_capacity);
  const json& r = entry.at("resampling");
  reject_unknown_keys(r, {"kind", "n", "se_threshold", "aggregation", "cap", "verbatim", "alpha_l", "alpha_u",
                          "replicates", "indicator"},
                      "resampling");
  base.resampling.kind = strategy_kind_from_string(r.at("kind").get<std::string>());

  switch (base.resampling.kind) {
    case StrategyKind::static_n:
    case StrategyKind::time:
    case StrategyKind::rank:
    case StrategyKind::strength:
      for (int n : list_of<int>(r, "n", {base.resampling.kind == StrategyKind::static_n ? 1 : 10})) {
        StrategyConfig s = base;
        s.resampling.max_evaluations = n;
        out.push_back(s);
      }
      break;
    case StrategyKind::sederror:
      for (double thr : list_of<double>(r, "se_threshold", {0.05})) {
        for (const auto& agg : list_of<std::string>(r, "aggregation", {"max"})) {
          for (int cap : list_of<int>(r, "cap", {0})) {
            StrategyConfig s = base;
            s.resampling.se_threshold = thr;
            s.resampling.aggregation = aggregation_from_string(agg);
            s.resampling.max_evaluations = cap;
            s.resampling.se_verbatim = r.value("verbatim", false);
            out.push_back(s);
          }
        }
      }
      break;
    case StrategyKind::arb:
      for (double lo : list_of<double>(r, "alpha_l", {0.2})) {
        for (double hi : list_of<double>(r, "alpha_u", {0.9})) {
          for (auto b : list_of<std::size_t>(r, "replicates", {default_bootstrap_replicates})) {
            StrategyConfig s = base;
            s.resampling.thresholds = {lo, hi};
            s.resampling.bootstrap_replicates = b;
            s.resampling.indicator = indicator_from(r.value("indicator", std::string("strict")));
            out.push_back(s);
          }
        }
      }
      break;
  }
  return out;
}

}  // namespace

std::vector<std::string> canonical_families() {
  return {std::string(family_arb), std::string(family_dynamic), std::string(family_static),
          std::string(family_rtea)};
}

std::string format_number(double v) { return fmt::format("{}", v); }

std::string StrategyConfig::family_name() const {
  if (!family.empty()) return family;
  if (algorithm == Algorithm::rtea) return std::string(family_rtea);
  switch (resampling.kind) {
    case StrategyKind::static_n: return std::string(family_static);
    case StrategyKind::arb: return std::string(family_arb);
    default: return std::string(family_dynamic);
  }
}

std::string StrategyConfig::label() const {
  if (algorithm == Algorithm::rtea) {
    return fmt::format("rtea[k={},p={},z={}]", rtea_resamples, rtea_initial, format_number(rtea_refinement));
  }
  const auto& r = resampling;
  std::string params;
  switch (r.kind) {
    case StrategyKind::static_n:
    case StrategyKind::time:
    case StrategyKind::rank:
    case StrategyKind::strength:
      params = fmt::format("n={}", r.max_evaluations);
      break;
    case StrategyKind::sederror:
      params = fmt::format("thr={},agg={}", format_number(r.se_threshold), to_string(r.aggregation));
      if (r.max_evaluations > 0) params += fmt::format(",cap={}", r.max_evaluations);
      if (r.se_verbatim) params += ",verbatim";
      break;
    case StrategyKind::arb:
      params = fmt::format("alpha_l={},alpha_u={},B={}", format_number(r.thresholds.alpha_l),
                           format_number(r.thresholds.alpha_u), r.bootstrap_replicates);
      if (r.indicator == DominanceIndicator::weak) params += ",weak";
      if (arb_initial_size != 120 || error_base_capacity != DispersionSet::default_capacity) {
        params += fmt::format(",init={},base={}", arb_initial_size, error_base_capacity);
      }
      break;
  }
  return fmt::format("{}[{}]/{}", to_string(r.kind), params, to_string(mode));
}

json StrategyConfig::to_json() const {
  json j{{"algorithm", algorithm == Algorithm::rtea ? "rtea" : "nsga2"}, {"family", family_name()}};
  if (algorithm == Algorithm::rtea) {
    j["k"] = rtea_resamples;
    j["p"] = rtea_initial;
    j["z"] = rtea_refinement;
    return j;
  }
  const auto& r = resampling;
  j["mode"] = to_string(mode);
  j["kind"] = to_string(r.kind);
  switch (r.kind) {
    case StrategyKind::static_n:
    case StrategyKind::time:
    case StrategyKind::rank:
    case StrategyKind::strength:
      j["n"] = r.max_evaluations;
      break;
    case StrategyKind::sederror:
      j["se_threshold"] = r.se_threshold;
      j["aggregation"] = to_string(r.aggregation);
      j["cap"] = r.max_evaluations;
      j["verbatim"] = r.se_verbatim;
      break;
    case StrategyKind::arb:
      j["alpha_l"] = r.thresholds.alpha_l;
      j["alpha_u"] = r.thresholds.alpha_u;
      j["replicates"] = r.bootstrap_replicates;
      j["indicator"] = indicator_name(r.indicator);
      j["initial_size"] = arb_initial_size;
      j["error_base"] = error_base_capacity;
      break;
  }
  return j;
}

StrategyConfig StrategyConfig::from_json(const json& j) {
  StrategyConfig s;
  s.algorithm = algorithm_from(j.at("algorithm").get<std::string>());
  s.family = j.value("family", std::string());
  if (s.algorithm == Algorithm::rtea) {
    s.rtea_resamples = j.at("k").get<std::size_t>();
    s.rtea_initial = j.at("p").get<std::size_t>();
    s.rtea_refinement = j.at("z").get<double>();
    return s;
  }
  s.mode = resampling_mode_from_string(j.at("mode").get<std::string>());
  auto& r = s.resampling;
  r.kind = strategy_kind_from_string(j.at("kind").get<std::string>());
  switch (r.kind) {
    case StrategyKind::static_n:
    case StrategyKind::time:
    case StrategyKind::rank:
    case StrategyKind::strength:
      r.max_evaluations = j.at("n").get<int>();
      break;
    case StrategyKind::sederror:
      r.se_threshold = j.at("se_threshold").get<double>();
      r.aggregation = aggregation_from_string(j.at("aggregation").get<std::string>());
      r.max_evaluations = j.at("cap").get<int>();
      r.se_verbatim = j.at("verbatim").get<bool>();
      break;
    case StrategyKind::arb:
      r.thresholds = {j.at("alpha_l").get<double>(), j.at("alpha_u").get<double>()};
      r.bootstrap_replicates = j.at("replicates").get<std::size_t>();
      r.indicator = indicator_from(j.at("indicator").get<std::string>());
      s.arb_initial_size = j.at("initial_size").get<std::size_t>();
      s.error_base_capacity = j.at("error_base").get<std::size_t>();
      break;
  }
  return s;
}

void Slice::validate() const {
  (void)make_noisy_problem();
  metrics.validate();
  variation.validate();
  if (strategy.algorithm == Algorithm::rtea) {
    rtea_config().validate();
  } else {
    nsga2_config().validate();
  }
}

json Slice::to_json() const {
  return {{"problem", problem},
          {"dim", dim},
          {"noise", noise_to_json(noise)},
          {"strategy", strategy.to_json()},
          {"budget", budget},
          {"popsize", popsize},
          {"variation", variation_to_json(variation)},
          {"metrics", metrics_to_json(metrics)}};
}

Slice Slice::from_json(const json& j) {
  Slice s;
  s.problem = j.at("problem").get<std::string>();
  s.dim = j.at("dim").get<std::size_t>();
  s.noise = noise_from_json(j.at("noise"));
  s.strategy = StrategyConfig::from_json(j.at("strategy"));
  s.budget = j.at("budget").get<std::size_t>();
  s.popsize = j.at("popsize").get<std::size_t>();
  s.variation = variation_from_json(j.at("variation"));
  s.metrics = metrics_from_json(j.at("metrics"));
  return s;
}

std::string Slice::fingerprint() const { return fmt::format("{:016x}", fnv1a64(to_json().dump())); }

std::string Slice::setting_label() const {
  switch (noise.kind) {
    case NoiseKind::none: return problem + " none";
    case NoiseKind::gaussian: return fmt::format("{} gaussian sigma={}", problem, format_number(noise.sigma));
    case NoiseKind::chisq:
      return fmt::format("{} chisq{} sigma={}", problem, noise.df, format_number(noise.sigma));
  }
  return problem;
}

NoisyProblem Slice::make_noisy_problem() const { return make_problem(problem, dim, noise); }

Nsga2Config Slice::nsga2_config() const {
  Nsga2Config c;
  c.popsize = popsize;
  c.budget = budget;
  c.mode = strategy.mode;
  c.strategy = strategy.resampling;
  c.variation = variation;
  c.arb_initial_size = strategy.arb_initial_size;
  c.error_base_capacity = strategy.error_base_capacity;
  return c;
}

RteaConfig Slice::rtea_config() const {
  RteaConfig c;
  c.budget = budget;
  c.resamples = strategy.rtea_resamples;
  c.initial = strategy.rtea_initial;
  c.refinement = strategy.rtea_refinement;
  return c;
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (problems.empty()) throw ConfigError("problem list is empty");
  if (noise.empty()) throw ConfigError("noise list is empty");
  if (strategies.empty()) throw ConfigError("strategy list is empty");
  if (protocol == SelectionProtocol::prestudy && budget < prestudy_budget) {
    throw ConfigError("budget must be >= prestudy_budget");
  }
  if (protocol == SelectionProtocol::split_replications && split.n_select + split.n_compare > replications) {
    throw ConfigError("n_select + n_compare exceeds the number of replications");
  }
  std::set<std::string> labels;
  for (const auto& s : strategies) {
    if (!labels.insert(s.label()).second) throw ConfigError("duplicate strategy " + s.label());
  }
  for (const auto& s : slices(budget)) {
    try {
      s.validate();
    } catch (const std::exception& e) {
      throw ConfigError("slice '" + s.setting_label() + " / " + s.strategy.label() + "': " + e.what());
    }
  }
  if (protocol == SelectionProtocol::prestudy) {
    for (const auto& s : slices(prestudy_budget)) {
      try {
        s.validate();
      } catch (const std::exception& e) {
        throw ConfigError("prestudy slice '" + s.setting_label() + " / " + s.strategy.label() + "': " + e.what());
      }
    }
  }
}

std::vector<Slice> ExperimentConfig::slices(std::size_t run_budget) const {
  std::vector<Slice> out;
  for (const auto& problem : problems) {
    for (const auto& n : noise) {
      for (const auto& s : strategies) {
        Slice slice;
        slice.problem = problem;
        slice.dim = dim;
        slice.noise = n;
        slice.strategy = s;
        slice.budget = run_budget;
        slice.popsize = popsize;
        slice.variation = variation;
        slice.metrics = metrics;
        out.push_back(std::move(slice));
      }
    }
  }
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  reject_unknown_keys(j, {"schema_version", "problems", "dim", "noise", "strategies", "budget", "popsize",
                          "replications", "base_seed", "protocol", "prestudy_budget", "split", "variation",
                          "metrics", "output_dir"},
                      "experiment config");
  if (j.value("schema_version", 0) != config_schema_version) {
    throw ConfigError("config schema_version must be " + std::to_string(config_schema_version));
  }
  ExperimentConfig c;
  try {
    c.problems = list_of<std::string>(j, "problems", c.problems);
    c.dim = j.value("dim", c.dim);
    for (const auto& entry : j.at("noise")) {
      for (auto& n : expand_noise(entry)) c.noise.push_back(n);
    }
    for (const auto& entry : j.at("strategies")) {
      for (auto& s : expand_strategy(entry)) c.strategies.push_back(s);
    }
    c.budget = j.value("budget", c.budget);
    c.popsize = j.value("popsize", c.popsize);
    c.replications = j.value("replications", c.replications);
    c.base_seed = j.value("base_seed", c.base_seed);
    const auto protocol = j.value("protocol", std::string("prestudy"));
    if (protocol == "prestudy") {
      c.protocol = SelectionProtocol::prestudy;
    } else if (protocol == "split_replications") {
      c.protocol = SelectionProtocol::split_replications;
    } else {
      throw ConfigError("unknown protocol '" + protocol + "'");
    }
    c.prestudy_budget = j.value("prestudy_budget", c.prestudy_budget);
    if (j.contains("split")) {
      const auto& s = j.at("split");
      reject_unknown_keys(s, {"n_select", "n_compare", "n_repeats"}, "split");
      c.split.n_select = s.value("n_select", c.split.n_select);
      c.split.n_compare = s.value("n_compare", c.split.n_compare);
      c.split.n_repeats = s.value("n_repeats", c.split.n_repeats);
    }
    if (j.contains("variation")) c.variation = variation_from_json(j.at("variation"));
    if (j.contains("metrics")) c.metrics = metrics_from_json(j.at("metrics"));
    c.output_dir = j.value("output_dir", c.output_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view fingerprint, std::size_t replication) {
  return splitmix64(splitmix64(base_seed ^ fnv1a64(fingerprint)) + replication);
}

}  // namespace arb
