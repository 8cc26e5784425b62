// SPDX-License-Identifier: Apache-2.0
#include "arb/run_record.hpp"

#include <fstream>
#include <sstream>

namespace arb {

json RunRecord::to_json() const {
  json log_rows = json::array();
  for (const auto& e : log) {
    json row = json::array({e.point_id, e.generation});
    for (double v : e.sample) row.push_back(v);
    log_rows.push_back(std::move(row));
  }
  json points = json::array();
  for (const auto& p : returned) {
    points.push_back({{"x", p.decision}, {"mean", p.mean}, {"count", p.count}});
  }
  return {{"schema_version", record_schema_version},
          {"fingerprint", fingerprint},
          {"slice", slice.to_json()},
          {"seed", seed},
          {"replication", replication},
          {"generations", generations},
          {"metrics",
           {{"hv_raw", metrics.hv_raw},
            {"hv_normalized", metrics.hv_normalized},
            {"igd_p", metrics.igd_p},
            {"p", metrics.p},
            {"nadir", metrics.nadir},
            {"pf_sample_size", metrics.pf_sample_size},
            {"filtered_size", metrics.filtered_size}}},
          {"returned", std::move(points)},
          {"log", std::move(log_rows)}};
}

RunRecord RunRecord::from_json(const json& j) {
  if (j.value("schema_version", 0) != record_schema_version) {
    throw ConfigError("unsupported run record schema");
  }
  RunRecord r;
  r.fingerprint = j.at("fingerprint").get<std::string>();
  r.slice = Slice::from_json(j.at("slice"));
  r.seed = j.at("seed").get<std::uint64_t>();
  r.replication = j.at("replication").get<std::size_t>();
  r.generations = j.at("generations").get<int>();
  const auto& m = j.at("metrics");
  r.metrics.hv_raw = m.at("hv_raw").get<double>();
  r.metrics.hv_normalized = m.at("hv_normalized").get<double>();
  r.metrics.igd_p = m.at("igd_p").get<double>();
  r.metrics.p = m.at("p").get<double>();
  r.metrics.nadir = m.at("nadir").get<ObjectiveVector>();
  r.metrics.pf_sample_size = m.at("pf_sample_size").get<std::size_t>();
  r.metrics.filtered_size = m.at("filtered_size").get<std::size_t>();
  for (const auto& p : j.at("returned")) {
    r.returned.push_back({p.at("x").get<DecisionVector>(), p.at("mean").get<ObjectiveVector>(),
                          p.at("count").get<std::size_t>()});
  }
  for (const auto& row : j.at("log")) {
    EvaluationRecord e;
    e.point_id = row.at(0).get<std::uint64_t>();
    e.generation = row.at(1).get<int>();
    for (std::size_t k = 2; k < row.size(); ++k) e.sample.push_back(row.at(k).get<double>());
    r.log.push_back(std::move(e));
  }
  return r;
}

std::string RunRecord::serialize() const { return to_json().dump(); }

void write_record(const std::filesystem::path& path, const RunRecord& record) {
  std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << record.serialize() << '\n';
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

RunRecord read_record(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return RunRecord::from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ConfigError("corrupt record " + path.string() + ": " + e.what());
  }
}

}  // namespace arb
