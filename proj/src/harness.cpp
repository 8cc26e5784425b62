// SPDX-License-Identifier: Apache-2.0
#include "arb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace arb {

RunRecord run_single(const Slice& slice, std::uint64_t seed, std::size_t replication) {
  slice.validate();
  const auto start = std::chrono::steady_clock::now();
  const NoisyProblem problem = slice.make_noisy_problem();
  Rng rng(seed);
  OptimizerResult result = slice.strategy.algorithm == Algorithm::rtea
                               ? rtea_run(problem, slice.rtea_config(), slice.variation, rng)
                               : nsga2_run(problem, slice.nsga2_config(), rng);

  RunRecord record;
  record.fingerprint = slice.fingerprint();
  record.slice = slice;
  record.seed = seed;
  record.replication = replication;
  record.generations = result.generations;
  record.metrics = evaluate_metrics(result.front, problem, slice.metrics);
  for (const auto& p : result.front) record.returned.push_back({p.decision(), p.mean(), p.count()});
  record.log = std::move(result.log);
  record.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

std::filesystem::path record_path(const std::filesystem::path& dir, const std::string& fingerprint,
                                  std::size_t replication) {
  return dir / fmt::format("{}-r{}.json", fingerprint, replication);
}

std::vector<RunRecord> sweep(const ExperimentConfig& config, std::size_t budget, const SweepOptions& options) {
  struct Job {
    Slice slice;
    std::size_t replication;
  };
  std::vector<Job> jobs;
  for (const auto& slice : config.slices(budget)) {
    slice.validate();
    for (std::size_t r = 0; r < config.replications; ++r) jobs.push_back({slice, r});
  }

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const auto& job = jobs[i];
        const auto fp = job.slice.fingerprint();
        const auto path = options.records_dir.empty() ? std::filesystem::path()
                                                      : record_path(options.records_dir, fp, job.replication);
        if (!path.empty() && options.reuse_existing && std::filesystem::exists(path)) {
          records[i] = read_record(path);
          continue;
        }
        records[i] = run_single(job.slice, derive_seed(config.base_seed, fp, job.replication), job.replication);
        if (!path.empty()) write_record(path, records[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(jobs.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::vector<RunRecord> load_records(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::exists(dir)) return {};
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::vector<RunRecord> records;
  records.reserve(files.size());
  for (const auto& f : files) records.push_back(read_record(f));
  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    if (a.fingerprint != b.fingerprint) return a.fingerprint < b.fingerprint;
    return a.replication < b.replication;
  });
  return records;
}

}  // namespace arb
