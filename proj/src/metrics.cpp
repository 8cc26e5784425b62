// SPDX-License-Identifier: Apache-2.0
#include "arb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arb/dominance.hpp"

namespace arb {
namespace {

std::vector<ObjectiveVector> true_means(std::span<const EvaluatedPoint> points, const NoisyProblem& problem) {
  std::vector<ObjectiveVector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(problem.mean_fn(p.decision()));
  return out;
}

}  // namespace

void MetricParams::validate() const {
  if (!(nadir_delta >= 0.0)) throw ConfigError("nadir delta must be >= 0");
  if (pf_sample_size < 2) throw ConfigError("true front sample needs at least two points");
  if (!(igd_power >= 1.0)) throw ConfigError("IGD power must be >= 1");
}

std::vector<EvaluatedPoint> true_nondominated_filter(std::span<const EvaluatedPoint> returned,
                                                     const NoisyProblem& problem) {
  const auto mu = true_means(returned, problem);
  std::vector<EvaluatedPoint> kept;
  for (std::size_t i : nondominated_indices(mu)) kept.push_back(returned[i]);
  return kept;
}

double hypervolume(std::span<const ObjectiveVector> set, std::span<const double> nadir) {
  if (nadir.size() != 2) throw UsageError("hypervolume is implemented for two objectives");
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : set) {
    if (s.size() != 2) throw UsageError("hypervolume point dimension differs from the nadir");
    if (s[0] < nadir[0] && s[1] < nadir[1]) pts.emplace_back(s[0], s[1]);
  }
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double ceiling = nadir[1];
  for (const auto& [f1, f2] : pts) {
    if (f2 < ceiling) {
      area += (nadir[0] - f1) * (ceiling - f2);
      ceiling = f2;
    }
  }
  return area;
}

ObjectiveVector problem_nadir(const NoisyProblem& problem, double delta, std::size_t pf_sample_size) {
  const auto pf = sample_true_pf(problem, pf_sample_size);
  ObjectiveVector nadir(pf.front().size(), -std::numeric_limits<double>::infinity());
  for (const auto& u : pf) {
    for (std::size_t t = 0; t < u.size(); ++t) nadir[t] = std::max(nadir[t], u[t]);
  }
  for (double& v : nadir) v *= 1.0 + delta;
  return nadir;
}

double hv_normalized(std::span<const EvaluatedPoint> returned, const NoisyProblem& problem,
                     std::span<const double> nadir, std::size_t pf_sample_size) {
  const double reference = hypervolume(sample_true_pf(problem, pf_sample_size), nadir);
  if (!(reference > 0.0)) throw ConfigError("true front has zero hypervolume under this nadir");
  const auto filtered = true_nondominated_filter(returned, problem);
  return hypervolume(true_means(filtered, problem), nadir) / reference;
}

double igd_p(std::span<const ObjectiveVector> set, std::span<const ObjectiveVector> pf, double p) {
  if (set.empty() || pf.empty()) throw UsageError("IGD needs a nonempty set and front sample");
  double total = 0.0;
  for (const auto& u : pf) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : set) {
      double d2 = 0.0;
      for (std::size_t t = 0; t < u.size(); ++t) d2 += (u[t] - s[t]) * (u[t] - s[t]);
      best = std::min(best, d2);
    }
    total += std::pow(std::sqrt(best), p);
  }
  return std::pow(total / static_cast<double>(pf.size()), 1.0 / p);
}

MetricReport evaluate_metrics(std::span<const EvaluatedPoint> returned, const NoisyProblem& problem,
                              const MetricParams& params) {
  params.validate();
  MetricReport report;
  report.p = params.igd_power;
  report.pf_sample_size = params.pf_sample_size;
  const auto pf = sample_true_pf(problem, params.pf_sample_size);
  report.nadir = problem_nadir(problem, params.nadir_delta, params.pf_sample_size);
  const double reference = hypervolume(pf, report.nadir);
  if (!(reference > 0.0)) throw ConfigError("true front has zero hypervolume under this nadir");

  const auto filtered = true_nondominated_filter(returned, problem);
  report.filtered_size = filtered.size();
  const auto mu = true_means(filtered, problem);
  report.hv_raw = hypervolume(mu, report.nadir);
  report.hv_normalized = report.hv_raw / reference;
  report.igd_p = mu.empty() ? std::numeric_limits<double>::infinity() : igd_p(mu, pf, params.igd_power);
  return report;
}

}  // namespace arb
