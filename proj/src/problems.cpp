// SPDX-License-Identifier: Apache-2.0
#include "arb/problems.hpp"

#include <cmath>
#include <numbers>

namespace arb {
namespace {

constexpr double pi = std::numbers::pi;

void check_dim(std::span<const double> x) {
  if (x.size() < 3) throw UsageError("UF functions need at least 3 decision variables");
}

// Shared front f2 = 1 - sqrt(f1), f1 in [0, 1].
std::vector<ObjectiveVector> uf_front(std::size_t n) {
  if (n < 2) throw UsageError("a Pareto front sample needs n >= 2");
  std::vector<ObjectiveVector> pf;
  pf.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f1 = static_cast<double>(i) / static_cast<double>(n - 1);
    pf.push_back({f1, 1.0 - std::sqrt(f1)});
  }
  return pf;
}

}  // namespace

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::chisq: return "chisq";
  }
  return "none";
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "none") return NoiseKind::none;
  if (name == "gaussian") return NoiseKind::gaussian;
  if (name == "chisq") return NoiseKind::chisq;
  throw ConfigError("unknown noise kind '" + name + "'");
}

double NoiseLaw::standardized(Rng& rng) const {
  switch (kind) {
    case NoiseKind::none:
      return 0.0;
    case NoiseKind::gaussian:
      return rng.normal();
    case NoiseKind::chisq: {
      double chi2 = 0.0;
      for (int i = 0; i < df; ++i) {
        const double z = rng.normal();
        chi2 += z * z;
      }
      return (chi2 - df) / std::sqrt(2.0 * df);
    }
  }
  return 0.0;
}

void NoiseLaw::validate() const {
  if (kind == NoiseKind::chisq && df < 1) throw ConfigError("chisq noise needs df >= 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("noise sigma must be finite and >= 0");
}

ObjectiveVector uf1(std::span<const double> x) {
  check_dim(x);
  const std::size_t n = x.size();
  double sum1 = 0.0, sum2 = 0.0;
  int count1 = 0, count2 = 0;
  for (std::size_t j = 2; j <= n; ++j) {
    const double y = x[j - 1] - std::sin(6.0 * pi * x[0] + j * pi / n);
    if (j % 2 == 1) {
      sum1 += y * y;
      ++count1;
    } else {
      sum2 += y * y;
      ++count2;
    }
  }
  return {x[0] + 2.0 * sum1 / count1, 1.0 - std::sqrt(x[0]) + 2.0 * sum2 / count2};
}

ObjectiveVector uf2(std::span<const double> x) {
  check_dim(x);
  const std::size_t n = x.size();
  double sum1 = 0.0, sum2 = 0.0;
  int count1 = 0, count2 = 0;
  for (std::size_t j = 2; j <= n; ++j) {
    const double amp =
        0.3 * x[0] * x[0] * std::cos(24.0 * pi * x[0] + 4.0 * j * pi / n) + 0.6 * x[0];
    const double phase = 6.0 * pi * x[0] + j * pi / n;
    if (j % 2 == 1) {
      const double y = x[j - 1] - amp * std::cos(phase);
      sum1 += y * y;
      ++count1;
    } else {
      const double y = x[j - 1] - amp * std::sin(phase);
      sum2 += y * y;
      ++count2;
    }
  }
  return {x[0] + 2.0 * sum1 / count1, 1.0 - std::sqrt(x[0]) + 2.0 * sum2 / count2};
}

ObjectiveVector uf3(std::span<const double> x) {
  check_dim(x);
  const std::size_t n = x.size();
  double sum1 = 0.0, sum2 = 0.0, prod1 = 1.0, prod2 = 1.0;
  int count1 = 0, count2 = 0;
  for (std::size_t j = 2; j <= n; ++j) {
    const double exponent = 0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0));
    const double y = x[j - 1] - std::pow(x[0], exponent);
    const double p = std::cos(20.0 * y * pi / std::sqrt(static_cast<double>(j)));
    if (j % 2 == 1) {
      sum1 += y * y;
      prod1 *= p;
      ++count1;
    } else {
      sum2 += y * y;
      prod2 *= p;
      ++count2;
    }
  }
  return {x[0] + 2.0 / count1 * (4.0 * sum1 - 2.0 * prod1 + 2.0),
          1.0 - std::sqrt(x[0]) + 2.0 / count2 * (4.0 * sum2 - 2.0 * prod2 + 2.0)};
}

NoisyProblem make_problem(const std::string& name, std::size_t dim, NoiseLaw noise) {
  if (dim < 3) throw ConfigError("UF problems need dim >= 3");
  noise.validate();
  NoisyProblem p;
  p.name = name;
  p.noise = noise;
  p.objectives = 2;
  p.pf_sampler = uf_front;
  if (name == "UF1" || name == "UF2") {
    p.bounds.lower.assign(dim, -1.0);
    p.bounds.upper.assign(dim, 1.0);
    p.bounds.lower[0] = 0.0;
    p.mean_fn = name == "UF1" ? uf1 : uf2;
  } else if (name == "UF3") {
    p.bounds.lower.assign(dim, 0.0);
    p.bounds.upper.assign(dim, 1.0);
    p.mean_fn = uf3;
  } else {
    throw ConfigError("unknown problem '" + name + "'");
  }
  return p;
}

ObjectiveVector evaluate_noisy(const NoisyProblem& problem, std::span<const double> x, Rng& rng) {
  if (!problem.bounds.contains(x)) throw UsageError("decision vector outside the problem bounds");
  ObjectiveVector y = problem.mean_fn(x);
  if (problem.noise.kind == NoiseKind::none) return y;
  const double scale = problem.noise.scale_at(x);
  for (double& v : y) v += scale * problem.noise.standardized(rng);
  return y;
}

std::vector<ObjectiveVector> sample_true_pf(const NoisyProblem& problem, std::size_t n) {
  if (n < 2) throw UsageError("a Pareto front sample needs n >= 2");
  return problem.pf_sampler(n);
}

std::vector<double> default_sigma_grid() { return {0.01, 0.1, 0.5, 1.0, std::sqrt(2.0), 2.0}; }

}  // namespace arb
