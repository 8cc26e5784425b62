// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "arb/rng.hpp"
#include "arb/types.hpp"

namespace arb {

enum class NoiseKind { none, gaussian, chisq };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

/// Additive noise law: Y_t = g_t(x) + sigma * eps with E[eps] = 0, Var[eps] = 1.
///
/// Draw consumption per objective: none 0 uniforms, gaussian 2 uniforms,
/// chisq(k) 2k uniforms (k squared standard normals).
struct NoiseLaw {
  NoiseKind kind = NoiseKind::none;
  int df = 1;          // degrees of freedom, chisq only
  double sigma = 0.0;  // constant noise scale

  /// Standardized draw: N(0,1) or (chi2_k - k) / sqrt(2k).
  double standardized(Rng& rng) const;
  /// Noise scale at x. Only homoscedastic (constant) noise is supported.
  double scale_at(std::span<const double> /*x*/) const { return sigma; }
  void validate() const;
};

/// Deterministic bi-objective mean function plus an additive noise law.
struct NoisyProblem {
  std::string name;
  Bounds bounds;
  std::size_t objectives = 2;
  std::function<ObjectiveVector(std::span<const double>)> mean_fn;
  NoiseLaw noise;
  /// n points of the analytic Pareto front, evenly spaced in f1.
  std::function<std::vector<ObjectiveVector>(std::size_t)> pf_sampler;

  [[nodiscard]] std::size_t dim() const { return bounds.dim(); }
};

/// CEC 2009 unconstrained bi-objective test functions (D >= 3).
ObjectiveVector uf1(std::span<const double> x);
ObjectiveVector uf2(std::span<const double> x);
ObjectiveVector uf3(std::span<const double> x);

/// Builds "UF1", "UF2" or "UF3" with the given dimension and noise.
NoisyProblem make_problem(const std::string& name, std::size_t dim, NoiseLaw noise);

/// One noisy evaluation: mean_fn(x) + sigma * eps, fresh eps per objective.
ObjectiveVector evaluate_noisy(const NoisyProblem& problem, std::span<const double> x, Rng& rng);

/// n >= 2 points of the true Pareto front.
std::vector<ObjectiveVector> sample_true_pf(const NoisyProblem& problem, std::size_t n);

/// Default noise scale grid.
std::vector<double> default_sigma_grid();

}  // namespace arb
