// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "arb/dominance.hpp"
#include "arb/metrics.hpp"
#include "oracles.hpp"

using namespace arb;
using V = std::vector<double>;

namespace {

// Decision vectors are the true objective values.
NoisyProblem identity_problem() {
  NoisyProblem p;
  p.name = "identity";
  p.bounds = {{-5, -5}, {5, 5}};
  p.mean_fn = [](std::span<const double> x) { return ObjectiveVector(x.begin(), x.end()); };
  p.pf_sampler = [](std::size_t n) {
    std::vector<ObjectiveVector> out;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n - 1);
      out.push_back({t, 1.0 - t});
    }
    return out;
  };
  return p;
}

EvaluatedPoint returned(const V& truth, const V& observed, std::uint64_t id) {
  EvaluatedPoint p(truth, id);
  p.add_sample(observed);
  return p;
}

std::vector<V> random_front(Rng& rng, std::size_t n) {
  std::vector<V> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({rng.uniform(), rng.uniform()});
  return out;
}

}  // namespace

TEST_CASE("hypervolume examples") {
  const V nadir{1, 1};
  CHECK(hypervolume(std::vector<V>{{0, 0}}, nadir) == 1.0);
  CHECK(hypervolume(std::vector<V>{{0.5, 0.5}}, nadir) == 0.25);
  CHECK(std::abs(hypervolume(std::vector<V>{{0.2, 0.6}, {0.6, 0.2}}, nadir) - 0.48) <= 1e-12);
  CHECK(std::abs(hypervolume(std::vector<V>{{0.1, 0.8}, {0.4, 0.5}, {0.7, 0.2}}, nadir) - 0.45) <= 1e-12);
  CHECK(hypervolume(std::vector<V>{}, nadir) == 0.0);
  CHECK(hypervolume(std::vector<V>{{1, 0.5}, {2, 0}}, nadir) == 0.0);
}

TEST_CASE("hypervolume errors") {
  CHECK_THROWS_AS(hypervolume(std::vector<V>{{0, 0, 0}}, V{1, 1, 1}), UsageError);
  CHECK_THROWS_AS(hypervolume(std::vector<V>{{0, 0, 0}}, V{1, 1}), UsageError);
}

TEST_CASE("hypervolume of two points agrees with a Monte Carlo estimate") {
  Rng rng(48);
  const std::vector<V> set{{0.2, 0.6}, {0.6, 0.2}};
  CHECK(std::abs(oracle::hv_monte_carlo(set, V{1, 1}, 1000000, rng) - 0.48) < 0.002);
}

TEST_CASE("hypervolume agrees with Monte Carlo on random fronts") {
  Rng rng(1234);
  const V nadir{1.1, 1.1};
  for (int trial = 0; trial < 10; ++trial) {
    const auto set = random_front(rng, 1 + rng.index(30));
    CHECK(std::abs(hypervolume(set, nadir) - oracle::hv_monte_carlo(set, nadir, 1000000, rng)) < 0.002);
  }
}

TEST_CASE("hypervolume is monotone and ignores dominated points") {
  Rng rng(9);
  const V nadir{1.1, 1.1};
  for (int trial = 0; trial < 200; ++trial) {
    auto set = random_front(rng, 1 + rng.index(20));
    const double before = hypervolume(set, nadir);
    std::vector<V> nd;
    for (std::size_t i : oracle::nondominated(set)) nd.push_back(set[i]);
    CHECK(hypervolume(nd, nadir) == doctest::Approx(before).epsilon(1e-12));
    set.push_back({rng.uniform(), rng.uniform()});
    CHECK(hypervolume(set, nadir) >= before - 1e-15);
    const V worse{set[0][0] + 0.01, set[0][1] + 0.01};
    set.push_back(worse);
    const double with_dominated = hypervolume(set, nadir);
    set.pop_back();
    CHECK(with_dominated == doctest::Approx(hypervolume(set, nadir)).epsilon(1e-12));
  }
}

TEST_CASE("IGD examples") {
  const std::vector<V> pf{{0, 0}, {1, 0}};
  CHECK(igd_p(std::vector<V>{{0, 0}}, pf, 1.0) == doctest::Approx(0.5));
  CHECK(igd_p(std::vector<V>{{0, 0}}, pf, 2.0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(igd_p(pf, pf, 2.0) == 0.0);
  CHECK_THROWS_AS(igd_p(std::vector<V>{}, pf, 2.0), UsageError);
  CHECK_THROWS_AS(igd_p(pf, std::vector<V>{}, 2.0), UsageError);
}

TEST_CASE("IGD agrees with the reference formula and shrinks as points are added") {
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pf = random_front(rng, 2 + rng.index(30));
    auto set = random_front(rng, 1 + rng.index(10));
    const double p = 1.0 + rng.index(3);
    const double before = igd_p(set, pf, p);
    CHECK(before == doctest::Approx(oracle::igd(set, pf, p)).epsilon(1e-12));
    CHECK(before > 0.0);
    set.push_back({rng.uniform(), rng.uniform()});
    CHECK(igd_p(set, pf, p) <= before + 1e-15);
    set.insert(set.end(), pf.begin(), pf.end());
    CHECK(igd_p(set, pf, p) == 0.0);
  }
}

TEST_CASE("true-mean filter") {
  const auto problem = identity_problem();
  std::vector<EvaluatedPoint> three{returned({0, 1}, {0, 1}, 0), returned({1, 0}, {1, 0}, 1),
                                    returned({0.5, 0.5}, {0.5, 0.5}, 2)};
  CHECK(true_nondominated_filter(three, problem).size() == 3);

  // Observed means say the opposite of the true means; the filter follows the truth.
  std::vector<EvaluatedPoint> two{returned({0, 0}, {3, 3}, 0), returned({1, 1}, {-3, -3}, 1)};
  const auto kept = true_nondominated_filter(two, problem);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].id() == 0);
}

TEST_CASE("true-mean filter matches the brute-force filter") {
  const auto problem = identity_problem();
  Rng rng(20);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(20);
    std::vector<V> truth;
    std::vector<EvaluatedPoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
      truth.push_back({static_cast<double>(rng.index(5)), static_cast<double>(rng.index(5))});
      pts.push_back(returned(truth.back(), {rng.normal(), rng.normal()}, i));
    }
    std::vector<std::uint64_t> got;
    for (const auto& p : true_nondominated_filter(pts, problem)) got.push_back(p.id());
    const auto expected = oracle::nondominated(truth);
    CHECK(got == std::vector<std::uint64_t>(expected.begin(), expected.end()));
  }
}

TEST_CASE("rank-1 set survives the filter when noise is absent") {
  const auto problem = identity_problem();
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<EvaluatedPoint> pts;
    for (std::size_t i = 0; i < 25; ++i) {
      const V y{rng.uniform(), rng.uniform()};
      pts.push_back(returned(y, y, i));
    }
    const auto ranked = nondominated_sort(pts);
    std::vector<EvaluatedPoint> front;
    for (std::size_t i : ranked.front(1)) front.push_back(ranked.members[i]);
    CHECK(true_nondominated_filter(front, problem).size() == front.size());
  }
}

TEST_CASE("nadir and normalized hypervolume on UF1") {
  const auto problem = make_problem("UF1", 10, {});
  const auto nadir = problem_nadir(problem, 0.1, 1000);
  CHECK(nadir[0] == doctest::Approx(1.1));
  CHECK(nadir[1] == doctest::Approx(1.1));

  // Points on the optimal manifold, one per front sample.
  std::vector<EvaluatedPoint> on_front;
  for (std::size_t i = 0; i < 1000; ++i) {
    const double t = static_cast<double>(i) / 999.0;
    DecisionVector x(10);
    x[0] = t;
    for (std::size_t j = 2; j <= 10; ++j) x[j - 1] = std::sin(6.0 * std::numbers::pi * t + j * std::numbers::pi / 10);
    EvaluatedPoint p(x, i);
    p.add_sample(problem.mean_fn(x));
    on_front.push_back(std::move(p));
  }
  CHECK(hv_normalized(on_front, problem, nadir, 1000) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hv_normalized(std::vector<EvaluatedPoint>{}, problem, nadir, 1000) == 0.0);

  const auto report = evaluate_metrics(on_front, problem, {});
  CHECK(report.hv_normalized == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(report.igd_p < 1e-9);
  CHECK(report.filtered_size == 1000);
  CHECK(report.pf_sample_size == 1000);
  CHECK(report.p == 2.0);

  CHECK_THROWS_AS(hv_normalized(on_front, problem, V{0, 0}, 1000), ConfigError);
}

TEST_CASE("metric parameter validation") {
  CHECK_THROWS_AS((MetricParams{-0.1, 1000, 2}.validate()), ConfigError);
  CHECK_THROWS_AS((MetricParams{0.1, 1, 2}.validate()), ConfigError);
  CHECK_THROWS_AS((MetricParams{0.1, 1000, 0.5}.validate()), ConfigError);
  CHECK_NOTHROW(MetricParams{}.validate());
}
