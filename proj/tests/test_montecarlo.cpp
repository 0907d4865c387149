#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ahdcov/analytic.hpp"
#include "ahdcov/montecarlo.hpp"
#include "doctest.h"

using namespace ahdcov;

namespace {

NetworkConfig make(const PathlossModel& m, double lambda, double ahd, double tau = 1.0) {
  NetworkConfig cfg;
  cfg.model = m;
  cfg.lambda = lambda;
  cfg.ahd = ahd;
  cfg.tau = tau;
  return cfg;
}

}  // namespace

TEST_CASE("trial streams are pure functions of seed and trial") {
  Rng a = trial_rng(42, 7), b = trial_rng(42, 7), c = trial_rng(42, 8), d = trial_rng(43, 7);
  const auto first = a();
  CHECK(first == b());
  CHECK(first != c());
  CHECK(first != d());
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform_open(a);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("contact distance") {
  CHECK(serving_distance_from_uniform(1e-4, 1.0) == 0.0);
  const double lambda = 1e-4;
  Rng rng = trial_rng(1, 0);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_serving_distance(lambda, rng);
  CHECK(sum / n == doctest::Approx(0.5 / std::sqrt(lambda)).epsilon(0.005));

  // Kolmogorov-Smirnov against 1 - exp(-pi lambda r^2).
  const int m = 100000;
  std::vector<double> r(m);
  for (auto& v : r) v = sample_serving_distance(lambda, rng);
  std::sort(r.begin(), r.end());
  double ks = 0.0;
  for (int i = 0; i < m; ++i) {
    const double cdf = -std::expm1(-std::numbers::pi * lambda * r[i] * r[i]);
    ks = std::max({ks, std::abs(cdf - double(i) / m), std::abs(cdf - double(i + 1) / m)});
  }
  CHECK(ks < 1.63 / std::sqrt(double(m)));
}

TEST_CASE("interferers on the annulus") {
  Rng rng = trial_rng(2, 0);
  CHECK(sample_interferers(1e-4, 50.0, 50.0, rng).empty());
  double count = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto radii = sample_interferers(1e-4, 0.0, 1000.0, rng);
    count += radii.size();
    CHECK(std::is_sorted(radii.begin(), radii.end()));
    for (double x : radii) {
      CHECK(x > 0.0);
      CHECK(x <= 1000.0);
    }
  }
  CHECK(count / draws == doctest::Approx(std::numbers::pi * 100.0).epsilon(0.02));
}

TEST_CASE("fading has unit mean") {
  for (const auto& f : {FadingModel::rayleigh(), FadingModel::rice(1.0, 12.0)}) {
    FadingSampler sampler(f);
    Rng rng = trial_rng(3, 0);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sampler(rng);
    CHECK(sum / n >= 0.997);
    CHECK(sum / n <= 1.003);
  }
}

TEST_CASE("realizations respect nearest-BS association") {
  const auto cfg = make(PathlossModel({1.5, 3.0, 4.5}, {10.0, 50.0}), 1e-3, 4.0);
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng = trial_rng(4, t);
    const auto real = simulate_realization(cfg, rng);
    CHECK(real.sir > 0.0);
    for (double r : real.interferer_r2ds) CHECK(r > real.serving_r2d);
  }
}

TEST_CASE("window radius") {
  const auto cfg = make(PathlossModel::dual_slope(1.5, 4.0, 10.0), 1e-3, 8.5);
  CHECK(simulation_radius(cfg, 1.0) == doctest::Approx(std::sqrt(2000.0 / (std::numbers::pi * 1e-3))));
  CHECK(simulation_radius(cfg, 1000.0) == 2000.0);
  CHECK(simulation_radius(make(PathlossModel::dual_slope(1.5, 4.0, 10.0), 10.0, 8.5), 0.0) == 85.0);
  CHECK(simulation_radius(cfg, 1.0, 2.0) == doctest::Approx(2.0 * simulation_radius(cfg, 1.0)));
}

TEST_CASE("single-slope Monte Carlo covers the closed form") {
  for (double ahd : {0.0, 8.5}) {
    const auto cfg = make(PathlossModel::single_slope(4.0), 1e-4, ahd);
    const auto est = estimate_cp(cfg, 100000, 5);
    CAPTURE(ahd);
    CHECK(std::abs(est.mean - cp_sspm(cfg)) <= est.ci95_halfwidth);
  }
}

TEST_CASE("estimate bookkeeping") {
  const auto e = make_cp_estimate(250, 1000, 9);
  CHECK(e.mean == 0.25);
  CHECK(e.trials == 1000);
  CHECK(e.seed == 9);
  CHECK(e.ci95_halfwidth == doctest::Approx(1.96 * std::sqrt(0.25 * 0.75 / 1000)));
  CHECK_THROWS_AS(estimate_cp(make(PathlossModel::single_slope(4.0), 1e-4, 0.0), 999, 1), std::invalid_argument);

  const auto cfg = make(PathlossModel::single_slope(4.0), 1e-4, 0.0, 3.0);
  const auto s = estimate_st(cfg, 2000, 1);
  CHECK(s.mean == doctest::Approx(cfg.lambda * s.cp.mean * 2.0));
  CHECK(s.ci95_halfwidth == doctest::Approx(cfg.lambda * s.cp.ci95_halfwidth * 2.0));
}

TEST_CASE("tiny thresholds give full coverage") {
  const auto est = estimate_cp(make(PathlossModel::single_slope(4.0), 1e-3, 2.0, 1e-9), 2000, 1);
  CHECK(est.mean == 1.0);
}

TEST_CASE("parallel kernel matches the serial reference") {
  const PathlossModel models[] = {PathlossModel::single_slope(4.0), PathlossModel::dual_slope(1.5, 4.0, 10.0),
                                  PathlossModel({1.5, 3.0, 4.5}, {10.0, 50.0})};
  for (const auto& m : models) {
    for (double ahd : {0.0, 4.5}) {
      auto cfg = make(m, 1e-3, ahd);
      const auto fast = estimate_cp(cfg, 3000, 77);
      const auto slow = reference::estimate_cp(cfg, 3000, 77);
      CAPTURE(m.id());
      CHECK(fast.mean == slow.mean);
      cfg.fading = FadingModel::rice(1.0, 12.0);
      CHECK(estimate_cp(cfg, 1000, 78).mean == reference::estimate_cp(cfg, 1000, 78).mean);
    }
  }
}

TEST_CASE("estimates do not depend on thread count or transmit power") {
  auto cfg = make(PathlossModel::dual_slope(1.5, 4.0, 10.0), 1e-3, 2.0);
  const auto one = estimate_cp(cfg, 5000, 3, {1.0, 1});
  const auto four = estimate_cp(cfg, 5000, 3, {1.0, 4});
  CHECK(one.mean == four.mean);
  cfg.power = 99.0;
  CHECK(estimate_cp(cfg, 5000, 3, {1.0, 3}).mean == one.mean);
}

TEST_CASE("equal links give unit SIR") {
  // One interferer at the serving distance with the same fading draw.
  const auto m = PathlossModel::single_slope(4.0);
  const double g0 = gain(m, {25.0, 0.0});
  const double g1 = gain(m, {25.0, 0.0});
  CHECK(g0 / g1 == 1.0);
  // A huge height difference makes every link the same length.
  const double near = gain(m, {1.0, 1e6}), far = gain(m, {100.0, 1e6});
  CHECK(near / far == doctest::Approx(1.0).epsilon(1e-7));
}
