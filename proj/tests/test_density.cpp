#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ahdcov/analytic.hpp"
#include "ahdcov/density.hpp"
#include "ahdcov/special.hpp"
#include "doctest.h"

using namespace ahdcov;

namespace {

double cp_ss(double alpha, double tau, double ahd, double lambda) {
  NetworkConfig cfg;
  cfg.model = PathlossModel::single_slope(alpha);
  cfg.tau = tau;
  cfg.ahd = ahd;
  cfg.lambda = lambda;
  return cp_sspm(cfg);
}

}  // namespace

TEST_CASE("requirement must be a probability") {
  CHECK_THROWS_AS(QosConstraint(0.0), std::domain_error);
  CHECK_THROWS_AS(QosConstraint(1.0), std::domain_error);
  CHECK_NOTHROW(QosConstraint(0.5));
}

TEST_CASE("necessary condition") {
  CHECK(necessary_condition(5.0, 1.0, QosConstraint(0.5)));
  CHECK_FALSE(necessary_condition(5.0, 1.0, QosConstraint(1.0 - 1e-12)));
  const double c1 = interference_constant(1.0, 5.0);
  // Strict inequality: the boundary itself is infeasible, up to rounding of 1/eps - 1.
  CHECK_FALSE(necessary_condition(5.0, 1.0, QosConstraint(std::nextafter(1.0 / (1.0 + c1), 1.0))));
  CHECK(necessary_condition(5.0, 1.0, QosConstraint(std::nextafter(1.0 / (1.0 + c1), 0.0) - 1e-15)));
  CHECK_THROWS_AS(necessary_condition(2.0, 1.0, QosConstraint(0.5)), std::domain_error);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ue(0.01, 0.99);
  for (int i = 0; i < 500; ++i) {
    double e1 = ue(rng), e2 = ue(rng);
    if (e1 > e2) std::swap(e1, e2);
    if (!necessary_condition(4.0, 1.0, QosConstraint(e1))) CHECK_FALSE(necessary_condition(4.0, 1.0, QosConstraint(e2)));
  }
}

TEST_CASE("closed-form critical densities") {
  const double dagger = lambda_dagger(5.0, 1.0, 2.0);
  CHECK(dagger == doctest::Approx(0.156801932184445594).epsilon(1e-12));
  CHECK(dagger == doctest::Approx(3.0 / (8.0 * std::numbers::pi * omega1(1.0, 5.0))).epsilon(1e-14));
  const auto star = lambda_star(5.0, 1.0, 2.0, QosConstraint(0.5));
  REQUIRE(star);
  CHECK(dagger / *star == doctest::Approx(3.53741313608593588).epsilon(1e-12));
  CHECK(dagger / *lambda_star(5.0, 1.0, 2.0, QosConstraint(0.6)) == doctest::Approx(9.96304734286498920).epsilon(1e-12));
  CHECK_FALSE(lambda_star(5.0, 1.0, 2.0, QosConstraint(0.7)));
  CHECK_THROWS_AS(lambda_star(5.0, 1.0, 0.0, QosConstraint(0.5)), std::domain_error);
  CHECK_THROWS_AS(lambda_dagger(5.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("coverage at lambda_star equals the requirement") {
  for (double eps : {0.1, 0.3, 0.5, 0.6}) {
    for (double ahd : {0.5, 2.0, 8.0}) {
      const auto star = lambda_star(5.0, 1.0, ahd, QosConstraint(eps));
      REQUIRE(star);
      CHECK(cp_ss(5.0, 1.0, ahd, *star) == doctest::Approx(eps).epsilon(1e-9));
    }
  }
  // Just inside the feasible region lambda_star is tiny.
  const double c1 = interference_constant(1.0, 5.0);
  const auto edge = lambda_star(5.0, 1.0, 2.0, QosConstraint(1.0 / (1.0 + c1) - 1e-9));
  REQUIRE(edge);
  CHECK(*edge < 1e-8);
}

TEST_CASE("height difference scaling") {
  const double d1 = lambda_dagger(4.0, 1.0, 1.0);
  CHECK(lambda_dagger(4.0, 1.0, 2.0) == doctest::Approx(d1 / 4.0).epsilon(1e-14));
  double ratio_ref = 0.0, star_ref = 0.0, dagger_ref = 0.0;
  for (double ahd : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double dagger = lambda_dagger(5.0, 1.0, ahd);
    const double star = *lambda_star(5.0, 1.0, ahd, QosConstraint(0.5));
    if (ratio_ref == 0.0) {
      ratio_ref = dagger / star;
      star_ref = star * ahd * ahd;
      dagger_ref = dagger * ahd * ahd;
    }
    CHECK(dagger / star == doctest::Approx(ratio_ref).epsilon(1e-9));
    CHECK(star * ahd * ahd == doctest::Approx(star_ref).epsilon(1e-9));
    CHECK(dagger * ahd * ahd == doctest::Approx(dagger_ref).epsilon(1e-9));
  }
}

TEST_CASE("lambda_dagger falls as the threshold rises") {
  double prev = lambda_dagger(4.0, 0.1, 2.0);
  for (double tau = 0.2; tau < 20.0; tau *= 1.5) {
    const double v = lambda_dagger(4.0, tau, 2.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("lambda_dagger maximizes throughput") {
  const double dagger = lambda_dagger(5.0, 1.0, 2.0);
  auto st_at = [&](double l) { return l * cp_ss(5.0, 1.0, 2.0, l); };
  const double h = 1e-4 * dagger;
  const double slope = (st_at(dagger + h) - st_at(dagger - h)) / (2 * h);
  CHECK(std::abs(slope) <= 1e-6 * st_at(dagger) / dagger);
  double best = 0.0, best_lambda = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double l = dagger * std::pow(10.0, -1.0 + i / 2000.0);
    if (st_at(l) > best) {
      best = st_at(l);
      best_lambda = l;
    }
  }
  CHECK(best_lambda == doctest::Approx(dagger).epsilon(0.01));
}

TEST_CASE("numeric search reproduces the closed forms") {
  const auto m = PathlossModel::single_slope(5.0);
  for (double ahd : {1.0, 2.0, 6.0}) {
    CHECK(*critical_density_numeric(m, ahd, 1.0, std::nullopt) ==
          doctest::Approx(lambda_dagger(5.0, 1.0, ahd)).epsilon(0.01));
    CHECK(*critical_density_numeric(m, ahd, 1.0, QosConstraint(0.5)) ==
          doctest::Approx(*lambda_star(5.0, 1.0, ahd, QosConstraint(0.5))).epsilon(0.01));
  }
  CHECK_FALSE(critical_density_numeric(m, 2.0, 1.0, QosConstraint(0.7)));
  CHECK_THROWS_AS(critical_density_numeric(m, 0.0, 1.0, std::nullopt), std::domain_error);
}

TEST_CASE("dual-slope critical densities fall with height difference") {
  const auto m = PathlossModel::dual_slope(1.5, 5.0, 10.0);
  const auto at2 = critical_density_numeric(m, 2.0, 1.0, QosConstraint(0.5));
  REQUIRE(at2);
  CHECK(std::isfinite(*at2));
  double prev_star = 1e300, prev_dagger = 1e300;
  for (double ahd : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double star = *critical_density_numeric(m, ahd, 1.0, QosConstraint(0.5));
    const double dagger = *critical_density_numeric(m, ahd, 1.0, std::nullopt);
    CAPTURE(ahd);
    CHECK(star < prev_star);
    // Past the breakpoint the throughput peak moves back up (next case).
    if (ahd < 10.0) CHECK(dagger < prev_dagger);
    CHECK(star <= dagger * (1.0 + 1e-12));
    prev_star = star;
    prev_dagger = dagger;
  }
  CHECK_FALSE(critical_density_numeric(m, 2.0, 1.0, QosConstraint(1.0 - 1e-9)));
}

TEST_CASE("dual-slope throughput peak turns up beyond the breakpoint") {
  const auto m = PathlossModel::dual_slope(1.5, 5.0, 10.0);
  const double at8 = *critical_density_numeric(m, 8.0, 1.0, std::nullopt);
  const double at16 = *critical_density_numeric(m, 16.0, 1.0, std::nullopt);
  const double at24 = *critical_density_numeric(m, 24.0, 1.0, std::nullopt);
  CHECK(at16 > at8 * 1.05);
  CHECK(at24 > at16 * 1.02);
}
