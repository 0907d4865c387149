#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ahdcov/network.hpp"

// Brute-force SIR simulation of the typical downlink user.
//
// Each trial draws the serving (nearest) BS distance from the contact
// distribution, then the remaining BSs as a Poisson process on the annulus
// beyond it, generated outward in order of distance. Trials use independent
// generator streams keyed by (seed, trial index), so estimates do not depend
// on thread count or scheduling.

namespace ahdcov {

using Rng = std::mt19937_64;

/// Generator for one trial; a pure function of (seed, trial).
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Uniform on the open interval (0, 1).
double uniform_open(Rng& rng);

/// Inverse-CDF map of u in (0, 1] to a contact distance: sqrt(-ln(u) / (pi lambda)).
double serving_distance_from_uniform(double lambda, double u);
double sample_serving_distance(double lambda, Rng& rng);

/// Radii of a density-lambda Poisson process on the annulus (r0, r_sim],
/// in increasing order.
std::vector<double> sample_interferers(double lambda, double r0, double r_sim, Rng& rng);

/// Channel power gain with unit mean.
class FadingSampler {
 public:
  explicit FadingSampler(const FadingModel& model);
  double operator()(Rng& rng);

 private:
  FadingModel model_;
  double shift_ = 0.0;
  double scale_ = 1.0;
  std::normal_distribution<double> normal_;
  std::gamma_distribution<double> chi2_rest_;
};

struct McOptions {
  /// Multiplies the simulation window radius; 2 is used to measure truncation bias.
  double window_scale = 1.0;
  /// OpenMP thread count, 0 for the runtime default.
  int threads = 0;
};

/// Window radius for a trial: max(sqrt(2000/(pi lambda)), 5 R_{N-1}, 10 ahd, 2 r0).
double simulation_radius(const NetworkConfig& cfg, double r0, double window_scale = 1.0);

struct Realization {
  double serving_r2d = 0.0;
  std::vector<double> interferer_r2ds;
  /// +inf when no interferer fell in the window.
  double sir = 0.0;
};

Realization simulate_realization(const NetworkConfig& cfg, Rng& rng, double window_scale = 1.0);
double sir_realization(const NetworkConfig& cfg, Rng& rng);

struct CpEstimate {
  double mean = 0.0;
  std::uint64_t trials = 0;
  double ci95_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

struct StEstimate {
  double mean = 0.0;
  double ci95_halfwidth = 0.0;
  CpEstimate cp;
};

/// Fraction of trials with SIR > tau. trials >= 1000. OpenMP-parallel over
/// trials; stops summing interference once a trial is already in outage.
CpEstimate estimate_cp(const NetworkConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                       const McOptions& opts = {});

/// lambda * CP * log2(1 + tau) with the CP interval scaled accordingly.
StEstimate estimate_st(const NetworkConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                       const McOptions& opts = {});

/// Builds an estimate from a hit count.
CpEstimate make_cp_estimate(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed);

namespace reference {

/// Serial estimator that materializes every realization in full. Produces
/// the same hit count as ahdcov::estimate_cp for the same inputs.
CpEstimate estimate_cp(const NetworkConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                       const McOptions& opts = {});

}  // namespace reference
}  // namespace ahdcov
