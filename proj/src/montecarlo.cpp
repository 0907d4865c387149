#include "ahdcov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ahdcov/pathloss.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ahdcov {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExpectedInterferers = 2000.0;
// Early outage exit needs the partial interference to clear the threshold by
// this factor, so the decision matches the full sum despite rounding.
constexpr double kOutageMargin = 1.0 + 1e-12;

// Poisson points on an annulus, outward. In the coordinate A = pi*lambda*r^2
// they form a unit-rate process on the line.
class InterfererStream {
 public:
  InterfererStream(double lambda, double r0, double r_sim)
      : lambda_(lambda), area_(kPi * lambda * r0 * r0), area_max_(kPi * lambda * r_sim * r_sim) {}

  // Next squared radius, or a negative value once the window is exhausted.
  double next_sq(Rng& rng) {
    area_ -= std::log(uniform_open(rng));
    if (area_ > area_max_) return -1.0;
    return area_ / (kPi * lambda_);
  }

 private:
  double lambda_;
  double area_;
  double area_max_;
};

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  return 1;
#endif
}

void check_trials(std::uint64_t trials) {
  if (trials < 1000) throw std::invalid_argument("estimate_cp: need at least 1000 trials");
}

// One trial of the early-exit kernel: true on coverage.
bool covered(const NetworkConfig& cfg, std::uint64_t seed, std::uint64_t trial, double window_scale) {
  Rng rng = trial_rng(seed, trial);
  FadingSampler fading(cfg.fading);
  const double r0 = sample_serving_distance(cfg.lambda, rng);
  const double ahd_sq = cfg.ahd * cfg.ahd;
  const double signal = fading(rng) * cfg.model.gain_sq(r0 * r0, ahd_sq);
  const double outage_level = signal / cfg.tau * kOutageMargin;
  InterfererStream stream(cfg.lambda, r0, simulation_radius(cfg, r0, window_scale));
  double interference = 0.0;
  for (double r_sq = stream.next_sq(rng); r_sq >= 0.0; r_sq = stream.next_sq(rng)) {
    interference += fading(rng) * cfg.model.gain_sq(r_sq, ahd_sq);
    if (interference > outage_level) return false;
  }
  const double sir = interference > 0.0 ? signal / interference : std::numeric_limits<double>::infinity();
  return sir > cfg.tau;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

double uniform_open(Rng& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

double serving_distance_from_uniform(double lambda, double u) {
  return std::sqrt(-std::log(u) / (kPi * lambda));
}

double sample_serving_distance(double lambda, Rng& rng) {
  return serving_distance_from_uniform(lambda, uniform_open(rng));
}

std::vector<double> sample_interferers(double lambda, double r0, double r_sim, Rng& rng) {
  std::vector<double> radii;
  InterfererStream stream(lambda, r0, r_sim);
  for (double r_sq = stream.next_sq(rng); r_sq >= 0.0; r_sq = stream.next_sq(rng)) radii.push_back(std::sqrt(r_sq));
  return radii;
}

FadingSampler::FadingSampler(const FadingModel& model) : model_(model) {
  if (model_.kind == FadingModel::Kind::Rice) {
    shift_ = std::sqrt(model_.nu_nc);
    scale_ = 1.0 / (model_.nu_dof + model_.nu_nc);
    if (model_.nu_dof > 1.0) {
      chi2_rest_ = std::gamma_distribution<double>(0.5 * (model_.nu_dof - 1.0), 2.0);
    }
  }
}

double FadingSampler::operator()(Rng& rng) {
  if (model_.kind == FadingModel::Kind::Rayleigh) return -std::log(uniform_open(rng));
  // Noncentral chi-square: one shifted squared normal plus a central
  // chi-square with the remaining degrees of freedom.
  const double z = normal_(rng) + shift_;
  double h = z * z;
  if (model_.nu_dof > 1.0) h += chi2_rest_(rng);
  return h * scale_;
}

double simulation_radius(const NetworkConfig& cfg, double r0, double window_scale) {
  const double r = std::max({std::sqrt(kExpectedInterferers / (kPi * cfg.lambda)), 5.0 * cfg.model.last_breakpoint(),
                             10.0 * cfg.ahd, 2.0 * r0});
  return r * window_scale;
}

Realization simulate_realization(const NetworkConfig& cfg, Rng& rng, double window_scale) {
  FadingSampler fading(cfg.fading);
  Realization out;
  out.serving_r2d = sample_serving_distance(cfg.lambda, rng);
  const double ahd_sq = cfg.ahd * cfg.ahd;
  const double signal = fading(rng) * cfg.model.gain_sq(out.serving_r2d * out.serving_r2d, ahd_sq);
  InterfererStream stream(cfg.lambda, out.serving_r2d, simulation_radius(cfg, out.serving_r2d, window_scale));
  double interference = 0.0;
  for (double r_sq = stream.next_sq(rng); r_sq >= 0.0; r_sq = stream.next_sq(rng)) {
    out.interferer_r2ds.push_back(std::sqrt(r_sq));
    interference += fading(rng) * cfg.model.gain_sq(r_sq, ahd_sq);
  }
  out.sir = interference > 0.0 ? signal / interference : std::numeric_limits<double>::infinity();
  return out;
}

double sir_realization(const NetworkConfig& cfg, Rng& rng) { return simulate_realization(cfg, rng).sir; }

CpEstimate make_cp_estimate(std::uint64_t hits, std::uint64_t trials, std::uint64_t seed) {
  CpEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.mean = static_cast<double>(hits) / static_cast<double>(trials);
  est.ci95_halfwidth = 1.96 * std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
  return est;
}

CpEstimate estimate_cp(const NetworkConfig& cfg, std::uint64_t trials, std::uint64_t seed, const McOptions& opts) {
  cfg.validate();
  check_trials(trials);
  const auto n = static_cast<std::int64_t>(trials);
  std::int64_t hits = 0;
  [[maybe_unused]] const int threads = resolve_threads(opts.threads);
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : hits) num_threads(threads)
  for (std::int64_t t = 0; t < n; ++t) {
    if (covered(cfg, seed, static_cast<std::uint64_t>(t), opts.window_scale)) ++hits;
  }
  return make_cp_estimate(static_cast<std::uint64_t>(hits), trials, seed);
}

StEstimate estimate_st(const NetworkConfig& cfg, std::uint64_t trials, std::uint64_t seed, const McOptions& opts) {
  StEstimate out;
  out.cp = estimate_cp(cfg, trials, seed, opts);
  const double factor = cfg.lambda * std::log2(1.0 + cfg.tau);
  out.mean = factor * out.cp.mean;
  out.ci95_halfwidth = factor * out.cp.ci95_halfwidth;
  return out;
}

namespace reference {

CpEstimate estimate_cp(const NetworkConfig& cfg, std::uint64_t trials, std::uint64_t seed, const McOptions& opts) {
  cfg.validate();
  check_trials(trials);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    if (simulate_realization(cfg, rng, opts.window_scale).sir > cfg.tau) ++hits;
  }
  return make_cp_estimate(hits, trials, seed);
}

}  // namespace reference
}  // namespace ahdcov
