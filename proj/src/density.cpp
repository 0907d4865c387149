#include "ahdcov/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ahdcov/special.hpp"

namespace ahdcov {
namespace {

constexpr double kPi = std::numbers::pi;

void check_sspm_inputs(double alpha0, double tau) {
  if (!(alpha0 > 2.0)) throw std::domain_error("density: exponent must exceed 2");
  if (!(tau > 0.0)) throw std::domain_error("density: SIR threshold must be positive");
}

void check_ahd(double ahd) {
  if (!(ahd > 0.0)) {
    throw std::domain_error("density: critical density is unbounded without an antenna height difference");
  }
}

// Analytic CP along a density sweep with fixed geometry.
class Profile {
 public:
  Profile(const PathlossModel& model, double ahd, double tau, const AnalyticOptions& opts) : opts_(opts) {
    cfg_.model = model;
    cfg_.ahd = ahd;
    cfg_.tau = tau;
    rate_ = std::log2(1.0 + tau);
  }

  double cp(double lambda) {
    cfg_.lambda = lambda;
    switch (cfg_.model.segments()) {
      case 1:
        return cp_sspm(cfg_);
      case 2:
        return cp_dspm(cfg_, opts_);
      default:
        return cp_mspm(cfg_, opts_);
    }
  }

  double st(double lambda) { return lambda * cp(lambda) * rate_; }

 private:
  NetworkConfig cfg_;
  AnalyticOptions opts_;
  double rate_ = 1.0;
};

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out(points);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = lo * std::exp(step * i);
  return out;
}

int count_slope_changes(const std::vector<double>& values) {
  const double peak = *std::max_element(values.begin(), values.end());
  const double noise = 1e-9 * std::abs(peak);
  int changes = 0;
  int last_sign = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double diff = values[i] - values[i - 1];
    if (std::abs(diff) <= noise) continue;
    const int sign = diff > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

// Maximizer of ST over log(lambda).
double st_peak(Profile& profile, double start, const SearchOptions& opts) {
  const double step = std::log(2.0);
  double x = std::log(start);
  double f = profile.st(start);
  double x_up = x + step;
  double f_up = profile.st(std::exp(x_up));
  double lo, hi;
  if (f_up >= f) {
    // Double until ST turns down.
    double x_prev = x;
    while (f_up >= f) {
      x_prev = x;
      x = x_up;
      f = f_up;
      x_up = x + step;
      if (std::exp(x_up) > opts.lambda_max) {
        throw std::domain_error("critical density: spatial throughput keeps growing up to the density cap (unbounded)");
      }
      f_up = profile.st(std::exp(x_up));
    }
    lo = x_prev;
    hi = x_up;
  } else {
    double x_down = x - step;
    double f_down = profile.st(std::exp(x_down));
    while (f_down > f) {
      x_up = x;
      x = x_down;
      f = f_down;
      x_down = x - step;
      if (std::exp(x_down) < 1e-300) throw std::runtime_error("critical density: no maximum found");
      f_down = profile.st(std::exp(x_down));
    }
    lo = x_down;
    hi = x_up;
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = profile.st(std::exp(c));
  double fd = profile.st(std::exp(d));
  const double width = 0.1 * std::log1p(opts.rel_tol);
  while (hi - lo > width) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = profile.st(std::exp(c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = profile.st(std::exp(d));
    }
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

QosConstraint::QosConstraint(double eps) : epsilon(eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("QoS: coverage requirement must lie in (0, 1), got " + std::to_string(eps));
  }
}

bool necessary_condition(double alpha0, double tau, const QosConstraint& qos) {
  check_sspm_inputs(alpha0, tau);
  return interference_constant(tau, alpha0) < 1.0 / qos.epsilon - 1.0;
}

std::optional<double> lambda_star(double alpha0, double tau, double ahd, const QosConstraint& qos) {
  check_sspm_inputs(alpha0, tau);
  check_ahd(ahd);
  if (!necessary_condition(alpha0, tau, qos)) return std::nullopt;
  const double c1 = interference_constant(tau, alpha0);
  return lambda_dagger(alpha0, tau, ahd) * std::log(1.0 / (qos.epsilon * (1.0 + c1)));
}

double lambda_dagger(double alpha0, double tau, double ahd) {
  check_sspm_inputs(alpha0, tau);
  check_ahd(ahd);
  return (alpha0 - 2.0) / (2.0 * kPi * tau * omega1(tau, alpha0) * ahd * ahd);
}

std::optional<double> critical_density_numeric(const PathlossModel& model, double ahd, double tau,
                                               std::optional<QosConstraint> qos, const SearchOptions& opts) {
  if (!(ahd >= 0.0)) throw std::domain_error("critical density: antenna height difference must be >= 0");
  if (!(tau > 0.0)) throw std::domain_error("critical density: SIR threshold must be positive");
  Profile profile(model, ahd, tau, opts.analytic);

  const double scale = std::max({ahd, model.last_breakpoint(), 1.0});
  const double start = 1.0 / (kPi * scale * scale);
  const double peak = st_peak(profile, start, opts);

  std::vector<double> coarse_st;
  for (double lambda : log_grid(peak * 1e-3, peak * 1e3, opts.coarse_points)) coarse_st.push_back(profile.st(lambda));
  if (count_slope_changes(coarse_st) > 1) {
    throw std::runtime_error("critical density: spatial throughput is not unimodal on the coarse grid");
  }
  if (!qos) return peak;

  const auto grid = log_grid(peak * 1e-6, peak * 1e3, opts.coarse_points);
  std::vector<double> coarse_cp;
  for (double lambda : grid) coarse_cp.push_back(profile.cp(lambda));
  const auto best = std::max_element(coarse_cp.begin(), coarse_cp.end());
  if (*best < qos->epsilon) return std::nullopt;

  auto idx = static_cast<std::size_t>(best - coarse_cp.begin());
  while (idx + 1 < grid.size() && coarse_cp[idx + 1] >= qos->epsilon) ++idx;
  if (idx + 1 == grid.size()) return peak;

  // CP crosses epsilon between grid[idx] and grid[idx + 1].
  double lo = std::log(grid[idx]);
  double hi = std::log(grid[idx + 1]);
  const double width = 0.1 * std::log1p(opts.rel_tol);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (profile.cp(std::exp(mid)) >= qos->epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::min(std::exp(lo), peak);
}

}  // namespace ahdcov
