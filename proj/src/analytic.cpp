#include "ahdcov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ahdcov/special.hpp"

namespace ahdcov {
namespace {

constexpr double kPi = std::numbers::pi;
// ln(1e10): contact-distance mass left beyond the cut is 1e-10 of the mass at lo.
constexpr double kTailLog = 23.025850929940457;
constexpr double kClampSlack = 1e-6;

double finish_cp(double value, const char* who) {
  if (!std::isfinite(value) || value < -kClampSlack || value > 1.0 + kClampSlack) {
    throw std::runtime_error(std::string(who) + ": coverage probability out of range: " + std::to_string(value));
  }
  return std::clamp(value, 0.0, 1.0);
}

double lifted(double r, double ahd) { return std::sqrt(r * r + ahd * ahd); }

// Lower bound on the exponent integral while the serving BS is in segment n,
// from keeping only the last segment of the interference field.
double bound_q1(const NetworkConfig& cfg, std::size_t n, double rbar) {
  const PathlossModel& m = cfg.model;
  const std::size_t last = m.segments() - 1;
  const double a_last = m.exponent(last);
  const double kn = m.constant(n);
  const double k_last = m.constant(last);
  return cfg.tau * k_last * std::pow(rbar, 2.0 - a_last) * std::pow(cfg.ahd, m.exponent(n)) *
         omega1(cfg.tau * k_last / kn, a_last) / (kn * (a_last - 2.0));
}

}  // namespace

double interference_constant(double tau, double alpha) {
  if (!(alpha > 2.0)) {
    throw std::domain_error("interference_constant: exponent must exceed 2, got " + std::to_string(alpha));
  }
  return 2.0 * tau * omega1(tau, alpha) / (alpha - 2.0);
}

double interference_segment(double a, double b, double alpha, double s) {
  if (alpha == 0.0) return (b * b - a * a) * s / (1.0 + s);
  const double hi = b * b * omega2(std::pow(b, alpha) / s, alpha);
  const double lo = a * a * omega2(std::pow(a, alpha) / s, alpha);
  return hi - lo;
}

double interference_tail(double a, double alpha, double s) {
  return 2.0 * s * std::pow(a, 2.0 - alpha) / (alpha - 2.0) * omega1(s * std::pow(a, -alpha), alpha);
}

QuadratureResult radial_expectation(const std::function<double(double)>& f, double lambda, double lo,
                                    double hi, const QuadratureOptions& opts) {
  if (!(lambda > 0.0)) throw std::domain_error("radial_expectation: density must be positive");
  if (!(lo >= 0.0) || !(hi > lo)) throw std::domain_error("radial_expectation: need 0 <= lo < hi");
  const double cut = std::sqrt(lo * lo + kTailLog / (kPi * lambda));
  const double upper = std::min(hi, cut);
  const double scale = 2.0 * kPi * lambda;
  return integrate(
      [&](double r) { return f(r) * scale * r * std::exp(-kPi * lambda * r * r); }, lo, upper, opts);
}

double cp_sspm(const NetworkConfig& cfg) {
  cfg.validate();
  if (cfg.model.segments() != 1) throw std::domain_error("cp_sspm: model must have a single segment");
  const double c1 = interference_constant(cfg.tau, cfg.model.exponent(0));
  return std::exp(-kPi * cfg.lambda * c1 * cfg.ahd * cfg.ahd) / (1.0 + c1);
}

double cp_dspm(const NetworkConfig& cfg, const AnalyticOptions& opts) {
  cfg.validate();
  if (cfg.model.segments() != 2) throw std::domain_error("cp_dspm: model must have two segments");
  const double a0 = cfg.model.exponent(0);
  const double a1 = cfg.model.exponent(1);
  const double r1 = cfg.model.breakpoints()[0];
  const double k1 = cfg.model.constant(1);
  const double tau = cfg.tau;
  const double ahd = cfg.ahd;
  const double corner = opts.breakpoints == AnalyticOptions::Breakpoints::Lifted ? lifted(r1, ahd) : r1;
  const double w2_own = a0 > 0.0 ? omega2(1.0 / tau, a0) : 0.0;
  const double w1_far = omega1(tau, a1);

  // Serving BS inside the corner distance.
  auto near = [&](double r0) {
    const double d0sq = r0 * r0 + ahd * ahd;
    const double d0 = std::sqrt(d0sq);
    const double d0a = std::pow(d0, a0);
    double delta1;
    if (a0 > 0.0) {
      delta1 = corner * corner * omega2(std::pow(corner, a0) / (tau * d0a), a0) - d0sq * w2_own;
    } else {
      delta1 = (corner * corner - d0sq) * tau / (1.0 + tau);
    }
    const double s = tau * k1 * d0a;
    const double delta2 =
        2.0 * s * std::pow(corner, 2.0 - a1) / (a1 - 2.0) * omega1(s * std::pow(corner, -a1), a1);
    return std::exp(-kPi * cfg.lambda * (delta1 + delta2));
  };
  // Serving BS beyond it.
  auto far = [&](double r0) {
    const double d0sq = r0 * r0 + ahd * ahd;
    const double delta3 = 2.0 * tau * d0sq / (a1 - 2.0) * w1_far;
    return std::exp(-kPi * cfg.lambda * delta3);
  };

  const double inf = std::numeric_limits<double>::infinity();
  const double total = radial_expectation(near, cfg.lambda, 0.0, r1, opts.quadrature).value +
                       radial_expectation(far, cfg.lambda, r1, inf, opts.quadrature).value;
  return finish_cp(total, "cp_dspm");
}

double cp_mspm(const NetworkConfig& cfg, const AnalyticOptions& opts) {
  cfg.validate();
  const PathlossModel& m = cfg.model;
  const std::size_t segs = m.segments();
  const double tau = cfg.tau;
  const double ahd = cfg.ahd;
  const bool relative = opts.scaling == AnalyticOptions::Scaling::Relative;

  // Segment edges of the interference field, in 3-D distance.
  std::vector<double> edge(segs + 1);
  for (std::size_t i = 0; i <= segs; ++i) {
    if (i == segs) {
      edge[i] = std::numeric_limits<double>::infinity();
    } else {
      const double r = m.lower_edge(i);
      edge[i] = opts.breakpoints == AnalyticOptions::Breakpoints::Lifted ? lifted(r, ahd) : r;
    }
  }

  double total = 0.0;
  for (std::size_t n = 0; n < segs; ++n) {
    const double an = m.exponent(n);
    const double kn = m.constant(n);
    auto integrand = [&](double r0) {
      const double d0 = std::sqrt(r0 * r0 + ahd * ahd);
      const double d0a = std::pow(d0, an);
      double g;
      if (n + 1 == segs) {
        g = interference_tail(d0, an, tau * d0a);
      } else {
        g = interference_segment(d0, edge[n + 1], an, tau * d0a);
        for (std::size_t i = n + 1; i < segs; ++i) {
          const double coeff = relative ? m.constant(i) / kn : m.constant(i);
          const double s = tau * coeff * d0a;
          g += (i + 1 == segs) ? interference_tail(edge[i], m.exponent(i), s)
                               : interference_segment(edge[i], edge[i + 1], m.exponent(i), s);
        }
      }
      return std::exp(-kPi * cfg.lambda * g);
    };
    total += radial_expectation(integrand, cfg.lambda, m.lower_edge(n), m.upper_edge(n), opts.quadrature).value;
  }
  return finish_cp(total, "cp_mspm");
}

double cp(const NetworkConfig& cfg) {
  switch (cfg.model.segments()) {
    case 1:
      return cp_sspm(cfg);
    case 2:
      return cp_dspm(cfg);
    default:
      return cp_mspm(cfg);
  }
}

double st(const NetworkConfig& cfg) { return cfg.lambda * cp(cfg) * std::log2(1.0 + cfg.tau); }

CpBounds cp_bounds_mspm(const NetworkConfig& cfg) {
  cfg.validate();
  const PathlossModel& m = cfg.model;
  const std::size_t segs = m.segments();
  if (segs < 3) throw std::domain_error("cp_bounds_mspm: bounds need at least three segments");
  const std::size_t last = segs - 1;
  const double a_last = m.exponent(last);
  const double r_last = m.last_breakpoint();
  const double rbar = lifted(r_last, cfg.ahd);
  const double c = 2.0 * cfg.tau * omega1(cfg.tau, a_last);

  CpBounds out;
  out.lower = std::exp(-kPi * cfg.lambda * (r_last * r_last + c * rbar * rbar)) / (1.0 + c);
  for (std::size_t n = 0; n < last; ++n) {
    const double q1 = bound_q1(cfg, n, rbar);
    out.upper += std::exp(-2.0 * kPi * cfg.lambda * q1);
  }
  out.upper += std::exp(-kPi * cfg.lambda * r_last * r_last);
  return out;
}

BoundRates bound_rates(const NetworkConfig& cfg) {
  cfg.validate();
  const PathlossModel& m = cfg.model;
  const std::size_t segs = m.segments();
  if (segs < 3) throw std::domain_error("bound_rates: bounds need at least three segments");
  const std::size_t last = segs - 1;
  const double a_last = m.exponent(last);
  const double r_last = m.last_breakpoint();
  const double rbar = lifted(r_last, cfg.ahd);
  const double c = 2.0 * cfg.tau * omega1(cfg.tau, a_last);

  BoundRates out;
  out.lower = kPi * (r_last * r_last + c * rbar * rbar);
  out.upper = kPi * r_last * r_last;
  for (std::size_t n = 0; n < last; ++n) {
    const double q1 = bound_q1(cfg, n, rbar);
    out.upper = std::min(out.upper, 2.0 * kPi * q1);
  }
  return out;
}

}  // namespace ahdcov
