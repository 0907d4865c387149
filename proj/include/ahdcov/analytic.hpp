#pragma once

#include <functional>

#include "ahdcov/network.hpp"
#include "ahdcov/quadrature.hpp"

// Coverage probability (CP) and spatial throughput (ST) of the typical
// downlink user under Rayleigh fading:
//
//   CP = E_r0[ exp(-pi*lambda*G(d0)) ],  d0 = sqrt(r0^2 + ahd^2),
//
// where r0 is the contact distance and G(d0) is twice the PGFL exponent
// integral over the interference field beyond the serving BS. The integral is
// taken in closed form per attenuation segment; only the outer expectation
// over r0 is numerical.

namespace ahdcov {

struct AnalyticOptions {
  /// Coefficient of the interference pieces beyond the serving segment n.
  enum class Scaling {
    Relative,  ///< K_i / K_n: the ratio of the two gains.
    Absolute,  ///< K_i alone. Agrees with Relative when the user is in segment 0.
  };
  /// Edges of the interference field segments in 3-D distance.
  enum class Breakpoints {
    Lifted,  ///< sqrt(R_i^2 + ahd^2): matches segment selection by ground distance.
    Ground,  ///< R_i unchanged.
  };

  Scaling scaling = Scaling::Relative;
  Breakpoints breakpoints = Breakpoints::Lifted;
  QuadratureOptions quadrature{};
};

/// Lower and upper bound on CP for models with three or more segments. The
/// upper bound is not clipped and may exceed 1.
struct CpBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Exponential decay rates (per BS/m^2) of the two bounds as lambda grows.
struct BoundRates {
  double lower = 0.0;
  double upper = 0.0;
};

/// C1 = 2*tau*omega1(tau, alpha) / (alpha - 2), alpha > 2.
double interference_constant(double tau, double alpha);

/// Closed-form single-slope CP: exp(-pi*lambda*C1*ahd^2) / (1 + C1).
double cp_sspm(const NetworkConfig& cfg);

/// Dual-slope CP from its three-piece exponent.
double cp_dspm(const NetworkConfig& cfg, const AnalyticOptions& opts = {});

/// CP for any number of segments.
double cp_mspm(const NetworkConfig& cfg, const AnalyticOptions& opts = {});

/// CP by the most specific route for the number of segments.
double cp(const NetworkConfig& cfg);

/// lambda * CP * log2(1 + tau), bits/(s Hz m^2).
double st(const NetworkConfig& cfg);

/// Bounds for models with >= 3 segments; throws std::domain_error otherwise.
CpBounds cp_bounds_mspm(const NetworkConfig& cfg);
BoundRates bound_rates(const NetworkConfig& cfg);

/// Integral of f(r) * 2 pi lambda r exp(-pi lambda r^2) over [lo, hi), hi may
/// be infinite. The range is cut where the remaining contact-distance mass
/// falls below 1e-10 of the mass at lo.
QuadratureResult radial_expectation(const std::function<double(double)>& f, double lambda, double lo,
                                    double hi, const QuadratureOptions& opts = {});

/// 2 * integral_a^b x / (1 + x^alpha / s) dx, a <= b finite.
double interference_segment(double a, double b, double alpha, double s);

/// 2 * integral_a^inf x / (1 + x^alpha / s) dx, alpha > 2.
double interference_tail(double a, double alpha, double s);

}  // namespace ahdcov
