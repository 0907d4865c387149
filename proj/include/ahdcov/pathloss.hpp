#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ahdcov {

/// Piecewise power-law attenuation
///
///   l(x) = K_n x^-alpha_n   for R_n <= x < R_{n+1},
///
/// with R_0 = 0, R_N = inf, K_0 = 1 and K_n = prod_{i=1..n} R_i^(alpha_i - alpha_{i-1}),
/// so that the gain is continuous at each breakpoint. N = 1 is the
/// single-slope model, N = 2 the dual-slope model.
class PathlossModel {
 public:
  /// Throws std::invalid_argument if exponents are empty or not
  /// non-decreasing and nonnegative, the last exponent is <= 2, breakpoints are
  /// not strictly increasing and positive, or the list sizes do not match.
  PathlossModel(std::vector<double> exponents, std::vector<double> breakpoints);

  static PathlossModel single_slope(double alpha);
  static PathlossModel dual_slope(double alpha0, double alpha1, double corner);

  std::size_t segments() const { return exponents_.size(); }
  std::span<const double> exponents() const { return exponents_; }
  /// R_1 .. R_{N-1}.
  std::span<const double> breakpoints() const { return breakpoints_; }
  /// K_0 .. K_{N-1}.
  std::span<const double> constants() const { return constants_; }

  double exponent(std::size_t n) const { return exponents_[n]; }
  double constant(std::size_t n) const { return constants_[n]; }
  /// Lower edge R_n of segment n (R_0 = 0).
  double lower_edge(std::size_t n) const { return n == 0 ? 0.0 : breakpoints_[n - 1]; }
  /// Upper edge R_{n+1} of segment n (infinity for the last segment).
  double upper_edge(std::size_t n) const;
  /// R_{N-1}, or 0 for a single-slope model.
  double last_breakpoint() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back(); }

  /// Gain from squared ground distance and squared height difference, with
  /// the segment chosen by comparing squared distances. Hot path of the
  /// simulator; no domain checks.
  double gain_sq(double r2d_sq, double ahd_sq) const;

  /// Short identifier such as "sspm(4)" or "mspm(1.5/3/4.5;10/50)".
  std::string id() const;

  bool operator==(const PathlossModel&) const = default;

 private:
  std::vector<double> exponents_;
  std::vector<double> breakpoints_;
  std::vector<double> constants_;
  std::vector<double> breakpoints_sq_;
};

/// (d^2)^(-alpha/2), exact-ish fast path when 2*alpha is a small integer.
double inverse_power_sq(double d_sq, double alpha);

/// Ground (2-D) distance plus antenna height difference.
struct Link {
  double r2d = 0.0;
  double ahd = 0.0;

  double d3d() const;
};

/// Unique n with R_n <= r2d < R_{n+1}.
std::size_t segment_index(const PathlossModel& model, double r2d);

/// Linear attenuation K_n d^-alpha_n with the segment chosen by the 2-D
/// distance. With ahd > 0 this has small jumps at the breakpoints, since K_n
/// only matches the pieces at R_n and not at sqrt(R_n^2 + ahd^2).
/// Throws std::domain_error when the 3-D distance is zero.
double gain(const PathlossModel& model, const Link& link);

/// d^-alpha.
double gain_single_slope(double alpha, const Link& link);

/// Dual-slope gain with corner distance `corner`.
double gain_dual_slope(double alpha0, double alpha1, double corner, const Link& link);

}  // namespace ahdcov
