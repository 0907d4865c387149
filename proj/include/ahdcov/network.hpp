#pragma once

#include "ahdcov/pathloss.hpp"

namespace ahdcov {

/// Small-scale fading law of the channel power gain H. Both kinds have E[H] = 1.
struct FadingModel {
  enum class Kind { Rayleigh, Rice };

  Kind kind = Kind::Rayleigh;
  /// Rice only: noncentrality of the noncentral chi-square draw.
  double nu_nc = 0.0;
  /// Rice only: degrees of freedom of the noncentral chi-square draw.
  double nu_dof = 0.0;

  static FadingModel rayleigh() { return {}; }
  static FadingModel rice(double nu_nc, double nu_dof);

  bool operator==(const FadingModel&) const = default;
};

/// Downlink network under nearest-BS association with every BS active.
/// Distances in meters, densities in BS/m^2, tau linear.
struct NetworkConfig {
  double lambda = 1e-4;
  double ahd = 0.0;
  double tau = 1.0;
  /// Watts. SIR does not depend on it; kept so configs round-trip.
  double power = 0.2;
  PathlossModel model = PathlossModel::single_slope(4.0);
  FadingModel fading = FadingModel::rayleigh();

  /// Throws std::invalid_argument on lambda <= 0, ahd < 0, tau <= 0 or an
  /// invalid fading law.
  void validate() const;
};

/// Per-km^2 to per-m^2.
constexpr double per_km2_to_per_m2(double v) { return v * 1e-6; }
constexpr double per_m2_to_per_km2(double v) { return v * 1e6; }

double db_to_linear(double db);
double dbm_to_watt(double dbm);

}  // namespace ahdcov
