#pragma once

#include <optional>

#include "ahdcov/analytic.hpp"
#include "ahdcov/pathloss.hpp"

// Density planning under a coverage requirement CP > epsilon.
//
// For the single-slope model everything is closed form:
//   feasible iff C1 < 1/epsilon - 1,
//   lambda_dagger = (alpha - 2) / (2 pi tau omega1(tau, alpha) ahd^2)     (ST maximizer),
//   lambda_star   = lambda_dagger * ln[1 / (epsilon (1 + C1))]            (largest density meeting epsilon).
// Other models go through numeric search on the analytic CP/ST.

namespace ahdcov {

/// CP requirement epsilon in (0, 1).
struct QosConstraint {
  double epsilon = 0.5;

  explicit QosConstraint(double eps);
};

/// Whether a single-slope network can reach CP > epsilon at any density.
bool necessary_condition(double alpha0, double tau, const QosConstraint& qos);

/// Largest single-slope density meeting the requirement, or nullopt when
/// infeasible. Throws std::domain_error for ahd <= 0 (unbounded).
std::optional<double> lambda_star(double alpha0, double tau, double ahd, const QosConstraint& qos);

/// Single-slope density maximizing ST. Throws std::domain_error for ahd <= 0.
double lambda_dagger(double alpha0, double tau, double ahd);

struct SearchOptions {
  /// Relative tolerance on the returned density.
  double rel_tol = 0.01;
  /// Coarse log grid used to check unimodality around the peak.
  int coarse_points = 60;
  /// Densities beyond this (BS/m^2) are treated as unbounded.
  double lambda_max = 1e4;
  AnalyticOptions analytic{};
};

/// Numeric counterpart for any model. Without a requirement returns the ST
/// maximizer; with one returns min(largest lambda with CP >= epsilon, ST
/// maximizer), or nullopt when CP never reaches epsilon. Throws
/// std::domain_error when ST has no interior maximum below lambda_max and
/// std::runtime_error when the coarse scan sees more than one peak.
std::optional<double> critical_density_numeric(const PathlossModel& model, double ahd, double tau,
                                               std::optional<QosConstraint> qos, const SearchOptions& opts = {});

}  // namespace ahdcov
