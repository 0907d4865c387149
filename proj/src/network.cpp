#include "ahdcov/network.hpp"

#include <cmath>
#include <stdexcept>

namespace ahdcov {

FadingModel FadingModel::rice(double nu_nc, double nu_dof) {
  FadingModel f;
  f.kind = Kind::Rice;
  f.nu_nc = nu_nc;
  f.nu_dof = nu_dof;
  return f;
}

void NetworkConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("network: density must be positive");
  if (!(ahd >= 0.0) || !std::isfinite(ahd)) throw std::invalid_argument("network: antenna height difference must be >= 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("network: SIR threshold must be positive");
  if (fading.kind == FadingModel::Kind::Rice) {
    if (!(fading.nu_nc >= 0.0)) throw std::invalid_argument("network: Rice noncentrality must be >= 0");
    if (!(fading.nu_dof >= 1.0)) throw std::invalid_argument("network: Rice degrees of freedom must be >= 1");
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace ahdcov
