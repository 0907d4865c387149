#pragma once

#include <functional>
#include <stdexcept>

namespace ahdcov {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Raised when the adaptive integrator runs out of subdivisions; carries the
/// best estimate and its error bound.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_intervals = 2000;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) integration on a finite [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

}  // namespace ahdcov
