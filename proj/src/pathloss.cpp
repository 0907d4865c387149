#include "ahdcov/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ahdcov {

PathlossModel::PathlossModel(std::vector<double> exponents, std::vector<double> breakpoints)
    : exponents_(std::move(exponents)), breakpoints_(std::move(breakpoints)) {
  if (exponents_.empty()) {
    throw std::invalid_argument("pathloss: at least one exponent is required");
  }
  if (breakpoints_.size() + 1 != exponents_.size()) {
    throw std::invalid_argument("pathloss: need exactly one breakpoint fewer than exponents (got " +
                                std::to_string(exponents_.size()) + " exponents, " +
                                std::to_string(breakpoints_.size()) + " breakpoints)");
  }
  for (std::size_t n = 0; n < exponents_.size(); ++n) {
    const double a = exponents_[n];
    if (!std::isfinite(a) || a < 0.0) {
      throw std::invalid_argument("pathloss: exponents must be finite and nonnegative");
    }
    if (n > 0 && a < exponents_[n - 1]) {
      throw std::invalid_argument("pathloss: exponents must be non-decreasing (alpha_0 <= ... <= alpha_{N-1})");
    }
  }
  if (!(exponents_.back() > 2.0)) {
    throw std::invalid_argument("pathloss: last exponent must exceed 2 (alpha_{N-1} > 2)");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double r = breakpoints_[i];
    if (!std::isfinite(r) || !(r > 0.0) || (i > 0 && !(r > breakpoints_[i - 1]))) {
      throw std::invalid_argument("pathloss: breakpoints must be finite, positive and strictly increasing");
    }
  }
  for (double r : breakpoints_) breakpoints_sq_.push_back(r * r);
  constants_.resize(exponents_.size());
  constants_[0] = 1.0;
  for (std::size_t n = 1; n < exponents_.size(); ++n) {
    constants_[n] = constants_[n - 1] * std::pow(breakpoints_[n - 1], exponents_[n] - exponents_[n - 1]);
  }
}

PathlossModel PathlossModel::single_slope(double alpha) { return PathlossModel({alpha}, {}); }

PathlossModel PathlossModel::dual_slope(double alpha0, double alpha1, double corner) {
  return PathlossModel({alpha0, alpha1}, {corner});
}

double PathlossModel::upper_edge(std::size_t n) const {
  return n + 1 < exponents_.size() ? breakpoints_[n] : std::numeric_limits<double>::infinity();
}

std::string PathlossModel::id() const {
  std::ostringstream out;
  out << (segments() == 1 ? "sspm" : segments() == 2 ? "dspm" : "mspm") << '(';
  for (std::size_t n = 0; n < exponents_.size(); ++n) out << (n ? "/" : "") << exponents_[n];
  if (!breakpoints_.empty()) {
    out << ';';
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) out << (i ? "/" : "") << breakpoints_[i];
  }
  out << ')';
  return out.str();
}

double PathlossModel::gain_sq(double r2d_sq, double ahd_sq) const {
  const auto n = static_cast<std::size_t>(
      std::upper_bound(breakpoints_sq_.begin(), breakpoints_sq_.end(), r2d_sq) - breakpoints_sq_.begin());
  return constants_[n] * inverse_power_sq(r2d_sq + ahd_sq, exponents_[n]);
}

double inverse_power_sq(double d_sq, double alpha) {
  // d^-alpha = (d^2)^(-q/4) with q = 2 alpha; split q = 4a + b.
  const double q = 2.0 * alpha;
  if (q == std::floor(q) && q <= 64.0) {
    const int qi = static_cast<int>(q);
    double p = 1.0;
    for (int i = 0; i < qi / 4; ++i) p *= d_sq;
    switch (qi % 4) {
      case 1:
        p *= std::sqrt(std::sqrt(d_sq));
        break;
      case 2:
        p *= std::sqrt(d_sq);
        break;
      case 3: {
        const double root = std::sqrt(d_sq);
        p *= root * std::sqrt(root);
        break;
      }
      default:
        break;
    }
    return 1.0 / p;
  }
  return std::pow(d_sq, -0.5 * alpha);
}

double Link::d3d() const { return std::sqrt(r2d * r2d + ahd * ahd); }

std::size_t segment_index(const PathlossModel& model, double r2d) {
  const auto bps = model.breakpoints();
  return static_cast<std::size_t>(std::upper_bound(bps.begin(), bps.end(), r2d) - bps.begin());
}

double gain(const PathlossModel& model, const Link& link) {
  const double d = link.d3d();
  if (!(d > 0.0)) throw std::domain_error("gain: zero link distance");
  const std::size_t n = segment_index(model, link.r2d);
  return model.constant(n) * inverse_power_sq(d * d, model.exponent(n));
}

double gain_single_slope(double alpha, const Link& link) {
  const double d = link.d3d();
  if (!(d > 0.0)) throw std::domain_error("gain: zero link distance");
  return inverse_power_sq(d * d, alpha);
}

double gain_dual_slope(double alpha0, double alpha1, double corner, const Link& link) {
  const double d = link.d3d();
  if (!(d > 0.0)) throw std::domain_error("gain: zero link distance");
  if (link.r2d < corner) return 1.0 * inverse_power_sq(d * d, alpha0);
  return 1.0 * std::pow(corner, alpha1 - alpha0) * inverse_power_sq(d * d, alpha1);
}

}  // namespace ahdcov
