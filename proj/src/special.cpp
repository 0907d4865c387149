#include "ahdcov/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ahdcov {
namespace {

constexpr double kSeriesTol = 1e-16;
constexpr int kMaxTerms = 1'000'000;

// Switch-over points between the three evaluation routes.
constexpr double kPfaffFrom = 0.5;
constexpr double kLargeFrom = 4.0;

// (pi*e/sin(pi*e) - 1) / e, regular at e = 0.
double reflection_excess(double e) {
  constexpr double pi = std::numbers::pi;
  if (std::abs(e) < 1e-3) {
    const double pi2 = pi * pi;
    return pi2 * e / 6.0 + 7.0 * pi2 * pi2 * e * e * e / 360.0;
  }
  return (pi * e / std::sin(pi * e) - 1.0) / e;
}

double reflection_ratio(double e) {
  constexpr double pi = std::numbers::pi;
  if (e == 0.0) return 1.0;
  return pi * e / std::sin(pi * e);
}

}  // namespace

namespace detail {

double hyp2f1_1b_series(double b, double x) {
  double sum = 1.0;
  double power = 1.0;
  for (int k = 1; k < kMaxTerms; ++k) {
    power *= -x;
    const double term = power * b / (b + k);
    sum += term;
    if (std::abs(term) < kSeriesTol * std::abs(sum)) return sum;
  }
  throw std::runtime_error("hyp2f1_1b: power series did not converge");
}

double hyp2f1_1b_pfaff(double b, double x) {
  const double y = x / (1.0 + x);
  double sum = 1.0;
  double term = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    term *= (k + 1.0) / (b + 1.0 + k) * y;
    sum += term;
    // Terms decay no slower than y^k, so the tail is bounded by term * (1+x).
    if (term * (1.0 + x) < kSeriesTol * sum) return sum / (1.0 + x);
  }
  throw std::runtime_error("hyp2f1_1b: Pfaff series did not converge");
}

double hyp2f1_1b_large(double b, double x) {
  // F = b * [ Gamma(b)Gamma(1-b) x^-b - sum_k (-1)^k x^(-1-k) / (k+1-b) ].
  // The gamma term is paired with the k = m term nearest to the pole at
  // b = m+1, which leaves a finite expression for integer b as well.
  const int m = std::max(0, static_cast<int>(std::lround(b - 1.0)));
  const double e = m + 1.0 - b;
  const double log_x = std::log(x);
  const double inv_x = 1.0 / x;

  const double growth = (e == 0.0) ? log_x : std::expm1(e * log_x) / e;
  const double paired = growth * reflection_ratio(e) + reflection_excess(e);

  double sum = 0.0;
  double power = inv_x;  // (-1)^k x^(-1-k)
  double paired_power = 0.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    if (k == m) {
      paired_power = power;
    } else {
      const double term = -power / (k + 1.0 - b);
      sum += term;
      if (k > m && std::abs(term) < kSeriesTol * std::abs(sum)) break;
    }
    power *= -inv_x;
  }
  return b * (sum + paired_power * paired);
}

}  // namespace detail

double hyp2f1_1b(double b, double x) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::domain_error("hyp2f1_1b: parameter b must be positive, got " + std::to_string(b));
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("hyp2f1_1b: argument must be nonnegative, got " + std::to_string(x));
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < kPfaffFrom) return detail::hyp2f1_1b_series(b, x);
  if (x < kLargeFrom) return detail::hyp2f1_1b_pfaff(b, x);
  return detail::hyp2f1_1b_large(b, x);
}

double omega1(double x, double alpha) {
  if (!(alpha > 2.0)) {
    throw std::domain_error("omega1: exponent must exceed 2, got " + std::to_string(alpha));
  }
  return hyp2f1_1b(1.0 - 2.0 / alpha, x);
}

double omega2(double x, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("omega2: exponent must be positive, got " + std::to_string(alpha));
  }
  return hyp2f1_1b(2.0 / alpha, x);
}

}  // namespace ahdcov
