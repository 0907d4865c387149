#pragma once

// Restricted Gauss hypergeometric functions 2F1(1, b; b+1; -x).
//
// Every closed form for coverage under power-law attenuation reduces to this
// one-parameter family:
//
//   omega1(x, alpha) = 2F1(1, 1 - 2/alpha; 2 - 2/alpha; -x)
//   omega2(x, alpha) = 2F1(1, 2/alpha;     1 + 2/alpha; -x)
//
// Only x >= 0 is supported. All functions are pure and thread-safe.

namespace ahdcov {

/// 2F1(1, b; b+1; -x) for b > 0, x >= 0, to ~1e-12 relative accuracy.
/// Throws std::domain_error outside the domain.
double hyp2f1_1b(double b, double x);

/// omega1(x, alpha), alpha > 2.
double omega1(double x, double alpha);

/// omega2(x, alpha), alpha > 0.
double omega2(double x, double alpha);

namespace detail {

// Individual evaluation routes, exposed so tests can check them against each
// other on overlapping ranges. No domain checks.

/// Power series b * sum (-x)^k / (b + k). Converges for x < 1.
double hyp2f1_1b_series(double b, double x);

/// Pfaff transform: (1+x)^-1 * 2F1(1, 1; b+1; x/(1+x)). Converges for all
/// x >= 0 but needs O(x) terms when x is large.
double hyp2f1_1b_pfaff(double b, double x);

/// Expansion in 1/x from the analytic continuation to infinity. Requires
/// x > 1; fast for x >= 4.
double hyp2f1_1b_large(double b, double x);

}  // namespace detail
}  // namespace ahdcov
