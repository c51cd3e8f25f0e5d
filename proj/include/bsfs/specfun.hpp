#pragma once

// Special functions used by every integrand in the library. All routines
// work in log-domain where overflow is possible and are pure/reentrant.

namespace bsfs::specfun {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Default number of terms above which digamma_diff switches from the finite
/// sum to the asymptotic digamma difference.
inline constexpr int kDigammaDiffCrossover = 10000;

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

/// Psi(b - p) - Psi(1 - p) = sum_{k=1}^{b-1} 1/(k - p) for 0 < p < 1, b >= 1.
/// The finite sum is used below `crossover`, the digamma difference above.
double digamma_diff(long long b, double p, long long crossover = kDigammaDiffCrossover);

/// ln Gamma(m + c) - ln Gamma(m), accurate even when m is huge (no
/// cancellation between two large log-Gammas).
double log_gamma_ratio(double m, double c);

/// Gamma(m + c) / Gamma(m).
double gamma_ratio(double m, double c);

/// m^c, the leading Stirling approximant of Gamma(m + c) / Gamma(m).
double gamma_ratio_first_order(double m, double c);

/// m^c (1 - c(1-c)/(2m)), the second-order approximant.
double gamma_ratio_second_order(double m, double c);

/// ln Gamma(x + k) - ln Gamma(x) for integer k >= 0 (log rising factorial).
/// Exact product form for small k; k = 0 gives 0 for any x > 0.
double log_rising(double x, long long k);

/// ln Be(x, y) = ln Gamma(x) + ln Gamma(y) - ln Gamma(x + y).
double log_beta(double x, double y);

/// sin(pi x), with the argument reduced before multiplying by pi so that
/// values near the integers keep full relative accuracy.
double sin_pi(double x);

/// sin(pi p) / (pi p), equal to 1 at p = 0.
double sinc_pi(double p);

}  // namespace bsfs::specfun
