#include "bsfs/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bsfs::specfun {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;

// Asymptotic region for the Stirling series.
constexpr double kStirlingMin = 10.0;

void require_positive_finite(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(what) + ": argument must be positive and finite, got " +
                            std::to_string(x));
  }
}

// sum_k B_{2k} / (2k (2k-1) x^{2k-1}); eight terms are ample for x >= 10.
double stirling_tail(double x) {
  static constexpr std::array<double, 8> c = {
      1.0 / 12.0,          -1.0 / 360.0,   1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * inv2 + *it;
  return acc * inv;
}

// zeta(k) - 1 for k = 2..kSeriesTerms+1, via Euler-Maclaurin summation at N = 20.
constexpr int kSeriesTerms = 32;

std::array<double, kSeriesTerms + 2> make_zeta_minus_one() {
  static constexpr std::array<double, 6> bern = {1.0 / 6.0,  -1.0 / 30.0,   1.0 / 42.0,
                                                 -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};
  constexpr int N = 20;
  std::array<double, kSeriesTerms + 2> z{};
  for (int k = 2; k < kSeriesTerms + 2; ++k) {
    const double s = k;
    double tail = std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);
    double rising = s;  // s (s+1) ... (s + 2i - 2)
    double fact = 2.0;  // (2i)!
    for (int i = 1; i <= static_cast<int>(bern.size()); ++i) {
      tail += bern[i - 1] / fact * rising * std::pow(N, -s - 2.0 * i + 1.0);
      rising *= (s + 2.0 * i - 1.0) * (s + 2.0 * i);
      fact *= (2.0 * i + 1.0) * (2.0 * i + 2.0);
    }
    double head = 0.0;
    for (int j = N - 1; j >= 2; --j) head += std::pow(j, -s);
    z[k] = head + tail;
  }
  return z;
}

// ln Gamma(2 + z) for |z| <= 1/2 by its Taylor series about 2.
double log_gamma_2_plus(double z) {
  static const std::array<double, kSeriesTerms + 2> zeta1 = make_zeta_minus_one();
  double acc = 0.0;
  for (int k = kSeriesTerms + 1; k >= 2; --k) {
    const double coef = ((k % 2 == 0) ? 1.0 : -1.0) * zeta1[k] / k;
    acc = acc * z + coef;
  }
  return z * ((1.0 - kEulerGamma) + z * acc);
}

double log_gamma_unchecked(double x) {
  if (x >= kStirlingMin) {
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_tail(x);
  }
  if (x < 0.5) return log_gamma_unchecked(x + 1.0) - std::log(x);
  if (x < 1.5) {
    const double z = x - 1.0;
    return log_gamma_2_plus(z) - std::log1p(z);
  }
  if (x < 2.5) return log_gamma_2_plus(x - 2.0);
  double prod = 1.0;
  while (x >= 2.5) {
    x -= 1.0;
    prod *= x;
  }
  return log_gamma_2_plus(x - 2.0) + std::log(prod);
}

double digamma_unchecked(double x) {
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // sum_k B_{2k} / (2k x^{2k})
  static constexpr std::array<double, 7> c = {1.0 / 12.0,  -1.0 / 120.0,        1.0 / 252.0,
                                              -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0,
                                              1.0 / 12.0};
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * inv2 + *it;
  return shift + std::log(x) - 0.5 / x - acc * inv2;
}

}  // namespace

double log_gamma(double x) {
  require_positive_finite(x, "log_gamma");
  return log_gamma_unchecked(x);
}

double digamma(double x) {
  require_positive_finite(x, "digamma");
  return digamma_unchecked(x);
}

double digamma_diff(long long b, double p, long long crossover) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("digamma_diff: p must lie in (0,1), got " + std::to_string(p));
  }
  if (b < 1) throw std::domain_error("digamma_diff: b must be >= 1");
  if (b < crossover) {
    // smallest terms first
    double acc = 0.0;
    for (long long k = b - 1; k >= 1; --k) acc += 1.0 / (static_cast<double>(k) - p);
    return acc;
  }
  return digamma_unchecked(static_cast<double>(b) - p) - digamma_unchecked(1.0 - p);
}

double log_gamma_ratio(double m, double c) {
  require_positive_finite(m, "log_gamma_ratio");
  const double mc = m + c;
  if (!(mc > 0.0) || !std::isfinite(c)) {
    throw std::domain_error("log_gamma_ratio: m + c must be positive, got " + std::to_string(mc));
  }
  if (c == 0.0) return 0.0;
  if (m >= kStirlingMin && mc >= kStirlingMin) {
    // (m+c-1/2) ln(m+c) - (m-1/2) ln m - c, regrouped around log1p(c/m).
    return (m - 0.5) * std::log1p(c / m) + c * (std::log(mc) - 1.0) + stirling_tail(mc) -
           stirling_tail(m);
  }
  return log_gamma_unchecked(mc) - log_gamma_unchecked(m);
}

double gamma_ratio(double m, double c) { return std::exp(log_gamma_ratio(m, c)); }

double gamma_ratio_first_order(double m, double c) {
  require_positive_finite(m, "gamma_ratio_first_order");
  return std::pow(m, c);
}

double gamma_ratio_second_order(double m, double c) {
  require_positive_finite(m, "gamma_ratio_second_order");
  return std::pow(m, c) * (1.0 - c * (1.0 - c) / (2.0 * m));
}

double log_rising(double x, long long k) {
  require_positive_finite(x, "log_rising");
  if (k < 0) throw std::domain_error("log_rising: k must be >= 0");
  if (k == 0) return 0.0;
  if (k <= 16) {
    double prod = x;
    for (long long j = 1; j < k; ++j) prod *= x + static_cast<double>(j);
    return std::log(prod);
  }
  return log_gamma_ratio(x, static_cast<double>(k));
}

double log_beta(double x, double y) {
  require_positive_finite(x, "log_beta");
  require_positive_finite(y, "log_beta");
  const double big = x > y ? x : y;
  const double small = x > y ? y : x;
  return log_gamma_unchecked(small) - log_gamma_ratio(big, small);
}

double sin_pi(double x) {
  if (!std::isfinite(x)) throw std::domain_error("sin_pi: non-finite argument");
  double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
  double sign = 1.0;
  if (r < 0.0) {
    r = -r;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(kPi * r);
}

double sinc_pi(double p) {
  if (p == 0.0) return 1.0;
  if (std::fabs(p) < 1e-5) {
    const double t = kPi * p;
    return 1.0 - t * t / 6.0;
  }
  return sin_pi(p) / (kPi * p);
}

}  // namespace bsfs::specfun
