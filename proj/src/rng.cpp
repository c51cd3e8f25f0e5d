#include "bsfs/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "bsfs/specfun.hpp"

namespace bsfs::sim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_rep(std::uint64_t seed, std::uint64_t rep) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(rep + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform() {
  for (;;) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be >= 1");
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = eng_();
    if (x >= limit) return x % bound;
  }
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::normal() {
  // Marsaglia polar method; the second variate is discarded to keep the
  // stream position independent of call history.
  for (;;) {
    const double a = 2.0 * uniform() - 1.0;
    const double b = 2.0 * uniform() - 1.0;
    const double r = a * a + b * b;
    if (r > 0.0 && r < 1.0) return a * std::sqrt(-2.0 * std::log(r) / r);
  }
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("Rng::gamma: shape must be > 0");
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::exp(std::log(uniform()) / shape);
  }
  // Marsaglia-Tsang
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  for (;;) {
    const double x = gamma(a);
    const double y = gamma(b);
    if (x + y > 0.0) return x / (x + y);
  }
}

long long Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("Rng::poisson: bad mean");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // inversion by sequential search
    double p = std::exp(-mean);
    double cdf = p;
    const double u = uniform();
    long long k = 0;
    while (u > cdf) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
      if (p == 0.0 && cdf < u) break;  // rounding left the tail unreachable
    }
    return k;
  }
  // Hormann's PTRS transformed rejection
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long long>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b);
    const double rhs = -mean + kd * loglam - specfun::log_gamma(kd + 1.0);
    if (lhs <= rhs) return static_cast<long long>(kd);
  }
}

}  // namespace bsfs::sim
