#include "bsfs/pd.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bsfs/quad.hpp"
#include "bsfs/specfun.hpp"

namespace bsfs::sim {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("PD: alpha must lie in (0,1)");
}

}  // namespace

namespace {

void extend(PdSample& s, double alpha, Rng& rng, double stop, long long max_parts) {
  double rest = s.residual;
  for (long long i = static_cast<long long>(s.freqs.size()) + 1; i <= max_parts && rest >= stop; ++i) {
    const double v = rng.beta(1.0 - alpha, static_cast<double>(i) * alpha);
    s.freqs.push_back(rest * v);
    rest *= 1.0 - v;
  }
  s.residual = rest;
}

}  // namespace

PdSample sample_pd(double alpha, Rng& rng, double truncation_mass, long long max_parts) {
  check_alpha(alpha);
  if (!(truncation_mass > 0.0 && truncation_mass < 1.0)) {
    throw std::invalid_argument("sample_pd: truncation_mass must lie in (0,1)");
  }
  if (max_parts < 1) throw std::invalid_argument("sample_pd: max_parts must be >= 1");
  PdSample s;
  extend(s, alpha, rng, truncation_mass, max_parts);
  return s;
}

PdSample sample_pd(double alpha, double truncation_mass, std::uint64_t seed, long long max_parts) {
  Rng rng(seed);
  return sample_pd(alpha, rng, truncation_mass, max_parts);
}

double pd_square_sum(const PdSample& s, double alpha) {
  double acc = 0.0;
  for (double a : s.freqs) acc += a * a;
  const double k = static_cast<double>(s.freqs.size());
  return acc + s.residual * s.residual * (1.0 - alpha) / (1.0 + k * alpha);
}

double pd_interval_count(const PdSample& s, double alpha, double lo, double hi) {
  check_alpha(alpha);
  double inside = 0.0;
  for (double a : s.freqs) inside += (a > lo && a < hi) ? 1.0 : 0.0;
  const double r = s.residual;
  if (!(r > lo)) return inside;
  const double th = static_cast<double>(s.freqs.size()) * alpha;
  const double log_c = specfun::log_gamma(th + 1.0) - specfun::log_gamma(1.0 - alpha) - specfun::log_gamma(th + alpha);
  auto density = [=](double u) {
    return std::exp(log_c - (alpha + 1.0) * std::log(u) + (th + alpha - 1.0) * std::log1p(-u));
  };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  spec.abs_tol = 1e-300;
  const double tail = quad::value_or_throw(quad::integrate_interval(density, lo / r, std::min(1.0, hi / r), spec),
                                           "pd_interval_count");
  return inside + tail;
}

MomentAccumulator estimate_pd(double alpha, double lo, double hi, long long reps, std::uint64_t seed,
                              double truncation_mass, long long max_parts, int threads) {
  check_alpha(alpha);
  if (!(lo > 0.0 && lo < hi && hi <= 1.0)) throw std::invalid_argument("estimate_pd: need 0 < lo < hi <= 1");
  return run_reps(
      reps, seed, 2,
      [=](long long, Rng& rng, std::vector<double>& out) {
        const PdSample s = sample_pd(alpha, rng, truncation_mass, max_parts);
        out[0] = pd_square_sum(s, alpha);
        out[1] = pd_interval_count(s, alpha, lo, hi);
      },
      threads);
}

std::vector<long long> sample_crp(long long n, double alpha, Rng& rng) {
  check_alpha(alpha);
  if (n < 1) throw std::invalid_argument("sample_crp: n must be >= 1");
  std::vector<long long> tables{1};
  for (long long k = 1; k < n; ++k) {
    // customer k+1: table j w.p. (n_j - alpha)/k, new table w.p. K alpha / k
    const double u = rng.uniform() * static_cast<double>(k);
    double acc = 0.0;
    std::size_t pick = tables.size();
    for (std::size_t j = 0; j < tables.size(); ++j) {
      acc += static_cast<double>(tables[j]) - alpha;
      if (u < acc) {
        pick = j;
        break;
      }
    }
    if (pick == tables.size()) {
      tables.push_back(1);
    } else {
      ++tables[pick];
    }
  }
  std::sort(tables.begin(), tables.end(), std::greater<>());
  return tables;
}

}  // namespace bsfs::sim
