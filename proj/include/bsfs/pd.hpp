#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bsfs/montecarlo.hpp"
#include "bsfs/rng.hpp"

// Poisson-Dirichlet PD(alpha, 0) by stick breaking, and the Chinese
// restaurant process with parameters (alpha, 0).

namespace bsfs::sim {

/// Frequencies in size-biased order. Sticking stops once the unassigned mass
/// drops below truncation_mass or after max_parts factors, whichever comes
/// first; `residual` is the unassigned mass.
struct PdSample {
  std::vector<double> freqs;
  double residual = 1.0;
};

inline constexpr double kDefaultTruncationMass = 1e-6;
inline constexpr long long kDefaultMaxParts = 200000;

PdSample sample_pd(double alpha, Rng& rng, double truncation_mass = kDefaultTruncationMass,
                   long long max_parts = kDefaultMaxParts);
PdSample sample_pd(double alpha, double truncation_mass, std::uint64_t seed,
                   long long max_parts = kDefaultMaxParts);

/// Sum of a_i^2 plus the expected contribution of the truncated tail, which
/// given k parts and residual R is R^2 (1-alpha)/(1 + k alpha).
double pd_square_sum(const PdSample& s, double alpha);

/// Parts of the sample inside (lo, hi) plus the expected number of untaken
/// parts there. Given k parts and residual R the untaken parts are R times a
/// PD(alpha, k alpha) sample, whose mean intensity is
///   Gamma(th+1)/(Gamma(1-alpha)Gamma(th+alpha)) u^{-alpha-1}(1-u)^{th+alpha-1}.
double pd_interval_count(const PdSample& s, double alpha, double lo, double hi);

/// Monte-Carlo means with SEs of pd_square_sum (index 0) and
/// pd_interval_count over (lo, hi) (index 1); both unbiased at any
/// truncation.
MomentAccumulator estimate_pd(double alpha, double lo, double hi, long long reps, std::uint64_t seed,
                              double truncation_mass = kDefaultTruncationMass,
                              long long max_parts = 200, int threads = 0);

/// Block sizes (descending) of a CRP(alpha, 0) partition of n customers.
std::vector<long long> sample_crp(long long n, double alpha, Rng& rng);

}  // namespace bsfs::sim
