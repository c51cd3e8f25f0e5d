#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bsfs/rng.hpp"

// Replicated simulation with results independent of the thread count: reps
// are cut into fixed chunks, each chunk is accumulated in rep order, and
// chunk results are merged in chunk order.

namespace bsfs::sim {

/// Thread count from BSFS_THREADS, else hardware concurrency, at least 1.
int default_threads();

/// Running mean and variance per coordinate (Welford, Chan merge).
class MomentAccumulator {
 public:
  explicit MomentAccumulator(std::size_t dim = 0) : mean_(dim, 0.0), m2_(dim, 0.0) {}
  void add(const std::vector<double>& x);
  void merge(const MomentAccumulator& other);
  long long count() const { return count_; }
  std::size_t dim() const { return mean_.size(); }
  double mean(std::size_t i) const { return mean_[i]; }
  double variance(std::size_t i) const;
  /// standard error of the mean
  double se(std::size_t i) const;

 private:
  long long count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

/// Calls f(rep, rng, out) for rep = 0..reps-1 with rng = Rng::for_rep(seed,
/// rep) and out pre-sized to dim, accumulating out.
MomentAccumulator run_reps(long long reps, std::uint64_t seed, std::size_t dim,
                           const std::function<void(long long, Rng&, std::vector<double>&)>& f,
                           int threads = 0);

/// One replicate: LengthVector lengths (index b = 1..n-1) and Poisson SFS.
struct RepSample {
  std::vector<double> lengths;
  std::vector<long long> sfs;
  double absorption_time = 0.0;
};

RepSample simulate_rep(long long n, double theta, std::uint64_t seed, long long rep);

/// Per-rep samples (index 0 is rep 0). Memory grows as reps * n.
std::vector<RepSample> simulate_lengths_and_sfs(long long n, double theta, long long reps,
                                                std::uint64_t seed, int threads = 0);

/// Means and standard errors of l_{n,b} and SFS_{n,b}, index b (0 and n unused).
struct LengthSfsSummary {
  long long n = 0;
  long long reps = 0;
  std::vector<double> mean_length, se_length, mean_sfs, se_sfs;
};

LengthSfsSummary summarize_lengths_and_sfs(long long n, double theta, long long reps,
                                           std::uint64_t seed, int threads = 0);

/// Fractions of reps with l_{n,b} > s for each s in s_grid, with binomial SEs.
struct SurvivalEstimate {
  std::vector<double> s;
  std::vector<double> prob;
  std::vector<double> se;
};
SurvivalEstimate estimate_length_survival(long long n, long long b, const std::vector<double>& s_grid,
                                          long long reps, std::uint64_t seed, int threads = 0);

/// Absorption times of `reps` independent trajectories, in rep order.
std::vector<double> sample_absorption_times(long long n, long long reps, std::uint64_t seed,
                                            int threads = 0);

}  // namespace bsfs::sim
