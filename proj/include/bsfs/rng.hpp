#pragma once

#include <cstdint>
#include <random>

// Random variates built on std::mt19937_64 with our own transforms, so a
// given seed yields the same stream with every standard library.

namespace bsfs::sim {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Independent stream for replicate `rep` of a run seeded with `seed`.
  static Rng for_rep(std::uint64_t seed, std::uint64_t rep);

  std::uint64_t next() { return eng_(); }
  /// Uniform on (0,1), 53 random bits, never 0 or 1.
  double uniform();
  /// Uniform integer in [0, bound), bound >= 1, no modulo bias.
  std::uint64_t below(std::uint64_t bound);
  double exponential();
  double normal();
  double gamma(double shape);
  double beta(double a, double b);
  long long poisson(double mean);

 private:
  std::mt19937_64 eng_;
};

}  // namespace bsfs::sim
