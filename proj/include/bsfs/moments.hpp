#pragma once

#include <functional>

#include "bsfs/quad.hpp"

namespace bsfs::moments {

/// Sample size n, mutation rate theta and one or two family sizes.
/// Pairs are stored normalized (b1 <= b2).
struct CoalescentQuery {
  long long n = 2;
  double theta = 1.0;
  long long b1 = 1;
  long long b2 = 1;

  static CoalescentQuery single(long long n, long long b, double theta);
  static CoalescentQuery pair(long long n, long long b1, long long b2, double theta);
  void validate() const;
};

/// How the L2 term enters E[l_{n,b1} l_{n,b2}] when b1 == b2.
/// as_printed uses the published coefficient 1; diagonal_doubled uses 2,
/// which matches the exact Markov-chain moments.
enum class SecondMomentMode { as_printed, diagonal_doubled };

/// Quadrature settings used by this module unless overridden. The absolute
/// tolerance is negligible because L-values shrink like n^-2 and n^-3.
quad::QuadratureSpec default_spec();

quad::IntegralResult l1_integral(long long n, long long b, const quad::QuadratureSpec& spec);
quad::IntegralResult l2_integral(long long n, long long b1, long long b2,
                                 const quad::QuadratureSpec& spec);
quad::IntegralResult l3_integral(long long n, long long b1, long long b2,
                                 const quad::QuadratureSpec& spec);

/// E[l_{n,b}] = n L1(n,b).
double l1(long long n, long long b, const quad::QuadratureSpec& spec = default_spec());
double l2(long long n, long long b1, long long b2, const quad::QuadratureSpec& spec = default_spec());
/// Zero when b1 + b2 > n.
double l3(long long n, long long b1, long long b2, const quad::QuadratureSpec& spec = default_spec());

/// theta n L1(n,b); uses q.b1.
double expected_sfs(const CoalescentQuery& q, const quad::QuadratureSpec& spec = default_spec());
double expected_sfs(long long n, long long b, double theta);

/// E[l_{n,b1} l_{n,b2}]. Argument order is normalized.
double second_moment_lengths(long long n, long long b1, long long b2,
                             SecondMomentMode mode = SecondMomentMode::diagonal_doubled,
                             const quad::QuadratureSpec& spec = default_spec());

/// Cov(SFS_{n,b1}, SFS_{n,b2}).
double cov_sfs(const CoalescentQuery& q, SecondMomentMode mode = SecondMomentMode::diagonal_doubled,
               const quad::QuadratureSpec& spec = default_spec());

/// E[SFS_I] for the infinite coalescent, I = (x, y) in (0,1). Integrates
/// over the frequency u inside the exponent integral.
double expected_sfs_interval_infinite(double x, double y, double theta);

/// Index range [ceil(n x), floor(n y)] intersected with [1, n-1].
struct IndexRange {
  long long first = 1;
  long long last = 0;
  bool empty() const { return last < first; }
};
IndexRange interval_indices(long long n, double x, double y);

/// sum of expected_sfs over interval_indices(n, x, y).
double expected_sfs_interval_finite(long long n, double x, double y, double theta);

/// E[sum_i f(a_i)] for (a_i) ~ PD(alpha, 0):
///   sin(pi alpha)/pi * int f(u) (1-u)^{alpha-1} u^{-alpha-1} du
/// over `support` (f is taken to vanish outside it). f must be O(u) at 0.
double pd_functional_mean(double alpha, const std::function<double(double)>& f,
                          double support_lo = 0.0, double support_hi = 1.0);

/// f(u) = u^k.
double pd_power_mean(double alpha, double k);

/// Expected number of parts in (lo, hi).
double pd_interval_count_mean(double alpha, double lo, double hi);

}  // namespace bsfs::moments
