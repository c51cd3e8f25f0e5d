#pragma once

#include <vector>

#include "bsfs/quad.hpp"

// Distribution functions of large-family branch lengths and of the edges
// attached to the root of a random recursive tree.

namespace bsfs::dist {

/// P(l_{n,b} > s) for n/2 < b < n (strict; b == n/2 is rejected), s >= 0.
double surv_length_large_family(long long n, long long b, double s);

/// Limit of P(log(n) l_{n,b} > s | l_{n,b} > 0) as b/n -> u, 1/2 <= u < 1.
double limit_conditional_surv(double u, double s);

/// exact = n P(l_{n,b} > 0) / log n, limit = G(alpha) / (u (1-u)) with u = b/n.
struct BlockScaling {
  double exact = 0.0;
  double limit = 0.0;
};
BlockScaling prob_block_scaling(long long n, long long b);

/// P(m(T) > s): minimum of the root edges of a size-n tree.
double root_min_surv(long long n, double s);

/// P(M(T) <= s): maximum of the root edges, i.e. the absorption time CDF.
double absorption_cdf(long long n, double s);

/// P(m(T2) - M(T1) > s) for independent trees of sizes n1, n2 >= 2.
double root_gap_surv(long long n1, long long n2, double s);

enum class RootEdgeLaw { min, max, gap };

/// Dispatcher over the three laws above; n2 is only read for gap (n is n1).
double root_edge_laws(long long n, double s, RootEdgeLaw which, long long n2 = 0);

/// b strictly increasing with n/2 < b[0] and b.back() < n; s >= 0, same length.
struct LargeFamilyChain {
  long long n = 3;
  std::vector<long long> b;
  std::vector<double> s;

  void validate() const;
};

/// corrected divides every Be(b-1, 1-p) term by (b-1), as the derivative of
/// the absorption CDF of a size-b tree requires; as_printed omits it and then
/// overstates the probability by the factor b1 - 1 (exact only for b1 = 2).
enum class JointNormalization { corrected, as_printed };

/// Probability that the family of size b[0] lives longer than s[0], then grows
/// through exactly the sizes b[1], ... (each living longer than s[i]) before
/// it merges into the root. With minimal=true the family must additionally
/// be the first one of size > n/2.
double joint_large_family(const LargeFamilyChain& chain, bool minimal = false,
                          JointNormalization norm = JointNormalization::corrected);

/// All chains starting at b1 (b1 followed by any subset of {b1+1, ..., n-1}),
/// with zero times. Their probabilities add up to P(l_{n,b1} > 0).
std::vector<LargeFamilyChain> chains_from(long long n, long long b1);

quad::QuadratureSpec dist_spec();

}  // namespace bsfs::dist
