#include "bsfs/dist.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bsfs/approx.hpp"
#include "bsfs/specfun.hpp"

namespace bsfs::dist {

namespace sf = bsfs::specfun;

namespace {

void check_large(long long n, long long b, const char* what) {
  if (n < 3 || 2 * b <= n || b >= n) {
    throw std::domain_error(std::string(what) + ": need n/2 < b < n, got n=" + std::to_string(n) +
                            ", b=" + std::to_string(b));
  }
}

void check_time(double s, const char* what) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::domain_error(std::string(what) + ": s must be finite and >= 0");
}

// (Psi(b-p) - Psi(1-p)) / Be(b-1, 1-p), b >= 2
double top_density(long long b, double p) {
  return sf::digamma_diff(b, p) * std::exp(-sf::log_beta(static_cast<double>(b - 1), 1.0 - p));
}

}  // namespace

quad::QuadratureSpec dist_spec() {
  quad::QuadratureSpec s;
  s.rel_tol = 1e-12;
  s.abs_tol = 1e-300;
  s.max_refinements = 7;
  return s;
}

double surv_length_large_family(long long n, long long b, double s) {
  check_large(n, b, "surv_length_large_family");
  check_time(s, "surv_length_large_family");
  const double k = static_cast<double>(n - b);
  const double es = std::exp(-s);
  if (es == 0.0) return 0.0;
  auto integrand = [&](double p) {
    return top_density(b, p) * std::exp(-sf::log_beta(k, es * p));
  };
  const double bb = static_cast<double>(b);
  const double pre = static_cast<double>(n) / (k * bb * (bb - 1.0));
  return pre * quad::value_or_throw(quad::integrate_1d(integrand, dist_spec()), "surv_length_large_family");
}

double limit_conditional_surv(double u, double s) {
  if (!(u >= 0.5 && u < 1.0)) throw std::domain_error("limit_conditional_surv: u must lie in [1/2, 1)");
  check_time(s, "limit_conditional_surv");
  const double alpha = std::log1p(-u) - std::log(u);
  return approx::g_limit(alpha - s) / approx::g_limit(alpha);
}

BlockScaling prob_block_scaling(long long n, long long b) {
  check_large(n, b, "prob_block_scaling");
  const double nn = static_cast<double>(n);
  const double u = static_cast<double>(b) / nn;
  BlockScaling r;
  r.exact = nn * surv_length_large_family(n, b, 0.0) / std::log(nn);
  r.limit = approx::g_limit(std::log1p(-u) - std::log(u)) / (u * (1.0 - u));
  return r;
}

double root_min_surv(long long n, double s) {
  if (n < 2) throw std::domain_error("root_min_surv: n must be >= 2");
  check_time(s, "root_min_surv");
  const double q = std::exp(-s);
  if (q == 0.0) return 0.0;
  const double m = static_cast<double>(n - 1);
  return std::exp(-std::log(m) - sf::log_beta(m, q));
}

double absorption_cdf(long long n, double s) {
  if (n < 2) throw std::domain_error("absorption_cdf: n must be >= 2");
  check_time(s, "absorption_cdf");
  if (s == 0.0) return 0.0;
  const double q = -std::expm1(-s);
  const double m = static_cast<double>(n - 1);
  return std::exp(-std::log(m) - sf::log_beta(m, q));
}

double root_gap_surv(long long n1, long long n2, double s) {
  if (n1 < 2 || n2 < 2) throw std::domain_error("root_gap_surv: n1, n2 must be >= 2");
  check_time(s, "root_gap_surv");
  const double es = std::exp(-s);
  if (es == 0.0) return 0.0;
  const double k = static_cast<double>(n2 - 1);
  auto integrand = [&](double p) { return top_density(n1, p) * std::exp(-sf::log_beta(k, es * p)); };
  const double pre = 1.0 / (static_cast<double>(n1 - 1) * k);
  return pre * quad::value_or_throw(quad::integrate_1d(integrand, dist_spec()), "root_gap_surv");
}

double root_edge_laws(long long n, double s, RootEdgeLaw which, long long n2) {
  switch (which) {
    case RootEdgeLaw::min:
      return root_min_surv(n, s);
    case RootEdgeLaw::max:
      return absorption_cdf(n, s);
    case RootEdgeLaw::gap:
      return root_gap_surv(n, n2, s);
  }
  throw std::domain_error("root_edge_laws: unknown law");
}

void LargeFamilyChain::validate() const {
  if (b.empty()) throw std::domain_error("LargeFamilyChain: empty chain");
  if (b.size() != s.size()) throw std::domain_error("LargeFamilyChain: b and s differ in length");
  if (2 * b.front() <= n) throw std::domain_error("LargeFamilyChain: need b1 > n/2");
  if (b.back() >= n) throw std::domain_error("LargeFamilyChain: need bm < n");
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] <= b[i - 1]) throw std::domain_error("LargeFamilyChain: b must be strictly increasing");
  }
  for (double si : s) check_time(si, "LargeFamilyChain");
}

double joint_large_family(const LargeFamilyChain& chain, bool minimal, JointNormalization norm) {
  chain.validate();
  const long long n = chain.n;
  const std::size_t m = chain.b.size();
  const double md = static_cast<double>(m);
  double weighted = 0.0;
  for (std::size_t i = 0; i < m; ++i) weighted += static_cast<double>(m - i) * chain.s[i];
  // n / ((b2-b1) ... (n-bm)) in log form; b1 itself is handled below
  double log_pre = std::log(static_cast<double>(n)) - weighted - sf::log_gamma(md + 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const long long next = (i + 1 < m) ? chain.b[i + 1] : n;
    log_pre -= std::log(static_cast<double>(next - chain.b[i]));
  }
  const long long b1 = chain.b.front();
  const double bb1 = static_cast<double>(b1);
  const bool corrected = norm == JointNormalization::corrected;
  auto density = [corrected](long long b, double p) {
    const double d = top_density(b, p);
    return corrected ? d / static_cast<double>(b - 1) : d;
  };
  auto integrand = [&](double p) {
    const double pm = std::pow(p, md);
    double v = pm / bb1 * density(b1, p);
    if (minimal) {
      double acc = 0.0;
      for (long long b = n / 2 + 1; b < b1; ++b) {
        acc += density(b, p) / (static_cast<double>(b) * static_cast<double>(b1 - b));
      }
      v -= pm * p / (md + 1.0) * acc;
    }
    return v;
  };
  const double integral =
      quad::value_or_throw(quad::integrate_1d(integrand, dist_spec()), "joint_large_family");
  return std::exp(log_pre) * integral;
}

std::vector<LargeFamilyChain> chains_from(long long n, long long b1) {
  check_large(n, b1, "chains_from");
  const long long free = n - 1 - b1;
  if (free > 20) throw std::domain_error("chains_from: too many chains to enumerate");
  std::vector<LargeFamilyChain> out;
  for (long long mask = 0; mask < (1LL << free); ++mask) {
    LargeFamilyChain c;
    c.n = n;
    c.b.push_back(b1);
    for (long long j = 0; j < free; ++j) {
      if (mask & (1LL << j)) c.b.push_back(b1 + 1 + j);
    }
    c.s.assign(c.b.size(), 0.0);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace bsfs::dist
