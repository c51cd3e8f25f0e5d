#include "bsfs/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bsfs/specfun.hpp"

namespace bsfs::moments {

namespace sf = bsfs::specfun;

namespace {

void check_single(long long n, long long b, const char* what) {
  if (n < 2) throw std::domain_error(std::string(what) + ": n must be >= 2");
  if (b < 1 || b > n - 1) {
    throw std::domain_error(std::string(what) + ": b must lie in [1, n-1], got b=" +
                            std::to_string(b) + ", n=" + std::to_string(n));
  }
}

void check_pair(long long n, long long b1, long long b2, const char* what) {
  check_single(n, b1, what);
  check_single(n, b2, what);
  if (b1 > b2) throw std::domain_error(std::string(what) + ": requires b1 <= b2");
}

// ln[ Gamma(b - p) / (Gamma(b + 1) Gamma(1 - p)) ]
double log_top_factor(long long b, double p) {
  return sf::log_gamma_ratio(static_cast<double>(b) + 1.0, -1.0 - p) - sf::log_gamma(1.0 - p);
}

// ln[ Gamma(k + p) / (Gamma(k + 1) Gamma(1 + p)) ], k >= 1
double log_bottom_factor(long long k, double p) {
  return sf::log_gamma_ratio(static_cast<double>(k) + 1.0, p - 1.0) - sf::log_gamma(1.0 + p);
}

// ln[ Gamma(d + x) / (Gamma(d + 1) Gamma(x)) ]. For d = 0 this is 0; for small d
// it is the product x (x+1) ... (x+d-1) / d!, which never forms Gamma(x) itself.
double log_gap_factor(long long d, double x) {
  if (d == 0) return 0.0;
  if (d <= 16) return sf::log_rising(x, d) - sf::log_gamma(static_cast<double>(d) + 1.0);
  return sf::log_gamma_ratio(static_cast<double>(d) + 1.0, x - 1.0) - sf::log_gamma(x);
}

}  // namespace

CoalescentQuery CoalescentQuery::single(long long n, long long b, double theta) {
  CoalescentQuery q{n, theta, b, b};
  q.validate();
  return q;
}

CoalescentQuery CoalescentQuery::pair(long long n, long long b1, long long b2, double theta) {
  CoalescentQuery q{n, theta, std::min(b1, b2), std::max(b1, b2)};
  q.validate();
  return q;
}

void CoalescentQuery::validate() const {
  check_pair(n, b1, b2, "CoalescentQuery");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw std::domain_error("CoalescentQuery: theta must be > 0");
}

quad::QuadratureSpec default_spec() {
  quad::QuadratureSpec s;
  s.rel_tol = 1e-11;
  s.abs_tol = 1e-300;
  return s;
}

quad::IntegralResult l1_integral(long long n, long long b, const quad::QuadratureSpec& spec) {
  check_single(n, b, "l1");
  return quad::integrate_1d(
      [n, b](double p) { return std::exp(log_top_factor(b, p) + log_bottom_factor(n - b, p)); },
      spec);
}

quad::IntegralResult l2_integral(long long n, long long b1, long long b2,
                                 const quad::QuadratureSpec& spec) {
  check_pair(n, b1, b2, "l2");
  const long long d = b2 - b1;
  return quad::integrate_triangle(
      [n, b1, b2, d](double p1, double p2) {
        const double x = p1 - p2;
        const double lg = log_top_factor(b1, p1) + log_gap_factor(d, x) +
                          log_bottom_factor(n - b2, p2) - std::log(p1);
        return std::exp(lg);
      },
      spec);
}

quad::IntegralResult l3_integral(long long n, long long b1, long long b2,
                                 const quad::QuadratureSpec& spec) {
  check_pair(n, b1, b2, "l3");
  if (b1 + b2 > n) {
    quad::IntegralResult zero;
    zero.converged = true;
    return zero;
  }
  const long long r = n - b1 - b2;
  return quad::integrate_square(
      [b1, b2, r](double p1, double p2) {
        const double lg = log_top_factor(b1, p1) + log_top_factor(b2, p2) +
                          log_gap_factor(r, p1 + p2) - std::log(std::max(p1, p2));
        return std::exp(lg);
      },
      spec);
}

double l1(long long n, long long b, const quad::QuadratureSpec& spec) {
  return quad::value_or_throw(l1_integral(n, b, spec), "l1");
}

double l2(long long n, long long b1, long long b2, const quad::QuadratureSpec& spec) {
  return quad::value_or_throw(l2_integral(n, b1, b2, spec), "l2");
}

double l3(long long n, long long b1, long long b2, const quad::QuadratureSpec& spec) {
  return quad::value_or_throw(l3_integral(n, b1, b2, spec), "l3");
}

double expected_sfs(const CoalescentQuery& q, const quad::QuadratureSpec& spec) {
  q.validate();
  return q.theta * static_cast<double>(q.n) * l1(q.n, q.b1, spec);
}

double expected_sfs(long long n, long long b, double theta) {
  return expected_sfs(CoalescentQuery::single(n, b, theta));
}

double second_moment_lengths(long long n, long long b1, long long b2, SecondMomentMode mode,
                             const quad::QuadratureSpec& spec) {
  if (b1 > b2) std::swap(b1, b2);
  check_pair(n, b1, b2, "second_moment_lengths");
  const double nn = static_cast<double>(n);
  double l2term = nn * l2(n, b1, b2, spec);
  if (b1 == b2 && mode == SecondMomentMode::diagonal_doubled) l2term *= 2.0;
  const double l3term = (b1 + b2 <= n) ? nn * l3(n, b1, b2, spec) : 0.0;
  return l2term + l3term;
}

double cov_sfs(const CoalescentQuery& q, SecondMomentMode mode, const quad::QuadratureSpec& spec) {
  q.validate();
  const double nn = static_cast<double>(q.n);
  const double m1 = l1(q.n, q.b1, spec);
  const double m2 = (q.b1 == q.b2) ? m1 : l1(q.n, q.b2, spec);
  const double second = second_moment_lengths(q.n, q.b1, q.b2, mode, spec);
  double cov = q.theta * q.theta * (second - nn * nn * m1 * m2);
  if (q.b1 == q.b2) cov += q.theta * nn * m1;
  return cov;
}

double expected_sfs_interval_infinite(double x, double y, double theta) {
  if (!(x > 0.0 && y < 1.0 && x <= y)) {
    throw std::domain_error("expected_sfs_interval_infinite: need 0 < x <= y < 1");
  }
  if (!(theta > 0.0)) throw std::domain_error("expected_sfs_interval_infinite: theta must be > 0");
  if (x == y) return 0.0;
  const quad::QuadratureSpec spec = default_spec();
  // theta * int_0^1 sinc(p) int_x^y u^{-p-1} (1-u)^{p-1} du dp
  auto outer = [&](double p) {
    auto inner = [p](double u) {
      return std::exp(-(p + 1.0) * std::log(u) + (p - 1.0) * std::log1p(-u));
    };
    const double in = quad::value_or_throw(quad::integrate_interval(inner, x, y, spec),
                                           "expected_sfs_interval_infinite(inner)");
    return sf::sinc_pi(p) * in;
  };
  return theta *
         quad::value_or_throw(quad::integrate_1d(outer, spec), "expected_sfs_interval_infinite");
}

IndexRange interval_indices(long long n, double x, double y) {
  if (n < 2) throw std::domain_error("interval_indices: n must be >= 2");
  if (!(x > 0.0 && x < y && y < 1.0)) throw std::domain_error("interval_indices: need 0 < x < y < 1");
  const double nn = static_cast<double>(n);
  // n*x that is an integer up to rounding is treated as that integer
  auto snap = [nn](double v) {
    const double r = std::round(v);
    return std::fabs(v - r) <= 1e-9 * nn ? r : v;
  };
  IndexRange r;
  r.first = std::max<long long>(1, static_cast<long long>(std::ceil(snap(nn * x))));
  r.last = std::min<long long>(n - 1, static_cast<long long>(std::floor(snap(nn * y))));
  return r;
}

double expected_sfs_interval_finite(long long n, double x, double y, double theta) {
  const IndexRange r = interval_indices(n, x, y);
  double acc = 0.0;
  for (long long b = r.first; b <= r.last; ++b) acc += expected_sfs(n, b, theta);
  return acc;
}

double pd_functional_mean(double alpha, const std::function<double(double)>& f, double lo,
                          double hi) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("pd_functional_mean: alpha must lie in (0,1)");
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw std::domain_error("pd_functional_mean: bad support");
  const quad::QuadratureSpec spec = default_spec();
  double total = 0.0;
  // (0, 1/2]: u = w^q, q = 1/(1-alpha) turns u^{-alpha-1} du into q w^{-q} dw.
  if (lo < 0.5) {
    const double top = std::min(hi, 0.5);
    const double q = 1.0 / (1.0 - alpha);
    const double w_lo = std::pow(lo, 1.0 - alpha);
    const double w_hi = std::pow(top, 1.0 - alpha);
    auto g = [&](double w) {
      const double u = std::max(std::pow(w, q), 1e-300);
      return q * (f(u) / u) * std::exp((alpha - 1.0) * std::log1p(-u));
    };
    total += quad::value_or_throw(quad::integrate_interval(g, w_lo, w_hi, spec), "pd_functional_mean");
  }
  // [1/2, 1): 1 - u = z^{1/alpha} turns (1-u)^{alpha-1} du into dz / alpha.
  if (hi > 0.5) {
    const double bottom = std::max(lo, 0.5);
    const double r = 1.0 / alpha;
    const double z_lo = std::pow(1.0 - hi, alpha);
    const double z_hi = std::pow(1.0 - bottom, alpha);
    auto g = [&](double z) {
      const double u = 1.0 - std::pow(z, r);
      return r * f(u) * std::exp((-alpha - 1.0) * std::log(u));
    };
    total += quad::value_or_throw(quad::integrate_interval(g, z_lo, z_hi, spec), "pd_functional_mean");
  }
  return sf::sin_pi(alpha) / sf::kPi * total;
}

double pd_power_mean(double alpha, double k) {
  if (!(k >= 1.0)) throw std::domain_error("pd_power_mean: k must be >= 1");
  return pd_functional_mean(alpha, [k](double u) { return std::pow(u, k); });
}

double pd_interval_count_mean(double alpha, double lo, double hi) {
  if (!(lo > 0.0 && lo <= hi && hi <= 1.0)) throw std::domain_error("pd_interval_count_mean: need 0 < lo <= hi <= 1");
  return pd_functional_mean(alpha, [](double) { return 1.0; }, lo, hi);
}

}  // namespace bsfs::moments
