#include "bsfs/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bsfs/quad.hpp"
#include "bsfs/specfun.hpp"

namespace bsfs::approx {

namespace sf = bsfs::specfun;

namespace {

quad::QuadratureSpec shape_spec() {
  quad::QuadratureSpec s;
  s.rel_tol = 1e-11;
  s.abs_tol = 1e-300;
  return s;
}

void check_unit(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error(std::string(what) + ": u must lie in (0,1), got " + std::to_string(u));
  }
}

}  // namespace

double f1(double u) {
  check_unit(u, "f1");
  const double lu = std::log(u);
  const double l1u = std::log1p(-u);
  auto integrand = [lu, l1u](double p) {
    return std::exp(-(p + 1.0) * lu + (p - 1.0) * l1u) * sf::sinc_pi(p);
  };
  return quad::value_or_throw(quad::integrate_1d(integrand, shape_spec()), "f1");
}

double g1(double u) {
  check_unit(u, "g1");
  const double l = std::log1p(-u) - std::log(u);
  const double pi2 = sf::kPi * sf::kPi;
  const double den = pi2 + l * l;
  const double v = u * (1.0 - u);
  return (pi2 + l * l + 2.0 * l / u) / (den * den) / (2.0 * v * v);
}

double f2(double u1, double u2) {
  if (!(u1 > 0.0 && u1 < u2 && u2 < 1.0)) throw std::domain_error("f2: need 0 < u1 < u2 < 1");
  const double lu1 = std::log(u1);
  const double lgap = std::log(u2 - u1);
  const double l1u2 = std::log1p(-u2);
  auto integrand = [=](double p1, double p2) {
    const double x = p1 - p2;
    const double lg = -(p1 + 1.0) * lu1 + (x - 1.0) * lgap + (p2 - 1.0) * l1u2 - std::log(p1) -
                      sf::log_gamma(1.0 - p1) - sf::log_gamma(x) - sf::log_gamma(1.0 + p2);
    return std::exp(lg);
  };
  return quad::value_or_throw(quad::integrate_triangle(integrand, shape_spec()), "f2");
}

double f3(double u1, double u2) {
  if (!(u1 > 0.0 && u2 > 0.0 && u1 + u2 < 1.0)) throw std::domain_error("f3: need u1, u2 > 0, u1 + u2 < 1");
  const double lu1 = std::log(u1);
  const double lu2 = std::log(u2);
  const double lrest = std::log1p(-(u1 + u2));
  auto integrand = [=](double p1, double p2) {
    const double s = p1 + p2;
    const double lg = -(p1 + 1.0) * lu1 - (p2 + 1.0) * lu2 + (s - 1.0) * lrest -
                      sf::log_gamma(1.0 - p1) - sf::log_gamma(1.0 - p2) -
                      std::log(std::max(p1, p2)) - sf::log_gamma(s);
    return std::exp(lg);
  };
  return quad::value_or_throw(quad::integrate_square(integrand, shape_spec()), "f3");
}

double approx_sfs(long long n, long long b, double theta, SfsApprox variant) {
  if (n < 2) throw std::domain_error("approx_sfs: n must be >= 2");
  if (!(theta > 0.0)) throw std::domain_error("approx_sfs: theta must be > 0");
  const double nn = static_cast<double>(n);
  const double bb = static_cast<double>(b);
  if (variant == SfsApprox::singleton) {
    if (b != 1) throw std::domain_error("approx_sfs: singleton variant requires b = 1");
    const double lm = std::log(nn - 1.0);
    auto integrand = [lm](double p) { return std::exp((p - 1.0) * lm - sf::log_gamma(1.0 + p)); };
    return theta * nn * quad::value_or_throw(quad::integrate_1d(integrand, shape_spec()), "approx_sfs");
  }
  if (b < 2 || b > n - 1) {
    throw std::domain_error("approx_sfs: basic/refined variants require 2 <= b <= n-1");
  }
  const double u = (bb - 1.0) / (nn - 1.0);
  const double w = (bb - 1.0) / bb;
  if (variant == SfsApprox::basic) return theta / (nn - 1.0) * w * f1(u);
  const double m = nn - 1.0;
  return theta * nn * w * (f1(u) / (m * m) - g1(u) / (m * m * m));
}

double asymptotic_sfs(long long n, long long b, double theta, Regime regime) {
  if (n < 2 || b < 1 || b > n - 1) throw std::domain_error("asymptotic_sfs: need 1 <= b <= n-1");
  const double nn = static_cast<double>(n);
  const double bb = static_cast<double>(b);
  switch (regime) {
    case Regime::singleton:
      if (b != 1) throw std::domain_error("asymptotic_sfs: singleton regime requires b = 1");
      return theta * nn / std::log(nn);
    case Regime::small_b: {
      if (b < 2) throw std::domain_error("asymptotic_sfs: small_b regime requires b >= 2");
      const double l = std::log(nn / bb);
      return theta * nn / (bb * (bb - 1.0) * l * l);
    }
    case Regime::proportional:
      return theta * f1(bb / nn) / nn;
    case Regime::large_b: {
      const double k = nn - bb;
      return theta / (k * std::log(nn / k));
    }
  }
  throw std::domain_error("asymptotic_sfs: unknown regime");
}

double g_limit(double x) {
  if (!std::isfinite(x)) throw std::domain_error("g_limit: x must be finite");
  const double den = std::log(sf::kPi * sf::kPi + x * x);
  // ln(1 + e^x), without overflow for large x
  const double num = x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  return std::exp(num - den);
}

}  // namespace bsfs::approx
