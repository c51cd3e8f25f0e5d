#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bsfs/approx.hpp"
#include "bsfs/dist.hpp"
#include "bsfs/moments.hpp"
#include "bsfs/oracle.hpp"
#include "bsfs/pd.hpp"
#include "bsfs/quad.hpp"

namespace m = bsfs::moments;
using m::SecondMomentMode;

namespace {

// L1 straight from Gamma functions, by a midpoint rule
double l1_midpoint(int n, int b, int cells) {
  double acc = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double p = (i + 0.5) / cells;
    acc += std::tgamma(b - p) * std::tgamma(n - b + p) /
           (std::tgamma(b + 1.0) * std::tgamma(n - b + 1.0) * std::tgamma(1.0 - p) * std::tgamma(1.0 + p));
  }
  return acc / cells;
}

// L2 over the triangle from Gamma functions, by a midpoint rule in (p1, v)
double l2_midpoint(int n, int b1, int b2, int cells) {
  double acc = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double p1 = (i + 0.5) / cells;
    for (int j = 0; j < cells; ++j) {
      const double p2 = p1 * (j + 0.5) / cells;
      const double x = p1 - p2;
      const int d = b2 - b1;
      const double gap = d == 0 ? 1.0 : std::tgamma(d + x) / (std::tgamma(d + 1.0) * std::tgamma(x));
      const double top = std::tgamma(b1 - p1) / (std::tgamma(b1 + 1.0) * std::tgamma(1.0 - p1));
      const double bottom = std::tgamma(n - b2 + p2) / (std::tgamma(n - b2 + 1.0) * std::tgamma(1.0 + p2));
      acc += top * gap * bottom / p1 * p1;
    }
  }
  return acc / (static_cast<double>(cells) * cells);
}

}  // namespace

TEST_CASE("hand anchors for first moments") {
  CHECK(m::expected_sfs(2, 1, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(m::expected_sfs(3, 1, 1.0) == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(m::expected_sfs(3, 2, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(m::expected_sfs(3, 2, 4.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("second moments: hand anchors and the diagonal coefficient") {
  CHECK(m::second_moment_lengths(2, 1, 1) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(m::second_moment_lengths(2, 1, 1, SecondMomentMode::as_printed) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m::second_moment_lengths(3, 1, 1) == doctest::Approx(33.0 / 4.0).epsilon(1e-12));
  CHECK(m::second_moment_lengths(3, 1, 2) == doctest::Approx(21.0 / 8.0).epsilon(1e-12));
  CHECK(m::second_moment_lengths(3, 2, 1) == doctest::Approx(21.0 / 8.0).epsilon(1e-12));
  // off the diagonal the two modes coincide
  CHECK(m::second_moment_lengths(6, 2, 4, SecondMomentMode::as_printed) ==
        doctest::Approx(m::second_moment_lengths(6, 2, 4)).epsilon(1e-14));
}

TEST_CASE("covariance anchors") {
  // Var(SFS_{2,1}) = 2 theta + 4 theta^2 with l = 2T
  const auto q = m::CoalescentQuery::pair(2, 1, 1, 1.0);
  CHECK(m::cov_sfs(q) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m::cov_sfs(m::CoalescentQuery::pair(2, 1, 1, 3.0)) == doctest::Approx(6.0 + 36.0).epsilon(1e-12));
  CHECK(m::cov_sfs(m::CoalescentQuery::pair(9, 2, 5, 1.3)) ==
        doctest::Approx(m::cov_sfs(m::CoalescentQuery::pair(9, 5, 2, 1.3))).epsilon(1e-14));
}

TEST_CASE("first and second moments equal the Markov-chain oracle for n <= 7") {
  for (int n = 2; n <= 7; ++n) {
    bsfs::sim::ExactOracle o(n);
    for (int b1 = 1; b1 < n; ++b1) {
      CHECK(m::l1(n, b1) * n == doctest::Approx(o.mean_length(b1)).epsilon(1e-10));
      for (int b2 = b1; b2 < n; ++b2) {
        CHECK(m::second_moment_lengths(n, b1, b2) == doctest::Approx(o.second_moment(b1, b2)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("L1 and L2 against Gamma-function midpoint oracles") {
  CHECK(m::l1(10, 3) == doctest::Approx(l1_midpoint(10, 3, 200000)).epsilon(1e-8));
  CHECK(m::l1(40, 1) == doctest::Approx(l1_midpoint(40, 1, 200000)).epsilon(1e-7));
  CHECK(m::l2(8, 2, 5) == doctest::Approx(l2_midpoint(8, 2, 5, 1500)).epsilon(2e-5));
  CHECK(m::l2(8, 3, 3) == doctest::Approx(l2_midpoint(8, 3, 3, 1500)).epsilon(2e-5));
}

TEST_CASE("time-weighted mass: sum_b b E[l_b] = n E[A_n]") {
  for (long long n : {5LL, 30LL, 200LL}) {
    double mass = 0.0;
    for (long long b = 1; b < n; ++b) mass += static_cast<double>(b) * m::expected_sfs(n, b, 1.0);
    // E[A_n] = int (1 - P(A_n <= s)) ds, integrated over s = t/(1-t)
    auto tail = [n](double t) {
      const double s = t / (1.0 - t);
      return (1.0 - bsfs::dist::absorption_cdf(n, s)) / ((1.0 - t) * (1.0 - t));
    };
    bsfs::quad::QuadratureSpec spec;
    spec.rel_tol = 1e-11;
    spec.max_refinements = 8;
    const double ea = bsfs::quad::value_or_throw(bsfs::quad::integrate_1d(tail, spec), "E[A_n]");
    CHECK(mass == doctest::Approx(static_cast<double>(n) * ea).epsilon(1e-9));
  }
}

TEST_CASE("large-n evaluation stays finite and matches the u-scaling") {
  for (long long n : {100000LL, 10000000LL, 1000000000LL}) {
    const double e1 = m::expected_sfs(n, 1, 1.0);
    const double eh = m::expected_sfs(n, n / 2, 1.0);
    CHECK(std::isfinite(e1));
    CHECK(eh > 0.0);
    // n^2 L1(n, b) -> f1((b-1)/(n-1)) (b-1)/b at fixed b/n
    const double r = static_cast<double>(n) * eh / bsfs::approx::f1(0.5);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("relative gap between exact and leading-order means shrinks with n") {
  for (double frac : {0.1, 0.5, 0.9}) {
    double prev = 1e300;
    for (long long n : {100LL, 1000LL, 10000LL}) {
      const long long b = static_cast<long long>(std::llround(frac * static_cast<double>(n)));
      const double u = static_cast<double>(b - 1) / static_cast<double>(n - 1);
      const double nn = static_cast<double>(n);
      const double d = std::fabs(nn * nn * m::l1(n, b) / bsfs::approx::f1(u) - static_cast<double>(b - 1) / b);
      CHECK(d < prev);
      prev = d;
    }
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(m::CoalescentQuery::single(1, 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(m::CoalescentQuery::single(5, 5, 1.0), std::domain_error);
  CHECK_THROWS_AS(m::CoalescentQuery::single(5, 0, 1.0), std::domain_error);
  CHECK_THROWS_AS(m::CoalescentQuery::single(5, 2, 0.0), std::domain_error);
  const auto q = m::CoalescentQuery::pair(9, 6, 2, 1.0);
  CHECK(q.b1 == 2);
  CHECK(q.b2 == 6);
  CHECK_THROWS_AS(m::l3(6, 4, 3), std::domain_error);
}

TEST_CASE("interval index ranges") {
  auto r = m::interval_indices(10, 0.3, 0.6);
  CHECK(r.first == 3);
  CHECK(r.last == 6);
  r = m::interval_indices(10, 0.31, 0.39);
  CHECK(r.empty());
  r = m::interval_indices(7, 0.01, 0.99);
  CHECK(r.first == 1);
  CHECK(r.last == 6);
  CHECK(m::expected_sfs_interval_finite(10, 0.31, 0.39, 1.0) == 0.0);
  CHECK(m::expected_sfs_interval_finite(12, 0.25, 0.5, 2.0) ==
        doctest::Approx(m::expected_sfs(12, 3, 2.0) + m::expected_sfs(12, 4, 2.0) + m::expected_sfs(12, 5, 2.0) +
                        m::expected_sfs(12, 6, 2.0))
            .epsilon(1e-13));
}

TEST_CASE("interval SFS of the infinite coalescent") {
  // theta int_x^y f1(u) du, integrating f1 itself
  const double x = 0.4, y = 0.6;
  const double via_f1 = bsfs::quad::value_or_throw(
      bsfs::quad::integrate_interval([](double u) { return bsfs::approx::f1(u); }, x, y), "f1 route");
  CHECK(m::expected_sfs_interval_infinite(x, y, 1.0) == doctest::Approx(via_f1).epsilon(1e-9));
  CHECK(m::expected_sfs_interval_infinite(0.3, 0.3, 1.0) == 0.0);
  CHECK(m::expected_sfs_interval_infinite(0.1, 0.2, 2.0) ==
        doctest::Approx(2.0 * m::expected_sfs_interval_infinite(0.1, 0.2, 1.0)).epsilon(1e-13));
  // finite-n sums approach it: n E[SFS_I] -> E_inf[SFS_I] since E[SFS_{n,b}] ~ f1(b/n)/n
  const double inf = m::expected_sfs_interval_infinite(x, y, 1.0);
  double prev = 1e300;
  for (long long n : {100LL, 1000LL, 10000LL}) {
    const double d = std::fabs(m::expected_sfs_interval_finite(n, x, y, 1.0) - inf);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("interval SFS of the infinite coalescent vs PD Monte Carlo") {
  // E[SFS_I] = theta int_0^inf E[#parts of PD(e^-t, 0) in I] dt; draw t ~ Exp(1)
  const double lo = 0.4, hi = 0.6;
  auto acc = bsfs::sim::run_reps(40000, 11, 1, [&](long long, bsfs::sim::Rng& rng, std::vector<double>& out) {
    const double t = rng.exponential();
    const double alpha = std::exp(-t);
    if (!(alpha < 1.0 - 1e-12)) return;
    const auto s = bsfs::sim::sample_pd(alpha, rng, 1e-3, 2000);
    out[0] = bsfs::sim::pd_interval_count(s, alpha, lo, hi) * std::exp(t);
  });
  const double exact = m::expected_sfs_interval_infinite(lo, hi, 1.0);
  CHECK(std::fabs(acc.mean(0) - exact) <= 3.0 * acc.se(0));
}

TEST_CASE("Poisson-Dirichlet functionals") {
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    CHECK(m::pd_functional_mean(a, [](double u) { return u; }) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m::pd_power_mean(a, 2.0) == doctest::Approx(1.0 - a).epsilon(1e-10));
    // E[sum a^3] = (1-a)(2-a)/2
    CHECK(m::pd_power_mean(a, 3.0) == doctest::Approx((1.0 - a) * (2.0 - a) / 2.0).epsilon(1e-10));
  }
  // at most one part can exceed 1/2
  CHECK(m::pd_interval_count_mean(0.5, 0.5, 1.0) < 1.0);
  CHECK_THROWS_AS(m::pd_functional_mean(1.0, [](double u) { return u; }), std::domain_error);
}

TEST_CASE("PD interval count vs stick-breaking Monte Carlo") {
  const auto acc = bsfs::sim::estimate_pd(0.5, 0.4, 0.6, 100000, 5);
  const double exact = m::pd_interval_count_mean(0.5, 0.4, 0.6);
  CHECK(std::fabs(acc.mean(1) - exact) <= 3.0 * acc.se(1));
}
