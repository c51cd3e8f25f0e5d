#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsfs::quad {

struct QuadratureSpec {
  int node_count_per_panel = 12;
  int max_refinements = 6;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;

  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  long long evaluations = 0;
};

/// Raised when an integrand returns NaN or an infinity.
class IntegrandError : public std::runtime_error {
 public:
  IntegrandError(double x, double y, double value);
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double x_;
  double y_;
};

/// Raised by callers that require convergence (see value_or_throw).
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, IntegralResult best)
      : std::runtime_error(what), best_(best) {}
  const IntegralResult& best() const noexcept { return best_; }

 private:
  IntegralResult best_;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

/// Integral over (0,1). Composite Gauss-Legendre on a panel mesh graded
/// dyadically toward both endpoints; every refinement bisects all panels and
/// the error estimate is the change between successive levels. The
/// integrand is never evaluated at 0 or 1.
IntegralResult integrate_1d(const Fn1& f, const QuadratureSpec& spec = {});

/// Integral over (a,b) by the affine image of integrate_1d.
IntegralResult integrate_interval(const Fn1& f, double a, double b,
                                  const QuadratureSpec& spec = {});

/// Integral over the triangle {0 < p2 < p1 < 1}, via p2 = p1 v with v in (0,1).
IntegralResult integrate_triangle(const Fn2& f, const QuadratureSpec& spec = {});

/// Integral over (0,1)^2. The square is split along the diagonal into two
/// triangles so integrands with a kink on p1 = p2 (as 1/(p1 v p2)) are
/// integrated at the full Gauss order.
IntegralResult integrate_square(const Fn2& f, const QuadratureSpec& spec = {});

/// Returns r.value, or throws NonConvergenceError naming `what`.
double value_or_throw(const IntegralResult& r, const std::string& what);

/// Pairwise (cascade) summation; the reduction order depends only on the size.
double pairwise_sum(const double* data, std::size_t n);

}  // namespace bsfs::quad
