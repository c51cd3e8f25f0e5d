#include "bsfs/quad.hpp"
#include "bsfs/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace bsfs::quad {

namespace {

// Base mesh: dyadic grading down to 2^-kBaseDepth at each end.
constexpr int kBaseDepth = 4;

std::vector<double> base_breakpoints() {
  std::vector<double> pts;
  pts.push_back(0.0);
  for (int k = kBaseDepth; k >= 2; --k) pts.push_back(std::ldexp(1.0, -k));
  pts.push_back(0.5);
  for (int k = 2; k <= kBaseDepth; ++k) pts.push_back(1.0 - std::ldexp(1.0, -k));
  pts.push_back(1.0);
  return pts;
}

// Nodes and weights of the composite rule at refinement `level`, mapped to (0,1).
struct CompositeRule {
  std::vector<double> x;
  std::vector<double> w;
};

CompositeRule composite_rule(int order, int level) {
  const GaussRule g = gauss_legendre(order);
  std::vector<double> pts = base_breakpoints();
  for (int l = 0; l < level; ++l) {
    std::vector<double> finer;
    finer.reserve(2 * pts.size());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      finer.push_back(pts[i]);
      finer.push_back(0.5 * (pts[i] + pts[i + 1]));
    }
    finer.push_back(pts.back());
    pts.swap(finer);
  }
  CompositeRule r;
  r.x.reserve((pts.size() - 1) * g.nodes.size());
  r.w.reserve(r.x.capacity());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      r.x.push_back(mid + half * g.nodes[j]);
      r.w.push_back(half * g.weights[j]);
    }
  }
  return r;
}

double checked(double value, double x, double y) {
  if (!std::isfinite(value)) throw IntegrandError(x, y, value);
  return value;
}

template <class LevelFn>
IntegralResult refine(const QuadratureSpec& spec, LevelFn&& eval_level) {
  spec.validate();
  IntegralResult res;
  long long evals = 0;
  double prev = eval_level(0, evals);
  for (int level = 1; level <= spec.max_refinements; ++level) {
    const double cur = eval_level(level, evals);
    const double err = std::fabs(cur - prev);
    res.value = cur;
    res.error_estimate = err;
    res.evaluations = evals;
    if (err <= std::max(spec.rel_tol * std::fabs(cur), spec.abs_tol)) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  if (spec.max_refinements == 0) {
    res.value = prev;
    res.error_estimate = std::fabs(prev);
    res.evaluations = evals;
  }
  return res;
}

double eval_1d(const Fn1& f, const CompositeRule& r) {
  std::vector<double> terms(r.x.size());
  for (std::size_t i = 0; i < r.x.size(); ++i) terms[i] = r.w[i] * checked(f(r.x[i]), r.x[i], 0.0);
  return pairwise_sum(terms.data(), terms.size());
}

double eval_triangle(const Fn2& f, const CompositeRule& r, bool swap) {
  const std::size_t n = r.x.size();
  std::vector<double> rows(n);
  std::vector<double> inner(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p1 = r.x[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double p2 = p1 * r.x[j];
      const double v = swap ? f(p2, p1) : f(p1, p2);
      inner[j] = r.w[j] * (swap ? checked(v, p2, p1) : checked(v, p1, p2));
    }
    rows[i] = r.w[i] * p1 * pairwise_sum(inner.data(), n);
  }
  return pairwise_sum(rows.data(), n);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (node_count_per_panel < 2) throw std::invalid_argument("QuadratureSpec: node_count_per_panel < 2");
  if (max_refinements < 0) throw std::invalid_argument("QuadratureSpec: max_refinements < 0");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
}

IntegrandError::IntegrandError(double x, double y, double value)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "integrand returned " << value << " at (" << x << ", " << y << ")";
        return os.str();
      }()),
      x_(x),
      y_(y) {}

GaussRule gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  GaussRule g;
  g.nodes.assign(order, 0.0);
  g.weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(specfun::kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p0 / dp;
      if (std::fabs(z - z1) < 1e-16) break;
    }
    g.nodes[i] = -z;
    g.nodes[order - 1 - i] = z;
    g.weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    g.weights[order - 1 - i] = g.weights[i];
  }
  cache.emplace(order, g);
  return g;
}

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(data, h) + pairwise_sum(data + h, n - h);
}

IntegralResult integrate_1d(const Fn1& f, const QuadratureSpec& spec) {
  return refine(spec, [&](int level, long long& evals) {
    const CompositeRule r = composite_rule(spec.node_count_per_panel, level);
    evals += static_cast<long long>(r.x.size());
    return eval_1d(f, r);
  });
}

IntegralResult integrate_interval(const Fn1& f, double a, double b, const QuadratureSpec& spec) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integrate_interval: bad limits");
  if (a == b) {
    IntegralResult r;
    r.converged = true;
    return r;
  }
  const double len = b - a;
  IntegralResult r = integrate_1d([&](double t) { return len * f(a + len * t); }, spec);
  return r;
}

IntegralResult integrate_triangle(const Fn2& f, const QuadratureSpec& spec) {
  return refine(spec, [&](int level, long long& evals) {
    const CompositeRule r = composite_rule(spec.node_count_per_panel, level);
    evals += static_cast<long long>(r.x.size() * r.x.size());
    return eval_triangle(f, r, false);
  });
}

IntegralResult integrate_square(const Fn2& f, const QuadratureSpec& spec) {
  return refine(spec, [&](int level, long long& evals) {
    const CompositeRule r = composite_rule(spec.node_count_per_panel, level);
    evals += 2 * static_cast<long long>(r.x.size() * r.x.size());
    return eval_triangle(f, r, false) + eval_triangle(f, r, true);
  });
}

double value_or_throw(const IntegralResult& r, const std::string& what) {
  if (!r.converged) {
    std::ostringstream os;
    os.precision(6);
    os << what << ": quadrature did not converge (estimate " << r.value << ", error "
       << r.error_estimate << ")";
    throw NonConvergenceError(os.str(), r);
  }
  return r.value;
}

}  // namespace bsfs::quad
