#pragma once

// Shape functions and closed-form approximations of the expected SFS. Nothing
// here calls the exact L-integrals of bsfs::moments.

namespace bsfs::approx {

/// int_0^1 u^{-p-1} (1-u)^{p-1} sin(pi p)/(pi p) dp, 0 < u < 1.
double f1(double u);

/// Closed-form second-order correction term, 0 < u < 1.
double g1(double u);

/// Double integral over {0 < p2 < p1 < 1}; requires 0 < u1 < u2 < 1.
double f2(double u1, double u2);

/// Double integral over (0,1)^2; requires u1, u2 > 0 and u1 + u2 < 1.
double f3(double u1, double u2);

enum class SfsApprox { basic, refined, singleton };

/// basic and refined need 2 <= b <= n-1; singleton needs b == 1.
double approx_sfs(long long n, long long b, double theta, SfsApprox variant);

enum class Regime { singleton, small_b, proportional, large_b };

/// Leading-order large-n prediction of E[SFS_{n,b}] in the given regime:
///   singleton     theta n / log n
///   small_b       theta n / (b (b-1) log^2(n/b))
///   proportional  theta f1(b/n) / n
///   large_b       theta / ((n-b) log(n/(n-b)))
double asymptotic_sfs(long long n, long long b, double theta, Regime regime);

/// G(x) = int_0^1 e^{px} sin(pi p)/pi dp = (1 + e^x)/(pi^2 + x^2).
double g_limit(double x);

}  // namespace bsfs::approx
