#pragma once

// Special-function kernel shared by the closed-form density results.
//
// All functions are pure. Factorial and gamma ratios are formed through
// log-gamma and exponentiated once so that orders up to the derivative cap
// (64) stay representable.

#include <span>
#include <vector>

namespace mixagg::specfun {

/// a (a-1) ... (a-k+1). Note the falling convention; k = 0 gives 1.
double falling_factorial(double a, int k);

/// Thread-safe log|Gamma(x)|.
double log_gamma(double x);

/// log of the binomial coefficient C(n, k) for real n >= k >= 0.
double log_binomial(double n, double k);

/// Partial (incomplete exponential) Bell polynomial B_{n,k}(x_1..x_{n-k+1}).
/// Throws DimensionMismatch unless x.size() == n - k + 1, DomainError unless
/// 1 <= k <= n.
double bell_partial(int n, int k, std::span<const double> x);

/// Row n of the Bell triangle: element k-1 holds B_{n,k}(x_1..x_{n-k+1}) for
/// k = 1..n. x must carry at least n entries (x_1..x_n); only the needed
/// prefix is read for each k.
std::vector<double> bell_row(int n, std::span<const double> x);

/// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt.
/// Any real s with x > 0; s > 0 when x = 0.
double upper_incomplete_gamma(double s, double x);

/// Regularized lower incomplete gamma P(a, x), the unit-scale gamma cdf.
double gamma_cdf(double shape, double x);

/// Regularized upper incomplete gamma Q(a, x).
double gamma_survival(double shape, double x);

/// e^z E_1(z) = e^z Gamma(0, z) for z > 0, without forming either factor.
double scaled_exponential_integral(double z);

/// Unit-scale gamma quantile: the x with P(alpha, x) = p, 0 <= p < 1.
double gamma_quantile(double alpha, double p);

/// Upper-tail counterpart: the x with Q(alpha, x) = q, 0 < q <= 1. Avoids
/// forming 1 - q when q is close to 1.
double gamma_quantile_upper(double alpha, double q);

/// Modified Bessel K of half-integer order, K_{n+1/2}(x), from the finite sum.
double bessel_k_half(int n, double x);

/// log K_{n+1/2}(x); stays finite where the value itself under/overflows.
double log_bessel_k_half(int n, double x);

/// int_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt, without the 1/Gamma(a)
/// prefactor of the standard Tricomi U. Requires a > 0, z > 0.
/// log_scale is added to the exponent of the integrand before integrating, so
/// e^{log_scale} U stays finite when U alone would overflow.
double kummer_u_integral(double a, double b, double z, double log_scale = 0.0);

}  // namespace mixagg::specfun
