#include "mixagg/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mixagg/errors.hpp"
#include "mixagg/quadrature.hpp"
#include "detail/roots.hpp"

namespace mixagg::specfun {

namespace {

double log_sum_exp(const std::vector<double>& terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

}  // namespace

double falling_factorial(double a, int k) {
  if (k < 0) throw DomainError("falling_factorial: order must be nonnegative");
  double product = 1.0;
  for (int i = 0; i < k; ++i) product *= (a - i);
  return product;
}

double log_gamma(double x) { return boost::math::lgamma(x); }

double log_binomial(double n, double k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

std::vector<double> bell_row(int n, std::span<const double> x) {
  if (n < 1) throw DomainError("bell_row: n must be >= 1");
  if (static_cast<int>(x.size()) < n) {
    throw DimensionMismatch("bell_row: need " + std::to_string(n) + " arguments, got " +
                            std::to_string(x.size()));
  }
  // Pascal rows up to n-1, as doubles.
  std::vector<std::vector<double>> choose(n);
  for (int m = 0; m < n; ++m) {
    choose[m].assign(m + 1, 1.0);
    for (int j = 1; j < m; ++j) choose[m][j] = choose[m - 1][j - 1] + choose[m - 1][j];
  }
  // table[m][j] = B_{m,j}; B_{0,0} = 1.
  std::vector<std::vector<double>> table(n + 1, std::vector<double>(n + 1, 0.0));
  table[0][0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    for (int j = 1; j <= m; ++j) {
      double sum = 0.0;
      for (int i = 1; i <= m - j + 1; ++i) {
        sum += choose[m - 1][i - 1] * x[i - 1] * table[m - i][j - 1];
      }
      table[m][j] = sum;
    }
  }
  return {table[n].begin() + 1, table[n].end()};
}

double bell_partial(int n, int k, std::span<const double> x) {
  if (k < 1 || k > n) throw DomainError("bell_partial: need 1 <= k <= n");
  if (static_cast<int>(x.size()) != n - k + 1) {
    throw DimensionMismatch("bell_partial: B_{" + std::to_string(n) + "," + std::to_string(k) +
                            "} takes " + std::to_string(n - k + 1) + " arguments, got " +
                            std::to_string(x.size()));
  }
  // Only B_{m,j} with m - j <= n - k feed into B_{n,k}.
  const int depth = n - k;
  std::vector<std::vector<double>> table(n + 1, std::vector<double>(k + 1, 0.0));
  table[0][0] = 1.0;
  for (int j = 1; j <= k; ++j) {
    for (int m = j; m <= j + depth; ++m) {
      double sum = 0.0;
      double binom = 1.0;  // C(m-1, i-1)
      for (int i = 1; i <= m - j + 1; ++i) {
        sum += binom * x[i - 1] * table[m - i][j - 1];
        binom = binom * (m - i) / i;
      }
      table[m][j] = sum;
    }
  }
  return table[n][k];
}

double upper_incomplete_gamma(double s, double x) {
  if (!(x >= 0.0)) throw DomainError("upper_incomplete_gamma: x must be >= 0");
  if (x == 0.0) {
    if (s <= 0.0) throw DomainError("upper_incomplete_gamma: divergent for s <= 0 at x = 0");
    return boost::math::tgamma(s);
  }
  if (s > 0.0) return boost::math::tgamma(s, x);
  if (s == 0.0) return boost::math::expint(1, x);
  // Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s
  return (upper_incomplete_gamma(s + 1.0, x) - std::exp(s * std::log(x) - x)) / s;
}

double gamma_cdf(double shape, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(shape, x);
}

double gamma_survival(double shape, double x) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(shape, x);
}

double scaled_exponential_integral(double z) {
  if (!(z > 0.0)) throw DomainError("scaled_exponential_integral: z must be > 0");
  if (z <= 1.0) return std::exp(z) * boost::math::expint(1, z);
  // Continued fraction for e^z E_1(z), modified Lentz.
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  double b = z + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("scaled_exponential_integral: continued fraction did not converge");
}

double gamma_quantile(double alpha, double p) {
  if (!(alpha > 0.0)) throw DomainError("gamma_quantile: shape must be positive");
  if (!(p >= 0.0) || p >= 1.0) throw DomainError("gamma_quantile: p must lie in [0, 1)");
  if (p == 0.0) return 0.0;
  return detail::solve_increasing([=](double x) { return gamma_cdf(alpha, x) - p; },
                                  std::max(alpha, 1.0));
}

double gamma_quantile_upper(double alpha, double q) {
  if (!(alpha > 0.0)) throw DomainError("gamma_quantile_upper: shape must be positive");
  if (!(q > 0.0) || q > 1.0) throw DomainError("gamma_quantile_upper: q must lie in (0, 1]");
  if (q == 1.0) return 0.0;
  return detail::solve_increasing([=](double x) { return q - gamma_survival(alpha, x); },
                                  std::max(alpha, 1.0));
}

double log_bessel_k_half(int n, double x) {
  if (n < 0) throw DomainError("bessel_k_half: order index must be >= 0");
  if (!(x > 0.0)) throw DomainError("bessel_k_half: x must be > 0");
  std::vector<double> terms(n + 1);
  const double log2x = std::log(2.0 * x);
  for (int k = 0; k <= n; ++k) {
    terms[k] = log_gamma(n + k + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0) - k * log2x;
  }
  return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x + log_sum_exp(terms);
}

double bessel_k_half(int n, double x) { return std::exp(log_bessel_k_half(n, x)); }

double kummer_u_integral(double a, double b, double z, double log_scale) {
  if (!(a > 0.0)) throw DomainError("kummer_u_integral: a must be > 0 (integral diverges)");
  if (!(z > 0.0)) throw DomainError("kummer_u_integral: z must be > 0");
  // Work in tau = z t: z^{-a} e^{-tau} tau^{a-1} (1 + tau/z)^{b-a-1} dtau.
  // The gamma kernel then lives on the unit scale and (1 + tau/z) bends at tau = z.
  const double c = b - a - 1.0;
  // The z^{-a} factor rides inside the exponent: for tiny z the bend and the
  // prefactor are separately out of range.
  const double log_z = std::log(z);
  const double shift = log_scale - a * log_z;
  auto bend = [=](double tau) {
    const double l = tau > z ? std::log(tau) - log_z + std::log1p(z / tau) : std::log1p(tau / z);
    return c * l + shift;
  };
  auto log_body = [&](double tau) { return (a - 1.0) * std::log(tau) - tau + bend(tau); };
  auto body = [&](double tau) {
    if (tau == 0.0 || std::isinf(tau)) return 0.0;
    return std::exp(log_body(tau));
  };
  const double knee = std::max(a, 1.0);
  const double first = std::min(z, knee);

  // Head [0, first] back in t = tau / z, where z^{-a} cancels exactly.
  const double t_first = first / z;
  auto head = [&](double t) { return std::exp(log_scale - z * t + c * std::log1p(t)); };
  double total = 0.0;
  if (a < 1.0) {
    // t = v^{1/a} removes the t^{a-1} endpoint singularity.
    total += quad::integrate([&](double v) { return head(std::pow(v, 1.0 / a)); }, 0.0,
                             std::pow(t_first, a)) /
             a;
  } else {
    total += quad::integrate(
        [&](double t) { return t == 0.0 ? (a == 1.0 ? head(0.0) : 0.0) : std::pow(t, a - 1.0) * head(t); },
        0.0, t_first);
  }
  if (first < knee) {
    // Power-law stretch between the bend and the gamma knee, in log scale.
    total += quad::integrate([&](double w) {
      return std::exp(w + log_body(std::exp(w)));
    }, std::log(first), std::log(knee));
  }
  total += quad::integrate(body, knee, quad::kInfinity);
  return total;
}

}  // namespace mixagg::specfun
