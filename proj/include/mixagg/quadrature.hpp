#pragma once

// Thin wrappers over Boost.Math quadrature. Every integral in the engine goes
// through here so tolerances and failure reporting stay uniform.

#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "mixagg/errors.hpp"

namespace mixagg::quad {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace detail {
inline double checked(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw QuadratureFailure(std::string(what) + ": non-finite integral");
  }
  return value;
}
}  // namespace detail

/// Adaptive 61-point Gauss-Kronrod on [a, b]; b may be +infinity, in which
/// case Boost maps the half line onto a finite interval.
template <class F>
double integrate(F&& f, double a, double b, double tolerance = kDefaultTolerance) {
  if (a == b) return 0.0;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  double error = 0.0;
  if (std::isinf(b)) {
    return detail::checked(Rule::integrate(f, a, b, 18, tolerance, &error), "gauss_kronrod");
  }
  // Boost 1.74 tests the unscaled panel error against a width-scaled
  // tolerance, so narrow intervals recurse to max depth. Feed it [-1, 1].
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto unit = [&](double t) { return f(mid + half * t); };
  const double value = half * Rule::integrate(unit, -1.0, 1.0, 18, tolerance, &error);
  return detail::checked(value, "gauss_kronrod");
}

/// Gauss-Kronrod summed over consecutive breakpoints; the last breakpoint may
/// be +infinity. Breakpoints go at integrand knees so no panel straddles one.
template <class F>
double integrate_pieces(F&& f, std::initializer_list<double> breakpoints,
                        double tolerance = kDefaultTolerance) {
  std::vector<double> pts(breakpoints);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    sum += integrate(f, pts[i], pts[i + 1], tolerance);
  }
  return sum;
}

/// Double-exponential rule for integrands with integrable endpoint
/// singularities (x^{-1/2}-type). tanh-sinh on finite ranges, exp-sinh when
/// b is +infinity.
template <class F>
double integrate_singular(F&& f, double a, double b, double tolerance = kDefaultTolerance) {
  if (a == b) return 0.0;
  double value = 0.0;
  try {
    if (std::isinf(b)) {
      boost::math::quadrature::exp_sinh<double> rule;
      value = rule.integrate(f, a, b, tolerance);
    } else {
      boost::math::quadrature::tanh_sinh<double> rule;
      value = rule.integrate(f, a, b, tolerance);
    }
  } catch (const std::exception& e) {
    throw QuadratureFailure(std::string("double-exponential quadrature: ") + e.what());
  }
  return detail::checked(value, "double-exponential");
}

}  // namespace mixagg::quad
