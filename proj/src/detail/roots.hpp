#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>

#include "mixagg/errors.hpp"

namespace mixagg::detail {

struct RelativeTolerance {
  double rel;
  bool operator()(double a, double b) const {
    return std::abs(b - a) <= rel * std::max(std::abs(a), std::abs(b));
  }
};

// Root of an increasing g on (0, inf): geometric bracket from `guess`, then
// TOMS 748. Returns 0 when the root sits below the smallest normal double.
template <class G>
double solve_increasing(G g, double guess, double rel_tol = 1e-14) {
  double lo = guess;
  double hi = guess;
  double g_lo = g(lo);
  double g_hi = g_lo;
  if (g_lo > 0.0) {
    while (g_lo > 0.0) {
      hi = lo;
      g_hi = g_lo;
      lo *= 0.5;
      if (lo < std::numeric_limits<double>::min()) return 0.0;
      g_lo = g(lo);
    }
  } else {
    while (g_hi < 0.0) {
      lo = hi;
      g_lo = g_hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw NumericalError("root bracket escaped to infinity");
      g_hi = g(hi);
    }
  }
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  boost::uintmax_t iterations = 300;
  const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, g_lo, g_hi,
                                                        RelativeTolerance{rel_tol}, iterations);
  return 0.5 * (a + b);
}

}  // namespace mixagg::detail
