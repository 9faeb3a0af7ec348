#pragma once

// Independent reference machinery for the tests: brute-force set-partition
// enumeration for Bell polynomials and log-space integration for densities.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mixagg/quadrature.hpp"

namespace oracle {

namespace detail {
inline void partitions(int element, int n, std::vector<int>& block_sizes,
                       const std::function<void(const std::vector<int>&)>& visit) {
  if (element == n) {
    visit(block_sizes);
    return;
  }
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    ++block_sizes[b];
    partitions(element + 1, n, block_sizes, visit);
    --block_sizes[b];
  }
  block_sizes.push_back(1);
  partitions(element + 1, n, block_sizes, visit);
  block_sizes.pop_back();
}
}  // namespace detail

// Calls visit with the block sizes of every set partition of {1..n}.
inline void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> sizes;
  detail::partitions(0, n, sizes, visit);
}

// B_{n,k}(x): sum over partitions into k blocks of prod x_{|block|}.
inline double bell_by_partitions(int n, int k, const std::vector<double>& x) {
  double total = 0.0;
  for_each_partition(n, [&](const std::vector<int>& sizes) {
    if (static_cast<int>(sizes.size()) != k) return;
    double term = 1.0;
    for (int s : sizes) term *= x[s - 1];
    total += term;
  });
  return total;
}

inline long long count_partitions(int n) {
  long long count = 0;
  for_each_partition(n, [&](const std::vector<int>&) { ++count; });
  return count;
}

// int_lo^hi f(x) dx through x = e^w with unit panels in w; suits densities
// with power-law behaviour at either end.
template <class F>
double integrate_log(F f, double lo, double hi, double tolerance = 1e-12) {
  const double a = std::log(lo);
  const double b = std::log(hi);
  auto g = [&](double w) {
    const double x = std::exp(w);
    return x * f(x);
  };
  double total = 0.0;
  for (double w = a; w < b; w += 1.0) {
    total += mixagg::quad::integrate(g, w, std::min(w + 1.0, b), tolerance);
  }
  return total;
}

// Cdf on a log grid by accumulating panel integrals of the pdf, then linear
// interpolation in log x. Mass below lo is dropped; fine for KS-scale checks.
template <class F>
std::function<double(double)> tabulated_cdf(F pdf, double lo, double hi, int points) {
  std::vector<double> w(points), cdf(points, 0.0);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) w[i] = a + (b - a) * i / (points - 1.0);
  auto g = [&](double t) {
    const double x = std::exp(t);
    return x * pdf(x);
  };
  for (int i = 1; i < points; ++i) {
    cdf[i] = cdf[i - 1] + mixagg::quad::integrate(g, w[i - 1], w[i], 1e-10);
  }
  return [w, cdf](double x) {
    if (x <= 0.0) return 0.0;
    const double t = std::log(x);
    if (t <= w.front()) return 0.0;
    if (t >= w.back()) return cdf.back();
    const auto it = std::upper_bound(w.begin(), w.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - w.begin());
    const double f = (t - w[k - 1]) / (w[k] - w[k - 1]);
    return cdf[k - 1] + f * (cdf[k] - cdf[k - 1]);
  };
}

// -dS/dx by the five-point stencil. The step is a fixed fraction of min(x, 1):
// truncation stays near (h/x)^4 while roundoff in S near 1 stays below 1e-6.
template <class S>
double survival_slope(S survival, double x) {
  const double h = 1e-2 * std::min(x, 1.0);
  return -(survival(x - 2 * h) - 8 * survival(x - h) + 8 * survival(x + h) - survival(x + 2 * h)) /
         (12 * h);
}

inline double relative_error(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Mean and standard error of a sample.
struct SampleStats {
  double mean;
  double se;
};

template <class Vec>
SampleStats sample_stats(const Vec& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace oracle
