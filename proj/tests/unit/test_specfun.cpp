#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "mixagg/errors.hpp"
#include "mixagg/quadrature.hpp"
#include "mixagg/specfun.hpp"
#include "oracles.hpp"

using namespace mixagg;
using namespace mixagg::specfun;

TEST_CASE("falling factorial uses the descending convention") {
  CHECK(falling_factorial(5.0, 3) == doctest::Approx(60.0));
  CHECK(falling_factorial(0.5, 0) == 1.0);
  CHECK(falling_factorial(0.5, 2) == doctest::Approx(-0.25));
}

TEST_CASE("low-order partial Bell polynomials match their expansions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double x1 = u(rng), x2 = u(rng), x3 = u(rng), x4 = u(rng), x5 = u(rng);
    const std::vector<double> x{x1, x2, x3, x4, x5};
    auto B = [&](int n, int k) { return bell_partial(n, k, std::span(x).first(n - k + 1)); };
    auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
    CHECK(near(B(1, 1), x1));
    CHECK(near(B(2, 1), x2));
    CHECK(near(B(2, 2), x1 * x1));
    CHECK(near(B(3, 2), 3 * x1 * x2));
    CHECK(near(B(4, 2), 3 * x2 * x2 + 4 * x1 * x3));
    CHECK(near(B(4, 3), 6 * x1 * x1 * x2));
    CHECK(near(B(5, 2), 10 * x2 * x3 + 5 * x1 * x4));
    CHECK(near(B(5, 3), 15 * x1 * x2 * x2 + 10 * x1 * x1 * x3));
    CHECK(near(B(5, 4), 10 * x1 * x1 * x1 * x2));
    CHECK(near(B(5, 5), std::pow(x1, 5)));
  }
}

TEST_CASE("Bell polynomials agree with set-partition enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> x(n);
    for (double& xi : x) xi = u(rng);
    const auto row = bell_row(n, x);
    for (int k = 1; k <= n; ++k) {
      const double expect = oracle::bell_by_partitions(n, k, x);
      CHECK(row[k - 1] == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
      CHECK(bell_partial(n, k, std::span(x).first(n - k + 1)) ==
            doctest::Approx(expect).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("Bell row sums at unit arguments are the Bell numbers") {
  for (int n = 1; n <= 10; ++n) {
    const std::vector<double> ones(n, 1.0);
    double total = 0.0;
    for (double b : bell_row(n, ones)) total += b;
    CHECK(total == static_cast<double>(oracle::count_partitions(n)));
  }
}

TEST_CASE("Bell polynomial argument checks") {
  const std::vector<double> x{1.0, 2.0};
  CHECK_THROWS_AS(bell_partial(3, 1, x), DimensionMismatch);
  CHECK_THROWS_AS(bell_partial(2, 3, x), DomainError);
}

TEST_CASE("upper incomplete gamma against direct quadrature") {
  for (double s : {-0.5, 0.0, 0.3, 1.0, 2.5, 7.0}) {
    for (double x : {0.1, 1.0, 4.0}) {
      auto f = [&](double t) { return std::exp((s - 1.0) * std::log(t) - t); };
      const double expect = quad::integrate_pieces(f, {x, x + 1.0, x + 20.0, quad::kInfinity});
      CHECK(upper_incomplete_gamma(s, x) == doctest::Approx(expect).epsilon(1e-11));
    }
  }
}

TEST_CASE("scaled exponential integral as a Stieltjes transform") {
  for (double z : {1e-3, 0.1, 1.0, 10.0, 1e3, 1e6}) {
    auto f = [&](double t) { return std::exp(-z * t) / (1.0 + t); };
    const double scale = 1.0 / z;
    const double expect =
        quad::integrate_pieces(f, {0.0, scale, 10.0 * scale, 100.0 * scale, quad::kInfinity});
    CHECK(scaled_exponential_integral(z) == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("gamma quantiles invert the regularized incomplete gamma") {
  for (double a : {0.2, 1.0, 3.5}) {
    for (double p : {1e-8, 0.1, 0.5, 0.99}) {
      CHECK(gamma_cdf(a, gamma_quantile(a, p)) == doctest::Approx(p).epsilon(1e-12));
    }
    for (double q : {1.0 - 1e-12, 0.5, 1e-10}) {
      CHECK(gamma_survival(a, gamma_quantile_upper(a, q)) == doctest::Approx(q).epsilon(1e-12));
    }
  }
}

TEST_CASE("half-integer Bessel K matches Boost") {
  for (int n = 0; n <= 12; ++n) {
    for (double x : {0.05, 1.0, 7.0, 40.0}) {
      const double expect = boost::math::cyl_bessel_k(n + 0.5, x);
      CHECK(bessel_k_half(n, x) == doctest::Approx(expect).epsilon(1e-12));
      CHECK(std::exp(log_bessel_k_half(n, x)) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  CHECK(std::isfinite(log_bessel_k_half(3, 2000.0)));
}

TEST_CASE("raw Kummer integral") {
  // b = a + 1 collapses the integral to Gamma(a) z^{-a}.
  for (double a : {0.4, 1.0, 3.0}) {
    for (double z : {1e-3, 0.5, 20.0}) {
      CHECK(kummer_u_integral(a, a + 1.0, z) ==
            doctest::Approx(std::tgamma(a) * std::pow(z, -a)).epsilon(1e-11));
    }
  }
  CHECK(kummer_u_integral(1.0, 1.0, 2.0) == doctest::Approx(0.3613286168882225).epsilon(1e-11));
  // Direct quadrature in t for generic arguments.
  for (double a : {0.7, 2.5}) {
    for (double b : {-1.2, 0.5, 3.0}) {
      const double z = 1.3;
      auto f = [&](double t) {
        return t == 0.0 ? 0.0 : std::exp(-z * t + (a - 1.0) * std::log(t) + (b - a - 1.0) * std::log1p(t));
      };
      const double expect = quad::integrate_singular(f, 0.0, 1.0) +
                            quad::integrate_pieces(f, {1.0, 10.0, 60.0, quad::kInfinity});
      CHECK(kummer_u_integral(a, b, z) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
  // The log_scale argument keeps huge values representable.
  const double scaled = kummer_u_integral(7.0, 3.3, 1e-300, -700.0 * std::log(10.0));
  CHECK(std::isfinite(scaled));
  CHECK(scaled > 0.0);
  CHECK_THROWS_AS(kummer_u_integral(0.0, 1.0, 1.0), DomainError);
}
