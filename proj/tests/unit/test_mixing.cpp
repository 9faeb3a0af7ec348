#include <doctest.h>

#include <cmath>
#include <vector>

#include "mixagg/errors.hpp"
#include "mixagg/mixing.hpp"
#include "mixagg/quadrature.hpp"
#include "oracles.hpp"

using namespace mixagg;

namespace {

std::vector<MixingDistribution> catalog() {
  return {
      MixingDistribution::gamma(2.5, 1.5),
      MixingDistribution::levy(0.8),
      MixingDistribution::positive_stable(0.6),
      MixingDistribution::inverse_gaussian(1.3, 0.7),
      MixingDistribution::lindley(1.2),
      MixingDistribution::gleser_gamma(0.4, 1.1),
      MixingDistribution::beta_second_kind(2.0, 3.5),
  };
}

// Density of Theta at lower + gap. The Gleser law is written in the gap so its
// endpoint singularity survives rounding.
double density_at_gap(const MixingDistribution& m, double gap) {
  if (const auto* g = std::get_if<GleserGammaMixing>(&m.kind())) {
    const double theta = g->lambda + gap;
    return std::pow(g->lambda / gap, g->alpha) /
           (theta * std::tgamma(g->alpha) * std::tgamma(1.0 - g->alpha));
  }
  return density(m, gap);
}

// E g(Theta) straight from the density.
template <class G>
double expect_over_density(const MixingDistribution& m, G g) {
  const double lower = support_lower(m);
  return oracle::integrate_log([&](double t) { return g(lower + t) * density_at_gap(m, t); },
                               1e-30, 1e12, 1e-13);
}

}  // namespace

TEST_CASE("closed Laplace transforms") {
  const double s = 0.7;
  CHECK(laplace(MixingDistribution::gamma(2.5, 1.5), s) ==
        doctest::Approx(std::pow(1.0 + s / 1.5, -2.5)).epsilon(1e-14));
  CHECK(laplace(MixingDistribution::levy(0.8), s) ==
        doctest::Approx(std::exp(-0.8 * std::sqrt(s))).epsilon(1e-14));
  CHECK(laplace(MixingDistribution::positive_stable(0.6), s) ==
        doctest::Approx(std::exp(-std::pow(s, 0.6))).epsilon(1e-14));
  const double l = 1.3, mu = 0.7;
  CHECK(laplace(MixingDistribution::inverse_gaussian(l, mu), s) ==
        doctest::Approx(std::exp(l / mu * (1.0 - std::sqrt(1.0 + 2.0 * mu * mu * s / l))))
            .epsilon(1e-14));
  CHECK(laplace(MixingDistribution::lindley(1.2), s) ==
        doctest::Approx(1.44 * (2.2 + s) / (2.2 * (1.2 + s) * (1.2 + s))).epsilon(1e-14));
  for (const auto& m : catalog()) CHECK(laplace(m, 0.0) == 1.0);
}

TEST_CASE("Laplace transform equals the density integral") {
  for (const auto& m : catalog()) {
    if (m.is<PositiveStableMixing>()) continue;
    for (double s : {0.1, 1.0, 4.0}) {
      INFO(m.describe(), " s=", s);
      const double expect = expect_over_density(m, [&](double t) { return std::exp(-s * t); });
      CHECK(laplace(m, s) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("sampler reproduces the Laplace transform") {
  for (const auto& m : catalog()) {
    RandomStream rng(99);
    for (double s : {0.3, 2.0}) {
      std::vector<double> v(200000);
      for (double& x : v) x = std::exp(-s * sample_theta(m, rng));
      const auto st = oracle::sample_stats(v);
      INFO(m.describe(), " s=", s);
      CHECK(std::abs(st.mean - laplace(m, s)) < 4.0 * st.se + 1e-12);
    }
  }
}

TEST_CASE("derivatives agree with finite differences") {
  for (const auto& m : catalog()) {
    for (double s : {0.2, 1.5}) {
      const double h = 1e-4 * s;
      INFO(m.describe(), " s=", s);
      const double d1 = (laplace(m, s + h) - laplace(m, s - h)) / (2.0 * h);
      CHECK(laplace_derivative(m, 1, s) == doctest::Approx(d1).epsilon(1e-6));
      const double d2 =
          (laplace_derivative(m, 1, s + h) - laplace_derivative(m, 1, s - h)) / (2.0 * h);
      CHECK(laplace_derivative(m, 2, s) == doctest::Approx(d2).epsilon(1e-6));
      const double d5 =
          (laplace_derivative(m, 4, s + h) - laplace_derivative(m, 4, s - h)) / (2.0 * h);
      CHECK(laplace_derivative(m, 5, s) == doctest::Approx(d5).epsilon(1e-6));
    }
  }
}

TEST_CASE("signed derivatives are tilted moments of the density") {
  for (const auto& m : catalog()) {
    if (m.is<PositiveStableMixing>()) continue;
    for (int n : {1, 3, 7}) {
      const double s = 0.9;
      const double expect =
          expect_over_density(m, [&](double t) { return std::pow(t, n) * std::exp(-s * t); });
      INFO(m.describe(), " n=", n);
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(sign * laplace_derivative(m, n, s) == doctest::Approx(expect).epsilon(1e-8));
      CHECK(tilted_moment(m, n, s) == doctest::Approx(expect).epsilon(1e-8));
    }
  }
}

TEST_CASE("Faa di Bruno and closed derivative routes agree") {
  const std::vector<MixingDistribution> composite{
      MixingDistribution::gamma(0.7, 2.0), MixingDistribution::levy(1.4),
      MixingDistribution::positive_stable(0.35), MixingDistribution::inverse_gaussian(2.0, 0.5)};
  for (const auto& m : composite) {
    for (int n : {1, 2, 6, 15, 30}) {
      for (double s : {0.05, 1.0, 20.0}) {
        INFO(m.describe(), " n=", n, " s=", s);
        const double a = laplace_derivative_faa_di_bruno(m, n, s);
        const double b = laplace_derivative_closed(m, n, s);
        CHECK(oracle::relative_error(a, b) < 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(laplace_derivative_faa_di_bruno(MixingDistribution::lindley(1.0), 2, 1.0),
                  Unsupported);
}

TEST_CASE("derivative order is capped") {
  const auto m = MixingDistribution::gamma(2.0, 1.0);
  CHECK(std::isfinite(laplace_derivative(m, kDerivativeCap, 1.0)));
  CHECK_THROWS_AS(laplace_derivative(m, kDerivativeCap + 1, 1.0), DerivativeCapExceeded);
}

TEST_CASE("generator inverts the Laplace transform") {
  for (const auto& m : catalog()) {
    for (double t : {1e-6, 0.01, 0.3, 0.9, 1.0}) {
      INFO(m.describe(), " t=", t);
      CHECK(laplace(m, generator(m, t)) == doctest::Approx(t).epsilon(1e-10));
    }
    CHECK(generator(m, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(std::isinf(generator(m, 0.0)));
  }
}

TEST_CASE("negative moments") {
  const auto g = MixingDistribution::gamma(3.0, 2.0);
  CHECK(neg_moment(g, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(neg_moment(g, 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(neg_moment(g, 3), NonexistentMoment);
  // Levy mixing gives Weibull(1/2) claims: E X = 2 / lambda^2.
  CHECK(neg_moment(MixingDistribution::levy(1.0), 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(neg_moment(MixingDistribution::inverse_gaussian(1.0, 1.0), 1) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK_THROWS_AS(neg_moment(MixingDistribution::lindley(1.0), 1), NonexistentMoment);
  for (const auto& m : catalog()) {
    if (m.is<PositiveStableMixing>() || m.is<LindleyMixing>()) continue;
    for (int r : {1, 2}) {
      double value = 0.0;
      try {
        value = neg_moment(m, r);
      } catch (const NonexistentMoment&) {
        continue;
      }
      INFO(m.describe(), " r=", r);
      const double expect = expect_over_density(m, [&](double t) { return std::pow(t, -r); });
      CHECK(value == doctest::Approx(expect).epsilon(1e-8));
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(MixingDistribution::gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(MixingDistribution::gamma(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(MixingDistribution::positive_stable(1.5), DomainError);
  CHECK_THROWS_AS(MixingDistribution::gleser_gamma(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(MixingDistribution::inverse_gaussian(1.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(density(MixingDistribution::positive_stable(0.5), 1.0), Unsupported);
}
