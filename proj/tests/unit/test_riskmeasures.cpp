#include <doctest.h>

#include <cmath>
#include <vector>

#include "mixagg/aggregate.hpp"
#include "mixagg/errors.hpp"
#include "mixagg/mc_oracle.hpp"
#include "mixagg/riskmeasures.hpp"
#include "oracles.hpp"

using namespace mixagg;

TEST_CASE("value at risk") {
  CHECK(value_at_risk(AggregateModel::pareto(3.0, 1.0, 1), 0.5) ==
        doctest::Approx(std::cbrt(2.0) - 1.0).epsilon(1e-10));
  CHECK(value_at_risk(AggregateModel::pareto(3.0, 1.0, 2), 0.6875) ==
        doctest::Approx(1.0).epsilon(1e-10));
  const std::vector<AggregateModel> models{
      AggregateModel::pareto(1.5, 2.0, 3), AggregateModel::gamma_claims(0.3, 2.0, 2),
      AggregateModel::weibull_half(0.7, 4), AggregateModel::weibull(0.4, 3),
      AggregateModel::inverse_gaussian(1.0, 3.0, 2), AggregateModel::lindley(1.0, 2)};
  for (const auto& a : models) {
    double previous = 0.0;
    for (double level : {1e-6, 0.1, 0.5, 0.9, 0.99, 0.9999}) {
      const double v = value_at_risk(a, level);
      INFO(a.mixing().describe(), " level=", level);
      CHECK(v > previous);
      CHECK(survival(a, v) == doctest::Approx(1.0 - level).epsilon(1e-9));
      previous = v;
    }
  }
  const auto p = AggregateModel::pareto(3.0, 1.0, 2);
  CHECK_THROWS_AS(value_at_risk(p, 0.0), DomainError);
  CHECK_THROWS_AS(value_at_risk(p, 1.0), DomainError);
  CHECK_THROWS_AS(value_at_risk(p, 1.0 - 1e-13), TailUnderflow);
}

TEST_CASE("tail moments") {
  // Lomax: E(X | X > a) = (alpha a + 1) / (alpha - 1).
  const auto lomax = AggregateModel::pareto(3.0, 1.0, 1);
  for (double a : {0.0, 1.0, 10.0}) {
    CHECK(tail_moment(lomax, 1, a) == doctest::Approx((3.0 * a + 1.0) / 2.0).epsilon(1e-10));
  }
  // Exponential claims are memoryless.
  CHECK(tail_moment(AggregateModel::weibull(1.0, 1), 1, 3.0) == doctest::Approx(4.0).epsilon(1e-9));

  const auto p2 = AggregateModel::pareto(3.0, 1.0, 2);
  const double upper = oracle::integrate_log(
      [](double x) { return 12.0 * x * x / std::pow(1.0 + x, 5); }, 1.0, 1e12);
  CHECK(tvar(p2, 0.6875) == doctest::Approx(upper / 0.3125).epsilon(1e-8));
  CHECK(tail_moment(p2, 1, 0.0) == doctest::Approx(mean(p2)).epsilon(1e-10));
  CHECK_THROWS_AS(tail_moment(p2, 3, 1.0), NonexistentMoment);
}

TEST_CASE("mixture tail decomposition equals quadrature") {
  const std::vector<AggregateModel> models{
      AggregateModel::pareto(3.5, 1.0, 3), AggregateModel::gamma_claims(0.5, 1.0, 3),
      AggregateModel::weibull_half(1.0, 3), AggregateModel::weibull(0.5, 3)};
  for (const auto& a : models) {
    for (double level : {0.5, 0.9, 0.99}) {
      const double v = value_at_risk(a, level);
      for (int r : {1, 2}) {
        const double m = tail_moment(a, r, v, TailMethod::Mixture);
        const double q = tail_moment(a, r, v, TailMethod::Quadrature);
        INFO(a.mixing().describe(), " level=", level, " r=", r);
        CHECK(m == doctest::Approx(q).epsilon(1e-7));
        if (r == 1) CHECK(m >= v);
      }
    }
  }
}

TEST_CASE("risk report") {
  const auto a = AggregateModel::weibull(0.5, 2);
  for (double level : {0.5, 0.9, 0.99}) {
    const auto rep = risk_report(a, level, {1, 2});
    CHECK(rep.tvar >= rep.var);
    REQUIRE(rep.tail_moments.size() == 2);
    CHECK(rep.tail_moments[0].second == doctest::Approx(rep.tvar).epsilon(1e-12));
  }
  // Monte Carlo tail mean at the 99% level.
  const double v = value_at_risk(a, 0.99);
  const auto s = sample_vector(simulation_plan(a, 2000000, 17));
  std::vector<double> tail;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double total = s(i, 0) + s(i, 1);
    if (total > v) tail.push_back(total);
  }
  const auto st = oracle::sample_stats(tail);
  CHECK(std::abs(st.mean - tvar(a, 0.99)) < 3.0 * st.se);
}

TEST_CASE("deep tails are refused") {
  const auto a = AggregateModel::weibull(1.0, 1);
  CHECK_THROWS_AS(tail_moment(a, 1, 800.0), TailUnderflow);
}
