#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mixagg/aggregate.hpp"
#include "mixagg/errors.hpp"
#include "mixagg/mc_oracle.hpp"
#include "oracles.hpp"

using namespace mixagg;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("column means and the shared frailty") {
  const auto a = AggregateModel::pareto(3.0, 1.0, 2);
  const auto s = sample_vector(simulation_plan(a, 1000000, 1));
  REQUIRE(s.rows() == 1000000);
  REQUIRE(s.cols() == 2);
  for (int j = 0; j < 2; ++j) {
    const Eigen::VectorXd c = s.col(j);
    const auto st = oracle::sample_stats(std::vector<double>(c.data(), c.data() + c.size()));
    CHECK(std::abs(st.mean - 0.5) < 3.0 * st.se);
  }
  CHECK((s.array() >= 0.0).all());
}

TEST_CASE("sampling is deterministic across runs and thread counts") {
  auto plan = simulation_plan(AggregateModel::weibull(0.5, 3), 50000, 42);
  const auto a = sample_vector(plan);
  const auto b = sample_vector(plan);
  plan.threads = 4;
  const auto c = sample_vector(plan);
  CHECK(a == b);
  CHECK(a == c);
  plan.seed = 43;
  CHECK(sample_vector(plan) != a);
}

TEST_CASE("KS distance") {
  const auto a = AggregateModel::pareto(3.0, 1.0, 2);
  const auto s = sample_vector(simulation_plan(a, 1000000, 5));
  CHECK(empirical_ks(s, [&](double x) { return cdf(a, x); }) < 0.005);
  CHECK(empirical_ks(s, [&](double x) { return cdf(a, std::max(0.0, x - 0.1)); }) > 0.02);
  // The empirical cdf of the sample itself.
  Eigen::MatrixXd small = s.topRows(1000);
  Eigen::VectorXd sums = small.rowwise().sum();
  std::vector<double> sorted(sums.data(), sums.data() + sums.size());
  std::sort(sorted.begin(), sorted.end());
  auto ecdf = [&](double x) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
           sorted.size();
  };
  CHECK(empirical_ks(small, ecdf) <= 1.0 / 1000 + 1e-15);
}

TEST_CASE("KS for every catalog model") {
  for (int n : {2, 5}) {
    const std::vector<AggregateModel> models{
        AggregateModel::pareto(3.0, 1.0, n), AggregateModel::gamma_claims(0.5, 1.0, n),
        AggregateModel::weibull_half(1.0, n), AggregateModel::weibull(0.6, n),
        AggregateModel::inverse_gaussian(2.0, 1.0, n)};
    for (const auto& a : models) {
      INFO(a.mixing().describe(), " n=", n);
      CHECK(empirical_ks(simulation_plan(a, 1000000, 9), [&](double x) { return cdf(a, x); }) <
            0.005);
    }
  }
}

TEST_CASE("mixing quadrature worked values") {
  CHECK(quadrature_mixture_pdf(MixingDistribution::gamma(3.0, 1.0), 2, 1.0) ==
        doctest::Approx(0.375).epsilon(1e-10));
  CHECK(quadrature_mixture_pdf(MixingDistribution::lindley(1.0), 2, 1.0) ==
        doctest::Approx(0.3125).epsilon(1e-10));
  CHECK(quadrature_mixture_pdf(MixingDistribution::gleser_gamma(0.5, 1.0), 2, 1.0) ==
        doctest::Approx(0.3113306).epsilon(1e-6));
  CHECK_THROWS_AS(quadrature_mixture_pdf(MixingDistribution::positive_stable(0.5), 2, 1.0),
                  Unsupported);
}

TEST_CASE("sample files") {
  const auto s = sample_vector(simulation_plan(AggregateModel::lindley(1.0, 3), 1000, 77));
  const std::string bin = temp_path("mixagg_samples_test.bin");
  write_samples_binary(bin, s, 77);
  std::uint64_t seed = 0;
  const auto back = read_samples_binary(bin, &seed);
  CHECK(seed == 77);
  CHECK(back == s);
  std::remove(bin.c_str());

  const std::string csv = temp_path("mixagg_samples_test.csv");
  write_samples_csv(csv, s);
  std::ifstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines >= 1000);
  std::remove(csv.c_str());
}
