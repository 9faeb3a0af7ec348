#pragma once

// Monte Carlo and direct-quadrature oracles. Rows are X_i = G_{a_i} / Theta
// with one Theta draw per row; shapes all 1 give the exponential mixture,
// Theta ~ B2(gamma, beta) gives the Sibuya model.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mixagg/aggregate.hpp"
#include "mixagg/gamma_ext.hpp"
#include "mixagg/mixing.hpp"

namespace mixagg {

struct SimulationPlan {
  MixingDistribution mixing;
  std::vector<double> shapes;  // one per column
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int streams = 16;  // fixes the row partition, hence the output
  int threads = 1;   // scheduling only; never changes the output

  int n() const { return static_cast<int>(shapes.size()); }
};

SimulationPlan simulation_plan(const AggregateModel& a, std::uint64_t samples, std::uint64_t seed);
SimulationPlan simulation_plan(const GammaMixtureModel& g, std::uint64_t samples,
                               std::uint64_t seed);
SimulationPlan simulation_plan(const SibuyaModel& s, std::uint64_t samples, std::uint64_t seed);

/// samples x n, column-major. Stream k owns a fixed contiguous row block and
/// its own mt19937_64 seeded from (seed, k).
Eigen::MatrixXd sample_vector(const SimulationPlan& plan);

/// sup |F_emp - F| for the row sums of `samples`.
double empirical_ks(const Eigen::MatrixXd& samples, const std::function<double(double)>& cdf);
double empirical_ks(const SimulationPlan& plan, const std::function<double(double)>& cdf);

/// int x^{n-1} theta^n e^{-theta x} / Gamma(n) f_Theta(theta) dtheta by direct
/// quadrature over the mixing density. Unsupported for the positive stable law.
double quadrature_mixture_pdf(const MixingDistribution& m, int n, double x);

/// Header "MXAGSMP1", then n, samples, seed as little-endian uint64, then the
/// column-major doubles.
void write_samples_binary(const std::string& path, const Eigen::MatrixXd& samples,
                          std::uint64_t seed);
Eigen::MatrixXd read_samples_binary(const std::string& path, std::uint64_t* seed = nullptr);
void write_samples_csv(const std::string& path, const Eigen::MatrixXd& samples);

}  // namespace mixagg
