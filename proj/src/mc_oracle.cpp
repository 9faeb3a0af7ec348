#include "mixagg/mc_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <thread>

#include "mixagg/errors.hpp"
#include "mixagg/quadrature.hpp"
#include "mixagg/specfun.hpp"

namespace mixagg {

namespace {

constexpr char kMagic[8] = {'M', 'X', 'A', 'G', 'S', 'M', 'P', '1'};

RandomStream stream_engine(std::uint64_t seed, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return RandomStream(seq);
}

void fill_rows(const SimulationPlan& plan, int stream, Eigen::Index begin, Eigen::Index end,
               Eigen::MatrixXd& out) {
  RandomStream rng = stream_engine(plan.seed, stream);
  std::vector<std::gamma_distribution<double>> gammas;
  for (double a : plan.shapes) gammas.emplace_back(a, 1.0);
  std::exponential_distribution<double> unit_exp(1.0);
  for (Eigen::Index row = begin; row < end; ++row) {
    const double theta = sample_theta(plan.mixing, rng);
    for (int j = 0; j < plan.n(); ++j) {
      const double g = plan.shapes[j] == 1.0 ? unit_exp(rng) : gammas[j](rng);
      out(row, j) = g / theta;
    }
  }
}

// Density at lower + gap. The Gleser law is written in the gap itself: theta
// rounds to lambda long before its (theta - lambda)^{-alpha} mass runs out.
double density_above_support(const MixingDistribution& m, double lower, double gap) {
  if (const auto* g = std::get_if<GleserGammaMixing>(&m.kind())) {
    const double theta = lower + gap;
    return std::exp(g->alpha * (std::log(g->lambda) - std::log(gap)) - std::log(theta) -
                    specfun::log_gamma(g->alpha) - specfun::log_gamma(1.0 - g->alpha));
  }
  return density(m, lower + gap);
}

}  // namespace

SimulationPlan simulation_plan(const AggregateModel& a, std::uint64_t samples, std::uint64_t seed) {
  return {a.mixing(), std::vector<double>(a.n(), 1.0), samples, seed};
}

SimulationPlan simulation_plan(const GammaMixtureModel& g, std::uint64_t samples,
                               std::uint64_t seed) {
  return {g.mixing(), g.shapes(), samples, seed};
}

SimulationPlan simulation_plan(const SibuyaModel& s, std::uint64_t samples, std::uint64_t seed) {
  return {s.frailty(), s.shapes(), samples, seed};
}

Eigen::MatrixXd sample_vector(const SimulationPlan& plan) {
  if (plan.n() < 1) throw DomainError("simulation: need at least one column");
  if (plan.samples < 1) throw DomainError("simulation: samples must be >= 1");
  if (plan.streams < 1 || plan.threads < 1) throw DomainError("simulation: streams, threads >= 1");
  const auto rows = static_cast<Eigen::Index>(plan.samples);
  Eigen::MatrixXd out(rows, plan.n());
  const int streams = plan.streams;
  auto block_start = [&](int k) { return rows * k / streams; };
  auto worker = [&](int first) {
    for (int k = first; k < streams; k += plan.threads) {
      fill_rows(plan, k, block_start(k), block_start(k + 1), out);
    }
  };
  const int threads = std::min(plan.threads, streams);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  if (threads == 1) {
    for (int k = 0; k < streams; ++k) fill_rows(plan, k, block_start(k), block_start(k + 1), out);
  } else {
    worker(0);
  }
  for (auto& th : pool) th.join();
  return out;
}

double empirical_ks(const Eigen::MatrixXd& samples, const std::function<double(double)>& cdf) {
  Eigen::VectorXd sums = samples.rowwise().sum();
  std::vector<double> s(sums.data(), sums.data() + sums.size());
  std::sort(s.begin(), s.end());
  const double count = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, (i + 1) / count - f, f - i / count});
  }
  return d;
}

double empirical_ks(const SimulationPlan& plan, const std::function<double(double)>& cdf) {
  return empirical_ks(sample_vector(plan), cdf);
}

double quadrature_mixture_pdf(const MixingDistribution& m, int n, double x) {
  if (m.is<PositiveStableMixing>()) {
    throw Unsupported("quadrature_mixture_pdf: the positive stable law has no usable density");
  }
  if (n < 1) throw DomainError("quadrature_mixture_pdf: n must be >= 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("quadrature_mixture_pdf: x must be > 0");
  const double lower = support_lower(m);
  const double log_norm = (n - 1.0) * std::log(x) - specfun::log_gamma(n);
  // theta = lower + e^u turns endpoint singularities into exponential decay.
  auto h = [&](double u) {
    const double gap = std::exp(u);
    const double theta = lower + gap;
    const double f = density_above_support(m, lower, gap);
    if (f == 0.0) return 0.0;
    return std::exp(u + n * std::log(theta) - theta * x + log_norm) * f;
  };
  // Locate the bulk on a coarse grid, then integrate unit panels across it.
  constexpr double kStep = 0.5;
  double best = 0.0;
  double u_best = 0.0;
  for (double u = -80.0; u <= 60.0; u += kStep) {
    const double v = h(u);
    if (v > best) {
      best = v;
      u_best = u;
    }
  }
  if (best == 0.0) return 0.0;
  double lo = u_best;
  while (lo > -700.0 && h(lo) > 1e-20 * best) lo -= 1.0;
  double hi = u_best;
  while (hi < 700.0 && h(hi) > 1e-20 * best) hi += 1.0;
  double total = 0.0;
  for (double a = lo; a < hi; a += 1.0) total += quad::integrate(h, a, std::min(a + 1.0, hi));
  return total;
}

void write_samples_binary(const std::string& path, const Eigen::MatrixXd& samples,
                          std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  const std::array<std::uint64_t, 3> header{static_cast<std::uint64_t>(samples.cols()),
                                            static_cast<std::uint64_t>(samples.rows()), seed};
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(header.data()), sizeof header);
  out.write(reinterpret_cast<const char*>(samples.data()),
            static_cast<std::streamsize>(samples.size() * sizeof(double)));
  if (!out) throw NumericalError("short write to " + path);
}

Eigen::MatrixXd read_samples_binary(const std::string& path, std::uint64_t* seed) {
  std::ifstream in(path, std::ios::binary);
  char magic[8];
  std::array<std::uint64_t, 3> header{};
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(header.data()), sizeof header);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw DomainError(path + ": not a sample file");
  }
  Eigen::MatrixXd samples(static_cast<Eigen::Index>(header[1]),
                          static_cast<Eigen::Index>(header[0]));
  in.read(reinterpret_cast<char*>(samples.data()),
          static_cast<std::streamsize>(samples.size() * sizeof(double)));
  if (!in) throw DomainError(path + ": truncated sample file");
  if (seed) *seed = header[2];
  return samples;
}

void write_samples_csv(const std::string& path, const Eigen::MatrixXd& samples) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  out.precision(17);
  for (Eigen::Index j = 0; j < samples.cols(); ++j) out << (j ? "," : "") << "x" << j + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    for (Eigen::Index j = 0; j < samples.cols(); ++j) out << (j ? "," : "") << samples(i, j);
    out << '\n';
  }
}

}  // namespace mixagg
