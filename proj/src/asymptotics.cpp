#include "mixagg/asymptotics.hpp"

#include <cmath>
#include <vector>

#include "mixagg/errors.hpp"
#include "mixagg/quadrature.hpp"

namespace mixagg {

namespace {

double log_argument(double beta, int m, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("tail pdf: x must be finite and > 0");
  const double y = std::log(x) - m * std::log(beta);
  if (!(y > 0.0)) throw DomainError("tail pdf: x must exceed beta^m");
  return y;
}

void check_shape(double beta, int m) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("tail pdf: beta must be > 0");
  if (m < 1) throw DomainError("tail pdf: m must be >= 1");
}

}  // namespace

ParetoTailSpec::ParetoTailSpec(double beta_, int m_, MixingDistribution mixing_)
    : beta(beta_), m(m_), mixing(std::move(mixing_)) {
  check_shape(beta, m);
  if (!mixing.is<GammaMixing>() && !mixing.is<InverseGaussianMixing>()) {
    throw Unsupported("tail pdf: mixing must be gamma or inverse Gaussian");
  }
}

double tail_pdf_generic(const ParetoTailSpec& spec, double x) {
  const double y = log_argument(spec.beta, spec.m, x);
  return -laplace_derivative(spec.mixing, 1, y) / x;
}

double tail_pdf_gamma(double alpha, double lambda, double beta, int m, double x) {
  if (!(alpha > 0.0) || !(lambda > 0.0)) throw DomainError("tail pdf: alpha, lambda must be > 0");
  check_shape(beta, m);
  const double y = log_argument(beta, m, x);
  return alpha * std::exp(alpha * std::log(lambda) - (alpha + 1.0) * std::log(lambda + y)) / x;
}

double tail_pdf_ig(double lambda, double mu, double beta, int m, double x) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw DomainError("tail pdf: lambda, mu must be > 0");
  check_shape(beta, m);
  const double phi = lambda / (mu * mu) + 2.0 * log_argument(beta, m, x);
  return std::sqrt(lambda / phi) * std::exp(lambda / mu - std::sqrt(lambda * phi)) / x;
}

double mixed_pareto_sum_pdf(const MixingDistribution& mixing, int n, double x) {
  if (n == 1) {
    if (!(x > 1.0)) return 0.0;
    return -laplace_derivative(mixing, 1, std::log(x)) / x;
  }
  if (n != 2) throw Unsupported("mixed_pareto_sum_pdf: n must be 1 or 2");
  if (!(x > 2.0)) return 0.0;
  // Joint density of (log X_1, log X_2) is L''(y_1 + y_2); integrate over the
  // split t + (x - t), symmetric about x/2, mass piled near t = 1.
  auto f = [&](double t) {
    const double u = x - t;
    return laplace_derivative(mixing, 2, std::log(t) + std::log(u)) / (t * u);
  };
  std::vector<double> cuts{1.0};
  for (double c = 2.0; c < 0.5 * x; c *= 4.0) cuts.push_back(c);
  cuts.push_back(0.5 * x);
  double half = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) half += quad::integrate(f, cuts[k], cuts[k + 1], 1e-13);
  return 2.0 * half;
}

}  // namespace mixagg
