#include "mixagg/dependence.hpp"

#include <cmath>
#include <string>

#include "mixagg/errors.hpp"
#include "mixagg/quadrature.hpp"
#include "mixagg/specfun.hpp"

namespace mixagg {

namespace {

void check_length(const DependentVector& v, std::size_t size, const char* what) {
  if (static_cast<int>(size) != v.n) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(v.n) +
                            " arguments, got " + std::to_string(size));
  }
}

// Returns false when some u_i is 0 (copula is 0 there).
bool check_unit_arguments(std::span<const double> u) {
  bool all_positive = true;
  for (double ui : u) {
    if (!(ui >= 0.0) || ui > 1.0) throw DomainError("copula arguments must lie in [0, 1]");
    if (ui == 0.0) all_positive = false;
  }
  return all_positive;
}

}  // namespace

DependentVector::DependentVector(MixingDistribution mixing_law, int dimension)
    : mixing(std::move(mixing_law)), n(dimension) {
  if (n < 1) throw DomainError("dimension n must be >= 1");
}

double joint_survival(const DependentVector& v, std::span<const double> x) {
  check_length(v, x.size(), "joint_survival");
  double total = 0.0;
  for (double xi : x) {
    if (!(xi >= 0.0)) throw DomainError("joint_survival: arguments must be >= 0");
    total += xi;
  }
  return laplace(v.mixing, total);
}

double survival_copula(const DependentVector& v, std::span<const double> u) {
  check_length(v, u.size(), "survival_copula");
  if (!check_unit_arguments(u)) return 0.0;
  double total = 0.0;
  for (double ui : u) total += generator(v.mixing, ui);
  return laplace(v.mixing, total);
}

double survival_copula_closed(const DependentVector& v, std::span<const double> u) {
  check_length(v, u.size(), "survival_copula_closed");
  if (!check_unit_arguments(u)) return 0.0;
  const auto& kind = v.mixing.kind();
  const double n = static_cast<double>(v.n);

  const auto gumbel = [&](double alpha) {
    double sum = 0.0;
    for (double ui : u) sum += std::pow(-std::log(ui), 1.0 / alpha);
    return std::exp(-std::pow(sum, alpha));
  };

  if (const auto* g = std::get_if<GammaMixing>(&kind)) {
    double sum = 0.0;
    for (double ui : u) sum += std::pow(ui, -1.0 / g->shape);
    return std::pow(sum - n + 1.0, -g->shape);
  }
  if (const auto* g = std::get_if<GleserGammaMixing>(&kind)) {
    double sum = 0.0;
    for (double ui : u) sum += specfun::gamma_quantile_upper(g->alpha, ui);
    return specfun::gamma_survival(g->alpha, sum);
  }
  if (v.mixing.is<LevyMixing>()) return gumbel(0.5);
  if (const auto* p = std::get_if<PositiveStableMixing>(&kind)) return gumbel(p->alpha);
  if (const auto* ig = std::get_if<InverseGaussianMixing>(&kind)) {
    const double ratio = ig->mu / ig->lambda;
    double sum = 0.0;
    for (double ui : u) {
      const double w = 1.0 - ratio * std::log(ui);
      sum += w * w;
    }
    return std::exp(-(std::sqrt(sum - n + 1.0) - 1.0) / ratio);
  }
  throw Unsupported("no closed copula form for " + v.mixing.describe());
}

double kendall_tau(const DependentVector& v) {
  if (v.n < 2) throw DomainError("kendall_tau: needs n >= 2");
  // tau = 1 + 4 int_0^1 phi(t)/phi'(t) dt. With t = e^{-x} and s = phi(t),
  // phi(t)/phi'(t) = s L'(s), so the integrand is e^{-x} s L'(s).
  const auto& m = v.mixing;
  if (m.is<LindleyMixing>() || m.is<BetaSecondKindMixing>()) {
    // No closed generator: stay in s = phi(t), where the integral is
    // -int_0^inf s L'(s)^2 ds.
    auto in_s = [&](double s) {
      if (s == 0.0) return 0.0;
      const double d = laplace_derivative(m, 1, s);
      return s * d * d;
    };
    return 1.0 - 4.0 * quad::integrate_pieces(in_s, {0.0, 1.0, 10.0, quad::kInfinity});
  }
  auto integrand = [&](double x) {
    if (x == 0.0) return 0.0;
    const double s = generator(m, std::exp(-x));
    if (s == 0.0 || std::isinf(s)) return 0.0;
    return std::exp(-x) * s * laplace_derivative(m, 1, s);
  };
  const double integral = quad::integrate_pieces(integrand, {0.0, 1.0, 5.0, 20.0, quad::kInfinity});
  return 1.0 + 4.0 * integral;
}

double kendall_tau_closed(const DependentVector& v) {
  if (v.n < 2) throw DomainError("kendall_tau: needs n >= 2");
  const auto& kind = v.mixing.kind();
  if (const auto* g = std::get_if<GammaMixing>(&kind)) return 1.0 / (1.0 + 2.0 * g->shape);
  if (v.mixing.is<LevyMixing>()) return 0.5;
  if (const auto* p = std::get_if<PositiveStableMixing>(&kind)) return 1.0 - p->alpha;
  if (const auto* ig = std::get_if<InverseGaussianMixing>(&kind)) {
    const double a = ig->mu / ig->lambda;
    const double scaled = specfun::scaled_exponential_integral(2.0 / a);  // e^{2/a} Gamma(0, 2/a)
    return 1.0 - (a * (2.0 + a) - 4.0 * scaled) / (2.0 * a * a);
  }
  throw Unsupported("no closed-form Kendall tau for " + v.mixing.describe());
}

double pearson_rho(const DependentVector& v) {
  if (v.n < 2) throw DomainError("pearson_rho: needs n >= 2");
  const double ew = neg_moment(v.mixing, 1);
  const double ew2 = neg_moment(v.mixing, 2);
  return (ew2 - ew * ew) / (2.0 * ew2 - ew * ew);
}

double joint_moment(const DependentVector& v, std::span<const int> r) {
  check_length(v, r.size(), "joint_moment");
  int total = 0;
  double log_factorials = 0.0;
  for (int ri : r) {
    if (ri < 0) throw DomainError("joint_moment: orders must be >= 0");
    total += ri;
    log_factorials += specfun::log_gamma(ri + 1.0);
  }
  return std::exp(log_factorials) * neg_moment(v.mixing, total);
}

}  // namespace mixagg
