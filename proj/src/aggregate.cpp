#include "mixagg/aggregate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "mixagg/errors.hpp"
#include "mixagg/specfun.hpp"

namespace mixagg {

namespace {

using specfun::log_gamma;

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

void check_argument(double x, const char* what) {
  if (!(x >= 0.0)) throw DomainError(std::string(what) + ": x must be >= 0");
}

// exp(log_front) * value without forming an overflowing front factor.
double scaled(double log_front, double value) {
  if (value == 0.0) return 0.0;
  const double sign = value < 0.0 ? -1.0 : 1.0;
  return sign * std::exp(log_front + std::log(std::abs(value)));
}

// x^{p} * rest for x = 0 when the log form would give 0 * inf.
double power_at_origin(double p, double constant) {
  if (p > 0.0) return 0.0;
  if (p < 0.0) return kInf;
  return constant;
}

double pareto_pdf(const GammaMixing& g, int n, double x) {
  return std::exp((n - 1.0) * std::log(x) - n * std::log(g.rate) - log_beta(n, g.shape) -
                  (n + g.shape) * std::log1p(x / g.rate));
}

double gamma_claims_pdf(const GleserGammaMixing& g, int n, double x) {
  double sum = 0.0;
  const double log_lx = std::log(g.lambda * x);
  for (int k = 0; k <= n - 1; ++k) {
    const double coefficient =
        ((k % 2 == 0) ? 1.0 : -1.0) * specfun::falling_factorial(g.alpha - 1.0, k);
    sum += coefficient * std::exp(std::log(g.lambda) + (n + g.alpha - k - 2.0) * log_lx -
                                  g.lambda * x - log_gamma(g.alpha) - log_gamma(k + 1.0) -
                                  log_gamma(n - k));
  }
  return sum;
}

double weibull_half_pdf(const LevyMixing& l, int n, double x) {
  double sum = 0.0;
  const double front = std::log(l.lambda) - (2.0 * n - 1.0) * std::numbers::ln2 - log_gamma(n) -
                       l.lambda * std::sqrt(x);
  for (int k = 0; k <= n - 1; ++k) {
    sum += std::exp(front + log_gamma(2.0 * (n - 1) - k + 1.0) - log_gamma(n - k) -
                    log_gamma(k + 1.0) + k * std::log(2.0 * l.lambda) +
                    0.5 * (k - 1.0) * std::log(x));
  }
  return sum;
}

std::vector<double> stable_bell_constants(double alpha, int n) {
  std::vector<double> constants(n);
  for (int j = 1; j <= n; ++j) constants[j - 1] = specfun::falling_factorial(alpha, j);
  return specfun::bell_row(n, constants);
}

double weibull_pdf(const PositiveStableMixing& p, int n, double x) {
  const std::vector<double> bell = stable_bell_constants(p.alpha, n);
  const double envelope = -std::pow(x, p.alpha) - log_gamma(n);
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    sum += scaled(envelope + (k * p.alpha - 1.0) * std::log(x), sign * bell[k - 1]);
  }
  return sum;
}

double inverse_gaussian_pdf(const InverseGaussianMixing& ig, int n, double x) {
  const double c = ig.lambda / ig.mu;
  const double b = 2.0 * ig.mu * ig.mu / ig.lambda;
  const double root_minus_one = b * x / (1.0 + std::sqrt(1.0 + b * x));  // a(x)
  const double log_y = std::log1p(b * x);
  const double front = (n - 1.0) * std::log(x) - log_gamma(n) + std::log(c) -
                       (2.0 * n - 1.0) * std::numbers::ln2 + n * std::log(b) - c * root_minus_one;
  double sum = 0.0;
  for (int k = 0; k <= n - 1; ++k) {
    sum += std::exp(front + log_gamma(2.0 * n - 1.0 - k) - log_gamma(n - k) - log_gamma(k + 1.0) +
                    k * std::log(2.0 * c) + ((k - 1.0) / 2.0 + 1.0 - n) * log_y);
  }
  return sum;
}

double expected_theta_or_infinity(const MixingDistribution& m) {
  try {
    return pos_moment(m, 1);
  } catch (const NonexistentMoment&) {
    return kInf;
  }
}

}  // namespace

AggregateModel::AggregateModel(MixingDistribution mixing, int n)
    : vector_(std::move(mixing), n) {}

AggregateModel AggregateModel::pareto(double alpha, double beta, int n) {
  return AggregateModel(MixingDistribution::gamma(alpha, beta), n);
}
AggregateModel AggregateModel::gamma_claims(double alpha, double lambda, int n) {
  return AggregateModel(MixingDistribution::gleser_gamma(alpha, lambda), n);
}
AggregateModel AggregateModel::weibull_half(double lambda, int n) {
  return AggregateModel(MixingDistribution::levy(lambda), n);
}
AggregateModel AggregateModel::weibull(double alpha, int n) {
  return AggregateModel(MixingDistribution::positive_stable(alpha), n);
}
AggregateModel AggregateModel::inverse_gaussian(double lambda, double mu, int n) {
  return AggregateModel(MixingDistribution::inverse_gaussian(lambda, mu), n);
}
AggregateModel AggregateModel::lindley(double lambda, int n) {
  return AggregateModel(MixingDistribution::lindley(lambda), n);
}

double pdf_at_origin(const AggregateModel& a) {
  const auto& m = a.mixing();
  // f(x) = x^{n-1}/Gamma(n) E[Theta^n e^{-x Theta}]: n = 1 gives E Theta; for
  // n >= 2 a finite E Theta forces 0, a tail heavier than 1/theta forces +inf.
  const double first = expected_theta_or_infinity(m);
  if (a.n() == 1) return first;
  if (std::isfinite(first)) return 0.0;
  if (const auto* b = std::get_if<BetaSecondKindMixing>(&m.kind()); b && b->gamma == 1.0) {
    return b->beta / (a.n() - 1.0);
  }
  return kInf;
}

double pdf_generic(const AggregateModel& a, double x) {
  check_argument(x, "pdf_generic");
  if (x == 0.0) return pdf_at_origin(a);
  const int n = a.n();
  const double derivative = laplace_derivative(a.mixing(), n, x);
  const double signed_derivative = (n % 2 == 0) ? derivative : -derivative;
  return scaled((n - 1.0) * std::log(x) - log_gamma(n), signed_derivative);
}

double pdf_closed(const AggregateModel& a, double x) {
  check_argument(x, "pdf_closed");
  const auto& kind = a.mixing().kind();
  const int n = a.n();
  const bool supported = a.mixing().is<GammaMixing>() || a.mixing().is<GleserGammaMixing>() ||
                         a.mixing().is<LevyMixing>() || a.mixing().is<PositiveStableMixing>() ||
                         a.mixing().is<InverseGaussianMixing>();
  if (!supported) throw Unsupported("no closed-form sum density for " + a.mixing().describe());
  if (x == 0.0) return pdf_at_origin(a);
  if (const auto* g = std::get_if<GammaMixing>(&kind)) return pareto_pdf(*g, n, x);
  if (const auto* g = std::get_if<GleserGammaMixing>(&kind)) return gamma_claims_pdf(*g, n, x);
  if (const auto* l = std::get_if<LevyMixing>(&kind)) return weibull_half_pdf(*l, n, x);
  if (const auto* p = std::get_if<PositiveStableMixing>(&kind)) return weibull_pdf(*p, n, x);
  return inverse_gaussian_pdf(std::get<InverseGaussianMixing>(kind), n, x);
}

double survival(const AggregateModel& a, double x) {
  check_argument(x, "survival");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const auto& m = a.mixing();
  double sum = laplace(m, x);
  const double log_x = std::log(x);
  for (int k = 1; k <= a.n() - 1; ++k) {
    const double derivative = laplace_derivative(m, k, x);
    sum += scaled(k * log_x - log_gamma(k + 1.0), (k % 2 == 0) ? derivative : -derivative);
  }
  return std::min(sum, 1.0);
}

double cdf(const AggregateModel& a, double x) { return 1.0 - survival(a, x); }

double moment(const AggregateModel& a, int r) {
  if (r < 0) throw DomainError("moment: order must be >= 0");
  if (r == 0) return 1.0;
  const int n = a.n();
  return std::exp(log_gamma(n + r) - log_gamma(n)) * neg_moment(a.mixing(), r);
}

double mean(const AggregateModel& a) { return moment(a, 1); }

double variance(const AggregateModel& a) {
  const double m1 = moment(a, 1);
  return moment(a, 2) - m1 * m1;
}

MixtureRepresentation mixture_representation(const AggregateModel& a) {
  const auto& kind = a.mixing().kind();
  const int n = a.n();
  MixtureRepresentation rep;
  if (const auto* g = std::get_if<GammaMixing>(&kind)) {
    rep.components.push_back({ComponentFamily::BetaSecondKind, static_cast<double>(n), g->shape,
                              g->rate, 1.0});
    return rep;
  }
  if (const auto* g = std::get_if<GleserGammaMixing>(&kind)) {
    for (int k = 0; k <= n - 1; ++k) {
      const double shape = n + g->alpha - k - 1.0;
      // (-1)^k (alpha-1)_k = Gamma(k+1-alpha)/Gamma(1-alpha) > 0.
      const double signed_falling =
          ((k % 2 == 0) ? 1.0 : -1.0) * specfun::falling_factorial(g->alpha - 1.0, k);
      const double weight = std::exp(std::log(signed_falling) + log_gamma(shape) -
                                     log_gamma(g->alpha) - log_gamma(k + 1.0) - log_gamma(n - k));
      rep.components.push_back(
          {ComponentFamily::ClassicalGamma, shape, 0.0, 1.0 / g->lambda, weight});
    }
    return rep;
  }
  if (const auto* l = std::get_if<LevyMixing>(&kind)) {
    for (int k = 0; k <= n - 1; ++k) {
      const double weight = std::exp(log_gamma(2.0 * n - k - 1.0) - log_gamma(n - k) -
                                     log_gamma(n) - (2.0 * n - k - 2.0) * std::numbers::ln2);
      rep.components.push_back(
          {ComponentFamily::SquareGamma, (k + 1.0) / 2.0, 0.0, 1.0 / l->lambda, weight});
    }
    return rep;
  }
  if (const auto* p = std::get_if<PositiveStableMixing>(&kind)) {
    const std::vector<double> bell = stable_bell_constants(p->alpha, n);
    for (int k = 1; k <= n; ++k) {
      const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
      const double weight = sign * bell[k - 1] * std::exp(log_gamma(k) - log_gamma(n)) / p->alpha;
      rep.components.push_back(
          {ComponentFamily::GeneralizedGamma, p->alpha, static_cast<double>(k), 1.0, weight});
    }
    return rep;
  }
  throw Unsupported("no finite mixture representation for " + a.mixing().describe());
}

double component_pdf(const MixtureComponent& c, double x) {
  check_argument(x, "component_pdf");
  const double s = c.shape;
  const double q = c.secondary_shape;
  const double t = c.scale;
  switch (c.family) {
    case ComponentFamily::ClassicalGamma:
      if (x == 0.0) return power_at_origin(s - 1.0, 1.0 / t);
      return std::exp((s - 1.0) * std::log(x) - x / t - log_gamma(s) - s * std::log(t));
    case ComponentFamily::SquareGamma:
      if (x == 0.0) {
        return power_at_origin(s - 1.0, std::exp(-std::numbers::ln2 - log_gamma(2.0 * s) -
                                                 2.0 * s * std::log(t)));
      }
      return std::exp((s - 1.0) * std::log(x) - std::sqrt(x) / t - std::numbers::ln2 -
                      log_gamma(2.0 * s) - 2.0 * s * std::log(t));
    case ComponentFamily::GeneralizedGamma:
      if (x == 0.0) return power_at_origin(s * q - 1.0, s / (std::tgamma(q) * t));
      return std::exp(std::log(s) + (s * q - 1.0) * std::log(x) - std::pow(x / t, s) -
                      log_gamma(q) - s * q * std::log(t));
    case ComponentFamily::BetaSecondKind:
      if (x == 0.0) return power_at_origin(s - 1.0, std::exp(-std::log(t) - log_beta(s, q)));
      return std::exp((s - 1.0) * std::log(x) - s * std::log(t) - log_beta(s, q) -
                      (s + q) * std::log1p(x / t));
  }
  return 0.0;
}

double component_survival(const MixtureComponent& c, double x) {
  return component_upper_moment(c, 0.0, x);
}

double component_moment(const MixtureComponent& c, double r) {
  if (!(r >= 0.0)) throw DomainError("component_moment: order must be >= 0");
  const double s = c.shape;
  const double q = c.secondary_shape;
  const double t = c.scale;
  switch (c.family) {
    case ComponentFamily::ClassicalGamma:
      return std::exp(r * std::log(t) + log_gamma(s + r) - log_gamma(s));
    case ComponentFamily::SquareGamma:
      return std::exp(2.0 * r * std::log(t) + log_gamma(2.0 * s + 2.0 * r) - log_gamma(2.0 * s));
    case ComponentFamily::GeneralizedGamma:
      return std::exp(r * std::log(t) + log_gamma(q + r / s) - log_gamma(q));
    case ComponentFamily::BetaSecondKind:
      if (r >= q) {
        throw NonexistentMoment("second-kind beta component has no moment of order >= " +
                                std::to_string(q));
      }
      return std::exp(r * std::log(t) + log_gamma(s + r) + log_gamma(q - r) - log_gamma(s) -
                      log_gamma(q));
  }
  return 0.0;
}

double component_upper_moment(const MixtureComponent& c, double r, double a) {
  check_argument(a, "component_upper_moment");
  const double full = component_moment(c, r);
  if (a == 0.0) return full;
  if (std::isinf(a)) return 0.0;
  const double s = c.shape;
  const double q = c.secondary_shape;
  const double t = c.scale;
  // Each family's incomplete moment is the moment times the survival of a
  // shape-shifted member of the same family.
  switch (c.family) {
    case ComponentFamily::ClassicalGamma:
      return full * specfun::gamma_survival(s + r, a / t);
    case ComponentFamily::SquareGamma:
      return full * specfun::gamma_survival(2.0 * s + 2.0 * r, std::sqrt(a) / t);
    case ComponentFamily::GeneralizedGamma:
      return full * specfun::gamma_survival(q + r / s, std::pow(a / t, s));
    case ComponentFamily::BetaSecondKind:
      // P(G_p/G_q > y) = I_{1/(1+y)}(q, p).
      return full * boost::math::ibeta(q - r, s + r, 1.0 / (1.0 + a / t));
  }
  return 0.0;
}

double mixture_pdf(const MixtureRepresentation& rep, double x) {
  double sum = 0.0;
  for (const auto& c : rep.components) sum += c.weight * component_pdf(c, x);
  return sum;
}

double mixture_survival(const MixtureRepresentation& rep, double x) {
  double sum = 0.0;
  for (const auto& c : rep.components) sum += c.weight * component_survival(c, x);
  return sum;
}

double mixture_upper_moment(const MixtureRepresentation& rep, double r, double a) {
  double sum = 0.0;
  for (const auto& c : rep.components) sum += c.weight * component_upper_moment(c, r, a);
  return sum;
}

double moment_from_mixture(const MixtureRepresentation& rep, double r) {
  if (r == 0.0) return 1.0;
  double sum = 0.0;
  for (const auto& c : rep.components) sum += c.weight * component_moment(c, r);
  return sum;
}

}  // namespace mixagg
