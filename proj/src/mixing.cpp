#include "mixagg/mixing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "detail/roots.hpp"
#include "mixagg/errors.hpp"
#include "mixagg/quadrature.hpp"
#include "mixagg/specfun.hpp"

namespace mixagg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using specfun::log_gamma;

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

void check_order(int n) {
  if (n < 1) throw DomainError("derivative order must be >= 1");
  if (n > kDerivativeCap) {
    throw DerivativeCapExceeded("derivative order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(kDerivativeCap));
  }
}

// Coefficients of d^j/ds^j sqrt(s) = a_j s^{1/2 - j}.
double sqrt_derivative_coefficient(int j) {
  const double magnitude =
      std::exp(log_gamma(2.0 * j - 1.0) - (2.0 * j - 1.0) * std::numbers::ln2 - log_gamma(j));
  return (j % 2 == 1) ? magnitude : -magnitude;
}

// Faa di Bruno: d^n f(g(s)) = sum_k f^(k)(g) B_{n,k}(g', ..., g^(n-k+1)).
template <class OuterDerivative, class InnerDerivative>
double faa_di_bruno(int n, OuterDerivative outer, InnerDerivative inner) {
  std::vector<double> inner_derivatives(n);
  for (int j = 1; j <= n; ++j) inner_derivatives[j - 1] = inner(j);
  const std::vector<double> bell = specfun::bell_row(n, inner_derivatives);
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) sum += outer(k) * bell[k - 1];
  return sum;
}

// (-1)^n L^(n)(s) for Gamma(shape, rate).
double gamma_signed_derivative(const GammaMixing& g, int n, double s) {
  return std::exp(log_gamma(g.shape + n) - log_gamma(g.shape) - n * std::log(g.rate) -
                  (g.shape + n) * std::log1p(s / g.rate));
}

double gleser_leibniz(const GleserGammaMixing& g, int n, double s) {
  // L'(s) = -lambda^alpha s^{alpha-1} e^{-lambda s} / Gamma(alpha); differentiate n-1 times.
  const double log_prefactor = g.alpha * std::log(g.lambda) - log_gamma(g.alpha) - g.lambda * s;
  double sum = 0.0;
  for (int k = 0; k <= n - 1; ++k) {
    const double magnitude = std::exp(log_prefactor + specfun::log_binomial(n - 1, k) +
                                      (n - 1 - k) * std::log(g.lambda) +
                                      (g.alpha - 1.0 - k) * std::log(s));
    const double sign = ((n - 1 - k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * specfun::falling_factorial(g.alpha - 1.0, k) * magnitude;
  }
  return -sum;
}

double lindley_signed_derivative(const LindleyMixing& l, int n, double s) {
  const double base = l.lambda + s;
  const double c = std::log(l.lambda * l.lambda / (1.0 + l.lambda));
  return std::exp(c + log_gamma(n + 1.0) - (n + 1.0) * std::log(base)) +
         std::exp(c + log_gamma(n + 2.0) - (n + 2.0) * std::log(base));
}

double beta2_signed_derivative(const BetaSecondKindMixing& b, int n, double s) {
  return specfun::kummer_u_integral(b.beta + n, 1.0 + n - b.gamma, s) *
         std::exp(-log_beta(b.beta, b.gamma));
}

// Levy: (-1)^n L^(n)(s) = (lambda/sqrt(pi)) (lambda^2/(4s))^{nu/2} K_nu(lambda sqrt(s)),
// nu = n - 1/2.
double levy_bessel(const LevyMixing& l, int n, double s) {
  const double nu = n - 0.5;
  const double log_value = std::log(l.lambda) - 0.5 * std::log(std::numbers::pi) +
                           0.5 * nu * std::log(l.lambda * l.lambda / (4.0 * s)) +
                           specfun::log_bessel_k_half(n - 1, l.lambda * std::sqrt(s));
  return std::exp(log_value);
}

// (-1)^n d^n/dy^n exp(-c sqrt(y)) as a finite Bessel-polynomial sum.
double sqrt_exponential_signed_derivative_log(double c, int n, double y, double extra_log) {
  std::vector<double> terms(n);
  for (int k = 0; k <= n - 1; ++k) {
    terms[k] = log_gamma(2.0 * n - 1.0 - k) - log_gamma(n - k) - log_gamma(k + 1.0) +
               k * std::log(2.0 * c) + ((k - 1.0) / 2.0 + 1.0 - n) * std::log(y);
  }
  double top = terms[0];
  for (double t : terms) top = std::max(top, t);
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return std::exp(std::log(c) - (2.0 * n - 1.0) * std::numbers::ln2 + top + std::log(sum) -
                  c * std::sqrt(y) + extra_log);
}

double inverse_gaussian_closed(const InverseGaussianMixing& ig, int n, double s) {
  const double c = ig.lambda / ig.mu;
  const double b = 2.0 * ig.mu * ig.mu / ig.lambda;
  return sqrt_exponential_signed_derivative_log(c, n, 1.0 + b * s, c + n * std::log(b));
}

double stable_closed(const PositiveStableMixing& p, int n, double s) {
  std::vector<double> constants(n);
  for (int j = 1; j <= n; ++j) constants[j - 1] = specfun::falling_factorial(p.alpha, j);
  const std::vector<double> bell = specfun::bell_row(n, constants);
  const double envelope = std::exp(-std::pow(s, p.alpha));
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * bell[k - 1] * std::pow(s, k * p.alpha - n);
  }
  return sum * envelope;
}

double sign_of_order(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Typical magnitude of Theta, used to place quadrature breakpoints.
double theta_scale(const MixingDistribution& m) {
  return std::visit(Overloaded{
                        [](const GammaMixing& g) { return g.shape / g.rate; },
                        [](const LevyMixing& l) { return 0.5 * l.lambda * l.lambda; },
                        [](const PositiveStableMixing&) { return 1.0; },
                        [](const InverseGaussianMixing& ig) { return ig.mu; },
                        [](const LindleyMixing& l) { return 1.0 / l.lambda; },
                        [](const GleserGammaMixing& g) { return g.lambda; },
                        [](const BetaSecondKindMixing&) { return 1.0; },
                    },
                    m.kind());
}

// int h(theta) dF_Theta over the support, split so the endpoint singularity
// and the e^{-s theta} decay scale each get their own panel.
template <class H>
double integrate_against_density(const MixingDistribution& m, H h, double decay_rate) {
  const double lo = support_lower(m);
  double width = theta_scale(m);
  if (decay_rate > 0.0) width = std::min(width, 1.0 / decay_rate);
  auto integrand = [&](double theta) {
    const double d = density(m, theta);
    return d == 0.0 ? 0.0 : h(theta) * d;
  };
  double sum = quad::integrate_singular(integrand, lo, lo + width);
  sum += quad::integrate(integrand, lo + width, lo + 10.0 * width);
  sum += quad::integrate(integrand, lo + 10.0 * width, quad::kInfinity);
  return sum;
}

}  // namespace

MixingDistribution::MixingDistribution(Kind kind) : kind_(kind) {
  std::visit(Overloaded{
                 [](const GammaMixing& g) {
                   require(positive(g.shape), "gamma mixing: shape must be positive");
                   require(positive(g.rate), "gamma mixing: rate must be positive");
                 },
                 [](const LevyMixing& l) {
                   require(positive(l.lambda), "levy mixing: lambda must be positive");
                 },
                 [](const PositiveStableMixing& p) {
                   require(positive(p.alpha) && p.alpha <= 1.0,
                           "positive stable mixing: alpha must lie in (0, 1]");
                 },
                 [](const InverseGaussianMixing& ig) {
                   require(positive(ig.lambda), "inverse gaussian mixing: lambda must be positive");
                   require(positive(ig.mu), "inverse gaussian mixing: mu must be positive");
                 },
                 [](const LindleyMixing& l) {
                   require(positive(l.lambda), "lindley mixing: lambda must be positive");
                 },
                 [](const GleserGammaMixing& g) {
                   require(positive(g.alpha) && g.alpha < 1.0,
                           "gleser gamma mixing: alpha must lie in (0, 1)");
                   require(positive(g.lambda), "gleser gamma mixing: lambda must be positive");
                 },
                 [](const BetaSecondKindMixing& b) {
                   require(positive(b.beta), "beta2 mixing: beta must be positive");
                   require(positive(b.gamma), "beta2 mixing: gamma must be positive");
                 },
             },
             kind_);
}

MixingDistribution MixingDistribution::gamma(double shape, double rate) {
  return MixingDistribution(GammaMixing{shape, rate});
}
MixingDistribution MixingDistribution::levy(double lambda) {
  return MixingDistribution(LevyMixing{lambda});
}
MixingDistribution MixingDistribution::positive_stable(double alpha) {
  return MixingDistribution(PositiveStableMixing{alpha});
}
MixingDistribution MixingDistribution::inverse_gaussian(double lambda, double mu) {
  return MixingDistribution(InverseGaussianMixing{lambda, mu});
}
MixingDistribution MixingDistribution::lindley(double lambda) {
  return MixingDistribution(LindleyMixing{lambda});
}
MixingDistribution MixingDistribution::gleser_gamma(double alpha, double lambda) {
  return MixingDistribution(GleserGammaMixing{alpha, lambda});
}
MixingDistribution MixingDistribution::beta_second_kind(double beta, double gamma) {
  return MixingDistribution(BetaSecondKindMixing{beta, gamma});
}

std::string MixingDistribution::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const GammaMixing& g) {
                   out << "gamma(shape=" << g.shape << ", rate=" << g.rate << ")";
                 },
                 [&](const LevyMixing& l) { out << "levy(lambda=" << l.lambda << ")"; },
                 [&](const PositiveStableMixing& p) {
                   out << "positive_stable(alpha=" << p.alpha << ")";
                 },
                 [&](const InverseGaussianMixing& ig) {
                   out << "inverse_gaussian(lambda=" << ig.lambda << ", mu=" << ig.mu << ")";
                 },
                 [&](const LindleyMixing& l) { out << "lindley(lambda=" << l.lambda << ")"; },
                 [&](const GleserGammaMixing& g) {
                   out << "gleser_gamma(alpha=" << g.alpha << ", lambda=" << g.lambda << ")";
                 },
                 [&](const BetaSecondKindMixing& b) {
                   out << "beta2(beta=" << b.beta << ", gamma=" << b.gamma << ")";
                 },
             },
             kind_);
  return out.str();
}

double laplace(const MixingDistribution& m, double s) {
  if (!(s >= 0.0)) throw DomainError("laplace: s must be >= 0");
  if (s == 0.0) return 1.0;
  if (std::isinf(s)) return 0.0;
  return std::visit(
      Overloaded{
          [&](const GammaMixing& g) { return std::exp(-g.shape * std::log1p(s / g.rate)); },
          [&](const LevyMixing& l) { return std::exp(-l.lambda * std::sqrt(s)); },
          [&](const PositiveStableMixing& p) { return std::exp(-std::pow(s, p.alpha)); },
          [&](const InverseGaussianMixing& ig) {
            const double x = 2.0 * ig.mu * ig.mu * s / ig.lambda;
            // 1 - sqrt(1 + x) without cancellation.
            return std::exp(-(ig.lambda / ig.mu) * x / (1.0 + std::sqrt(1.0 + x)));
          },
          [&](const LindleyMixing& l) {
            const double base = l.lambda + s;
            return l.lambda * l.lambda * (base + 1.0) / ((1.0 + l.lambda) * base * base);
          },
          [&](const GleserGammaMixing& g) { return specfun::gamma_survival(g.alpha, g.lambda * s); },
          [&](const BetaSecondKindMixing& b) {
            return specfun::kummer_u_integral(b.beta, 1.0 - b.gamma, s) *
                   std::exp(-log_beta(b.beta, b.gamma));
          },
      },
      m.kind());
}

double laplace_derivative_faa_di_bruno(const MixingDistribution& m, int n, double s) {
  check_order(n);
  if (!(s > 0.0)) throw DomainError("laplace derivative: s must be > 0");
  return std::visit(
      Overloaded{
          [&](const GammaMixing& g) {
            // f(u) = u^{-alpha}, g(s) = 1 + s / rate.
            const double u = 1.0 + s / g.rate;
            return faa_di_bruno(
                n,
                [&](int k) {
                  return specfun::falling_factorial(-g.shape, k) * std::pow(u, -g.shape - k);
                },
                [&](int j) { return j == 1 ? 1.0 / g.rate : 0.0; });
          },
          [&](const LevyMixing& l) {
            const double outer = std::exp(-l.lambda * std::sqrt(s));
            return faa_di_bruno(
                n, [&](int k) { return std::pow(-l.lambda, k) * outer; },
                [&](int j) { return sqrt_derivative_coefficient(j) * std::pow(s, 0.5 - j); });
          },
          [&](const PositiveStableMixing& p) {
            const double outer = std::exp(-std::pow(s, p.alpha));
            return faa_di_bruno(
                n, [&](int k) { return sign_of_order(k) * outer; },
                [&](int j) {
                  return specfun::falling_factorial(p.alpha, j) * std::pow(s, p.alpha - j);
                });
          },
          [&](const InverseGaussianMixing& ig) {
            // f(u) = e^{-c u}, g(s) = sqrt(1 + b s) - 1.
            const double c = ig.lambda / ig.mu;
            const double b = 2.0 * ig.mu * ig.mu / ig.lambda;
            const double y = 1.0 + b * s;
            const double outer = laplace(m, s);
            return faa_di_bruno(
                n, [&](int k) { return std::pow(-c, k) * outer; },
                [&](int j) {
                  return sqrt_derivative_coefficient(j) * std::pow(b, j) * std::pow(y, 0.5 - j);
                });
          },
          [&](const auto&) -> double {
            throw Unsupported("Faa di Bruno path needs a composition form; " + m.describe() +
                              " has none");
          },
      },
      m.kind());
}

double laplace_derivative_closed(const MixingDistribution& m, int n, double s) {
  check_order(n);
  if (!(s > 0.0)) throw DomainError("laplace derivative: s must be > 0");
  const double sign = sign_of_order(n);
  return std::visit(
      Overloaded{
          [&](const GammaMixing& g) { return sign * gamma_signed_derivative(g, n, s); },
          [&](const LevyMixing& l) { return sign * levy_bessel(l, n, s); },
          [&](const PositiveStableMixing& p) { return sign * stable_closed(p, n, s); },
          [&](const InverseGaussianMixing& ig) { return sign * inverse_gaussian_closed(ig, n, s); },
          [&](const LindleyMixing& l) { return sign * lindley_signed_derivative(l, n, s); },
          [&](const GleserGammaMixing& g) { return gleser_leibniz(g, n, s); },
          [&](const BetaSecondKindMixing& b) { return sign * beta2_signed_derivative(b, n, s); },
      },
      m.kind());
}

double laplace_derivative(const MixingDistribution& m, int n, double s) {
  if (m.is<LevyMixing>() || m.is<PositiveStableMixing>() || m.is<InverseGaussianMixing>()) {
    return laplace_derivative_faa_di_bruno(m, n, s);
  }
  return laplace_derivative_closed(m, n, s);
}

double tilted_moment(const MixingDistribution& m, double a, double s) {
  if (!(a >= 0.0)) throw DomainError("tilted_moment: order must be >= 0");
  if (!(s >= 0.0)) throw DomainError("tilted_moment: s must be >= 0");
  if (a == 0.0) return laplace(m, s);
  if (s == 0.0) {
    if (a == std::floor(a)) return pos_moment(m, static_cast<int>(a));
    throw Unsupported("tilted_moment: fractional moment at s = 0");
  }
  if (const auto* g = std::get_if<GammaMixing>(&m.kind())) {
    return std::exp(g->shape * std::log(g->rate) + log_gamma(g->shape + a) - log_gamma(g->shape) -
                    (g->shape + a) * std::log(g->rate + s));
  }
  if (const auto* b = std::get_if<BetaSecondKindMixing>(&m.kind())) {
    return specfun::kummer_u_integral(b->beta + a, 1.0 + a - b->gamma, s) *
           std::exp(-log_beta(b->beta, b->gamma));
  }
  if (a == std::floor(a) && a <= kDerivativeCap) {
    const int n = static_cast<int>(a);
    return sign_of_order(n) * laplace_derivative(m, n, s);
  }
  if (m.is<PositiveStableMixing>()) {
    throw Unsupported("tilted_moment: fractional order needs a density; positive stable has none");
  }
  return integrate_against_density(
      m, [&](double theta) { return std::exp(a * std::log(theta) - s * theta); }, s);
}

double generator(const MixingDistribution& m, double t) {
  if (!(t >= 0.0) || t > 1.0) throw DomainError("generator: t must lie in [0, 1]");
  if (t == 1.0) return 0.0;
  if (t == 0.0) return std::numeric_limits<double>::infinity();
  const double neg_log_t = -std::log(t);
  return std::visit(
      Overloaded{
          [&](const GammaMixing& g) { return g.rate * std::expm1(neg_log_t / g.shape); },
          [&](const LevyMixing& l) {
            const double r = neg_log_t / l.lambda;
            return r * r;
          },
          [&](const PositiveStableMixing& p) { return std::pow(neg_log_t, 1.0 / p.alpha); },
          [&](const InverseGaussianMixing& ig) {
            // (lambda / 2mu^2) [(1 + (mu/lambda) r)^2 - 1] with r = -log t.
            const double v = (ig.mu / ig.lambda) * neg_log_t;
            return (ig.lambda / (2.0 * ig.mu * ig.mu)) * v * (2.0 + v);
          },
          [&](const GleserGammaMixing& g) {
            return specfun::gamma_quantile_upper(g.alpha, t) / g.lambda;
          },
          [&](const auto&) {
            return detail::solve_increasing([&](double s) { return t - laplace(m, s); }, 1.0,
                                            1e-13);
          },
      },
      m.kind());
}

double neg_moment(const MixingDistribution& m, int r) {
  if (r < 0) throw DomainError("neg_moment: order must be >= 0");
  if (r == 0) return 1.0;
  return std::visit(
      Overloaded{
          [&](const GammaMixing& g) {
            if (r >= g.shape) {
              throw NonexistentMoment("E Theta^-" + std::to_string(r) +
                                      " diverges for gamma mixing unless order < shape");
            }
            return std::exp(r * std::log(g.rate) + log_gamma(g.shape - r) - log_gamma(g.shape));
          },
          [&](const InverseGaussianMixing& ig) {
            return pos_moment(m, r + 1) / std::pow(ig.mu, 2.0 * r + 1.0);
          },
          [&](const GleserGammaMixing& g) {
            // Gamma(alpha, lambda) claims: E X^r = r! E Theta^-r.
            return std::exp(log_gamma(g.alpha + r) - log_gamma(g.alpha) - log_gamma(r + 1.0) -
                            r * std::log(g.lambda));
          },
          [&](const LindleyMixing&) -> double {
            throw NonexistentMoment(
                "negative moments of the Lindley law diverge (positive density at 0)");
          },
          [&](const BetaSecondKindMixing& b) {
            if (r >= b.beta) {
              throw NonexistentMoment("E Theta^-" + std::to_string(r) +
                                      " diverges for beta2 mixing unless order < beta");
            }
            return std::exp(log_gamma(b.beta - r) + log_gamma(b.gamma + r) - log_gamma(b.beta) -
                            log_gamma(b.gamma));
          },
          [&](const LevyMixing& l) {
            // Theta = lambda^2 / (2 N^2) and E N^{2r} = (2r)! / (2^r r!).
            return std::exp(log_gamma(2.0 * r + 1.0) - log_gamma(r + 1.0) -
                            2.0 * r * std::log(l.lambda));
          },
          [&](const PositiveStableMixing& p) {
            // Weibull claims: E X^r = Gamma(1 + r/alpha) = r! E Theta^-r.
            return std::exp(log_gamma(1.0 + r / p.alpha) - log_gamma(r + 1.0));
          },
      },
      m.kind());
}

double pos_moment(const MixingDistribution& m, int r) {
  if (r < 0) throw DomainError("pos_moment: order must be >= 0");
  if (r == 0) return 1.0;
  const auto infinite = [&]() -> double {
    throw NonexistentMoment("E Theta^" + std::to_string(r) + " is infinite for " + m.describe());
  };
  return std::visit(
      Overloaded{
          [&](const GammaMixing& g) {
            return std::exp(log_gamma(g.shape + r) - log_gamma(g.shape) - r * std::log(g.rate));
          },
          [&](const InverseGaussianMixing& ig) {
            double sum = 0.0;
            for (int k = 0; k <= r - 1; ++k) {
              sum += std::exp(log_gamma(r + k) - log_gamma(k + 1.0) - log_gamma(r - k) -
                              k * std::log(2.0 * ig.lambda / ig.mu));
            }
            return std::pow(ig.mu, r) * sum;
          },
          [&](const LindleyMixing& l) {
            const double c = l.lambda * l.lambda / (1.0 + l.lambda);
            return c * (std::exp(log_gamma(r + 1.0) - (r + 1.0) * std::log(l.lambda)) +
                        std::exp(log_gamma(r + 2.0) - (r + 2.0) * std::log(l.lambda)));
          },
          [&](const PositiveStableMixing& p) { return p.alpha == 1.0 ? 1.0 : infinite(); },
          [&](const BetaSecondKindMixing& b) {
            if (r >= b.gamma) return infinite();
            return std::exp(log_gamma(b.beta + r) + log_gamma(b.gamma - r) - log_gamma(b.beta) -
                            log_gamma(b.gamma));
          },
          [&](const auto&) { return infinite(); },
      },
      m.kind());
}

double density(const MixingDistribution& m, double theta) {
  if (!(theta > 0.0) || std::isinf(theta)) return 0.0;
  return std::visit(
      Overloaded{
          [&](const GammaMixing& g) {
            return std::exp(g.shape * std::log(g.rate) + (g.shape - 1.0) * std::log(theta) -
                            g.rate * theta - log_gamma(g.shape));
          },
          [&](const LevyMixing& l) {
            return l.lambda / (2.0 * std::sqrt(std::numbers::pi)) *
                   std::exp(-1.5 * std::log(theta) - l.lambda * l.lambda / (4.0 * theta));
          },
          [&](const InverseGaussianMixing& ig) {
            const double d = theta - ig.mu;
            return std::sqrt(ig.lambda / (2.0 * std::numbers::pi)) *
                   std::exp(-1.5 * std::log(theta) -
                            ig.lambda * d * d / (2.0 * ig.mu * ig.mu * theta));
          },
          [&](const LindleyMixing& l) {
            return l.lambda * l.lambda / (1.0 + l.lambda) * (1.0 + theta) *
                   std::exp(-l.lambda * theta);
          },
          [&](const GleserGammaMixing& g) {
            if (theta <= g.lambda) return 0.0;
            return std::exp(-g.alpha * std::log(theta - g.lambda) + g.alpha * std::log(g.lambda) -
                            std::log(theta) - log_gamma(1.0 - g.alpha) - log_gamma(g.alpha));
          },
          [&](const BetaSecondKindMixing& b) {
            return std::exp((b.beta - 1.0) * std::log(theta) -
                            (b.beta + b.gamma) * std::log1p(theta) - log_beta(b.beta, b.gamma));
          },
          [&](const PositiveStableMixing&) -> double {
            throw Unsupported("the positive stable law has no closed-form density");
          },
      },
      m.kind());
}

double support_lower(const MixingDistribution& m) {
  if (const auto* g = std::get_if<GleserGammaMixing>(&m.kind())) return g->lambda;
  return 0.0;
}

double sample_theta(const MixingDistribution& m, RandomStream& rng) {
  return std::visit(
      Overloaded{
          [&](const GammaMixing& g) {
            return std::gamma_distribution<double>(g.shape, 1.0 / g.rate)(rng);
          },
          [&](const LevyMixing& l) {
            const double z = std::normal_distribution<double>(0.0, 1.0)(rng);
            return l.lambda * l.lambda / (2.0 * z * z);
          },
          [&](const PositiveStableMixing& p) {
            if (p.alpha == 1.0) return 1.0;
            // Kanter's representation of the one-sided stable law with L(s) = exp(-s^alpha).
            const double u = std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);
            const double e = std::exponential_distribution<double>(1.0)(rng);
            const double a = p.alpha;
            return std::sin(a * u) / std::pow(std::sin(u), 1.0 / a) *
                   std::pow(std::sin((1.0 - a) * u) / e, (1.0 - a) / a);
          },
          [&](const InverseGaussianMixing& ig) {
            // Michael, Schucany and Haas: transformation with multiple roots.
            const double nu = std::normal_distribution<double>(0.0, 1.0)(rng);
            const double y = nu * nu;
            const double mu = ig.mu;
            const double x = mu + mu * mu * y / (2.0 * ig.lambda) -
                             mu / (2.0 * ig.lambda) *
                                 std::sqrt(4.0 * mu * ig.lambda * y + mu * mu * y * y);
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            return u <= mu / (mu + x) ? x : mu * mu / x;
          },
          [&](const LindleyMixing& l) {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            const double shape = u < l.lambda / (1.0 + l.lambda) ? 1.0 : 2.0;
            return std::gamma_distribution<double>(shape, 1.0 / l.lambda)(rng);
          },
          [&](const GleserGammaMixing& g) {
            const double x = std::gamma_distribution<double>(g.alpha, 1.0)(rng);
            const double y = std::gamma_distribution<double>(1.0 - g.alpha, 1.0)(rng);
            return g.lambda * (x + y) / x;
          },
          [&](const BetaSecondKindMixing& b) {
            const double x = std::gamma_distribution<double>(b.beta, 1.0)(rng);
            const double y = std::gamma_distribution<double>(b.gamma, 1.0)(rng);
            return x / y;
          },
      },
      m.kind());
}

}  // namespace mixagg
