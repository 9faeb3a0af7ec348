#pragma once

// Frailty (mixing) laws Theta. Each law supplies its Laplace transform, exact
// derivatives of every order up to the cap, the Archimedean generator (the
// functional inverse of the transform), negative moments, and an exact
// sampler. The aggregate, dependence and oracle modules are written against
// this interface only.

#include <random>
#include <string>
#include <variant>

namespace mixagg {

/// Gamma(shape alpha, rate beta). Pareto claims, Clayton copula.
struct GammaMixing {
  double shape;
  double rate;
};

/// One-sided 1/2-stable (Levy) law with L(s) = exp(-lambda sqrt(s)).
/// Weibull(1/2) claims.
struct LevyMixing {
  double lambda;
};

/// Positive stable law with L(s) = exp(-s^alpha), alpha in (0, 1].
/// General Weibull claims, Gumbel copula.
struct PositiveStableMixing {
  double alpha;
};

/// Inverse Gaussian with shape lambda and mean mu.
struct InverseGaussianMixing {
  double lambda;
  double mu;
};

/// Lindley(lambda): mixture of Exp(lambda) and Gamma(2, lambda).
struct LindleyMixing {
  double lambda;
};

/// Mixing law on [lambda, inf) that turns exponential claims into
/// Gamma(alpha, lambda) claims, alpha in (0, 1).
struct GleserGammaMixing {
  double alpha;
  double lambda;
};

/// Second-kind beta B2(beta, gamma) = Gamma(beta,1) / Gamma(gamma,1).
struct BetaSecondKindMixing {
  double beta;
  double gamma;
};

class MixingDistribution {
 public:
  using Kind = std::variant<GammaMixing, LevyMixing, PositiveStableMixing, InverseGaussianMixing,
                            LindleyMixing, GleserGammaMixing, BetaSecondKindMixing>;

  /// Validates parameters; throws DomainError naming the violated constraint.
  explicit MixingDistribution(Kind kind);

  static MixingDistribution gamma(double shape, double rate);
  static MixingDistribution levy(double lambda);
  static MixingDistribution positive_stable(double alpha);
  static MixingDistribution inverse_gaussian(double lambda, double mu);
  static MixingDistribution lindley(double lambda);
  static MixingDistribution gleser_gamma(double alpha, double lambda);
  static MixingDistribution beta_second_kind(double beta, double gamma);

  const Kind& kind() const { return kind_; }

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(kind_);
  }

  std::string describe() const;

 private:
  Kind kind_;
};

using RandomStream = std::mt19937_64;

inline constexpr int kDerivativeCap = 64;

/// L(s) = E exp(-s Theta), s >= 0.
double laplace(const MixingDistribution& m, double s);

/// d^n/ds^n L(s), n in [1, 64], s > 0. Gamma uses the gamma-ratio closed form,
/// Gleser the Leibniz expansion, Levy / stable / inverse Gaussian Faa di Bruno
/// with Bell polynomials, Lindley its partial fractions, B2 the Kummer integral.
double laplace_derivative(const MixingDistribution& m, int n, double s);

/// Faa di Bruno evaluation for the laws whose transform is a composition
/// f(g(s)) (gamma, Levy, stable, inverse Gaussian). Unsupported otherwise.
double laplace_derivative_faa_di_bruno(const MixingDistribution& m, int n, double s);

/// Second route that avoids pointwise Bell evaluation: Bessel-K sums for Levy
/// and the inverse Gaussian, Bell constants at unit argument for the stable
/// law, and the same closed forms as laplace_derivative elsewhere.
double laplace_derivative_closed(const MixingDistribution& m, int n, double s);

/// E[Theta^a exp(-s Theta)] for real a >= 0. Integer a reuses the derivative
/// path; real a uses closed forms (gamma, B2) or quadrature over the density.
double tilted_moment(const MixingDistribution& m, double a, double s);

/// Archimedean generator phi = L^{-1} on (0, 1]. phi(0) is +infinity.
double generator(const MixingDistribution& m, double t);

/// E Theta^{-r}. NonexistentMoment when the integral diverges.
double neg_moment(const MixingDistribution& m, int r);

/// E Theta^r for r >= 1 where finite; used for density limits at the origin.
double pos_moment(const MixingDistribution& m, int r);

/// Density of Theta. Unsupported for the positive stable law.
double density(const MixingDistribution& m, double theta);

/// Left end of the support of Theta (lambda for Gleser, 0 otherwise).
double support_lower(const MixingDistribution& m);

/// Exact draw from F_Theta.
double sample_theta(const MixingDistribution& m, RandomStream& rng);

}  // namespace mixagg
