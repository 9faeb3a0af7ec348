#pragma once

// Distribution of S_n = X_1 + ... + X_n for the exchangeable exponential
// mixture. The generic path needs only the n-th derivative of L; the closed
// paths evaluate the per-model sums directly.

#include <vector>

#include "mixagg/dependence.hpp"
#include "mixagg/mixing.hpp"

namespace mixagg {

class AggregateModel {
 public:
  AggregateModel(MixingDistribution mixing, int n);
  explicit AggregateModel(DependentVector vector) : vector_(std::move(vector)) {}

  /// Pareto(alpha, beta) claims, Clayton dependence: Theta ~ Gamma(alpha, rate beta).
  static AggregateModel pareto(double alpha, double beta, int n);
  /// Gamma(alpha, lambda) claims with alpha in (0, 1).
  static AggregateModel gamma_claims(double alpha, double lambda, int n);
  /// Weibull claims with survival exp(-lambda sqrt(x)).
  static AggregateModel weibull_half(double lambda, int n);
  /// Weibull claims with survival exp(-x^alpha), alpha in (0, 1].
  static AggregateModel weibull(double alpha, int n);
  /// Inverse Gaussian mixing with shape lambda, mean mu.
  static AggregateModel inverse_gaussian(double lambda, double mu, int n);
  static AggregateModel lindley(double lambda, int n);

  const MixingDistribution& mixing() const { return vector_.mixing; }
  int n() const { return vector_.n; }
  const DependentVector& vector() const { return vector_; }

 private:
  DependentVector vector_;
};

/// f(x) = x^{n-1}/Gamma(n) (-1)^n L^(n)(x). At x = 0 returns the limit, which
/// is +infinity when the density is unbounded at the origin.
double pdf_generic(const AggregateModel& a, double x);

/// Per-model closed form: second-kind beta (Pareto), gamma sum (gamma claims),
/// factorial sum (Weibull 1/2), Bell constants (Weibull), Bessel polynomial
/// sum (inverse Gaussian). Unsupported for other mixing laws.
double pdf_closed(const AggregateModel& a, double x);

/// Limit of the density at 0+; +infinity when unbounded.
double pdf_at_origin(const AggregateModel& a);

/// P(S_n > x) = sum_{k=0}^{n-1} x^k/k! (-1)^k L^(k)(x).
double survival(const AggregateModel& a, double x);
double cdf(const AggregateModel& a, double x);

/// E S_n^r = Gamma(n+r)/Gamma(n) E Theta^{-r}.
double moment(const AggregateModel& a, int r);
double mean(const AggregateModel& a);
double variance(const AggregateModel& a);

enum class ComponentFamily {
  ClassicalGamma,    // X = scale * G_shape
  SquareGamma,       // sqrt(X) = scale * G_{2 shape}
  GeneralizedGamma,  // X = scale * G_eta^{1/shape}, eta = secondary_shape
  BetaSecondKind,    // X = scale * G_shape / G_secondary
};

struct MixtureComponent {
  ComponentFamily family;
  double shape;
  double secondary_shape;
  double scale;
  double weight;
};

struct MixtureRepresentation {
  std::vector<MixtureComponent> components;
};

/// Finite-mixture form of S_n for the Pareto, gamma-claims, Weibull 1/2 and
/// Weibull models (any n up to the derivative cap).
MixtureRepresentation mixture_representation(const AggregateModel& a);

double component_pdf(const MixtureComponent& c, double x);
double component_survival(const MixtureComponent& c, double x);
/// E X^r, real r >= 0; NonexistentMoment for B2 with r >= secondary shape.
double component_moment(const MixtureComponent& c, double r);
/// E[X^r; X > a], the upper incomplete moment.
double component_upper_moment(const MixtureComponent& c, double r, double a);

double mixture_pdf(const MixtureRepresentation& rep, double x);
double mixture_survival(const MixtureRepresentation& rep, double x);
double mixture_upper_moment(const MixtureRepresentation& rep, double r, double a);

/// sum w_k E X_k^r.
double moment_from_mixture(const MixtureRepresentation& rep, double r);

}  // namespace mixagg
