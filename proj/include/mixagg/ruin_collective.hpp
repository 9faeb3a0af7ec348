#pragma once

// Lindley frailty: sum density, ruin probability of the compound Poisson
// surplus with Lindley-mixed exponential claims, and the collective model
// S_N with Poisson, negative binomial, geometric and logarithmic counts.

#include <variant>

namespace mixagg {

/// n lambda^2 x^{n-1} (x+lambda+n+1) / ((1+lambda)(x+lambda)^{n+2}); the x = 0
/// limit for n = 1 is (lambda+2)/(lambda(1+lambda)).
double lindley_sum_pdf(double lambda, int n, double x);

struct RuinInput {
  double lambda;  // Lindley parameter
  double phi;     // Poisson claim intensity
  double c;       // premium intensity
  double u;       // initial capital
};

/// u -> infinity limit 1 - (1 + lambda(1+theta0))/(1+lambda) e^{-theta0 lambda},
/// theta0 = phi/c. This is P(Theta <= theta0) under Lindley(lambda).
double ruin_probability_limit(double lambda, double theta0);

/// psi(u) - limit, formed without the e^{u phi/c} * Gamma(0, .) overflow.
double ruin_excess(const RuinInput& in);

double ruin_probability(const RuinInput& in);

/// Smallest capital u with psi(u) - limit <= gap (bracket plus TOMS 748).
double ruin_capital_for_gap(double lambda, double phi, double c, double gap);

struct PoissonCount {
  double phi;
};
struct NegativeBinomialCount {
  double r;
  double p;
};
struct GeometricCount {
  double p;
};
struct LogarithmicCount {
  double phi;
};

using CountingLaw = std::variant<PoissonCount, NegativeBinomialCount, GeometricCount, LogarithmicCount>;

class CompoundModel {
 public:
  /// Validates the counting law and severity; DomainError names the violation.
  CompoundModel(CountingLaw primary, double severity_lambda);

  const CountingLaw& primary() const { return primary_; }
  double severity_lambda() const { return lambda_; }

  /// P(N = n).
  double count_probability(int n) const;
  /// P(N > n).
  double count_tail(int n) const;

 private:
  CountingLaw primary_;
  double lambda_;
};

/// g(0) is a probability mass, g(x > 0) a density; the tag keeps them apart.
struct CompoundValue {
  enum class Kind { Atom, Density };
  Kind kind;
  double value;
};

CompoundValue compound_pdf(const CompoundModel& m, double x);

struct SeriesValue {
  double value;       // sum_{n=1}^{n_max} p_n f_{S_n}(x)
  double tail_mass;   // P(N > n_max), bounds the omitted weight
};

SeriesValue compound_pdf_series(const CompoundModel& m, double x, int n_max);

}  // namespace mixagg
