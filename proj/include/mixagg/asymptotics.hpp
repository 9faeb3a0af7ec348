#pragma once

// Tail approximations for sums of classical Pareto claims mixed over Theta:
// f_{S_n}(x) ~ -d/dx L[log(x / beta^m)].

#include "mixagg/mixing.hpp"

namespace mixagg {

struct ParetoTailSpec {
  double beta;  // precision parameter
  int m;        // index of the smallest shape
  MixingDistribution mixing;

  /// Gamma or inverse Gaussian mixing only; DomainError / Unsupported otherwise.
  ParetoTailSpec(double beta, int m, MixingDistribution mixing);
};

/// -L'(log(x / beta^m)) / x, x > beta^m.
double tail_pdf_generic(const ParetoTailSpec& spec, double x);

/// alpha lambda^alpha / (x [lambda + log x - m log beta]^{alpha+1}).
double tail_pdf_gamma(double alpha, double lambda, double beta, int m, double x);

/// (1/x) sqrt(lambda/phi) exp(lambda/mu - sqrt(lambda phi)),
/// phi = lambda/mu^2 + 2 log(x / beta^m).
double tail_pdf_ig(double lambda, double mu, double beta, int m, double x);

/// Exact density of X_1 + ... + X_n where, given Theta, the X_i are iid
/// classical Pareto on [1, inf) with survival x^{-Theta} (beta = 1). Uses
/// log X_i | Theta ~ Exp(Theta), so the joint law comes from L's derivatives.
/// n = 1 or 2.
double mixed_pareto_sum_pdf(const MixingDistribution& mixing, int n, double x);

}  // namespace mixagg
