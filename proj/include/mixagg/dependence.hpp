#pragma once

// Copula-level quantities for the exchangeable vector (X_1..X_n) with
// X_i | Theta ~ Exp(Theta) iid. Pairwise measures are scalars.

#include <span>

#include "mixagg/mixing.hpp"

namespace mixagg {

struct DependentVector {
  DependentVector(MixingDistribution mixing, int n);

  MixingDistribution mixing;
  int n;
};

/// P(X_1 > x_1, ..., X_n > x_n) = L(sum x_i).
double joint_survival(const DependentVector& v, std::span<const double> x);

/// Survival copula L(sum phi(u_i)) through the generator. u_i = 0 gives 0.
double survival_copula(const DependentVector& v, std::span<const double> u);

/// The copula in its closed per-family form (Clayton, gamma-claims, Gumbel
/// for both stable laws, inverse Gaussian). Unsupported for Lindley and B2.
double survival_copula_closed(const DependentVector& v, std::span<const double> u);

/// Kendall's tau from the generator integral, after t = exp(-x).
double kendall_tau(const DependentVector& v);

/// Closed form where one is known: Clayton 1/(1+2 alpha), Gumbel 1 - alpha
/// (Levy is alpha = 1/2) and the inverse Gaussian expression in a = mu/lambda.
double kendall_tau_closed(const DependentVector& v);

/// Pearson correlation (E W^2 - (E W)^2) / (2 E W^2 - (E W)^2), W = 1/Theta.
double pearson_rho(const DependentVector& v);

/// E prod X_i^{r_i} = prod r_i! * E Theta^{-sum r}.
double joint_moment(const DependentVector& v, std::span<const int> r);

}  // namespace mixagg
