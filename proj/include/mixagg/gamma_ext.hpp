#pragma once

// Mixtures of classical gammas: X_i | Theta ~ Gamma(alpha_i, rate Theta)
// with a shared Theta, and the Sibuya product-ratio model X_i = G_{alpha_i} H,
// H ~ B2(beta, gamma).

#include <vector>

#include "mixagg/mixing.hpp"

namespace mixagg {

class GammaMixtureModel {
 public:
  GammaMixtureModel(std::vector<double> shapes, MixingDistribution mixing);

  const std::vector<double>& shapes() const { return shapes_; }
  const MixingDistribution& mixing() const { return mixing_; }
  int n() const { return static_cast<int>(shapes_.size()); }
  double total_shape() const { return total_; }

 private:
  std::vector<double> shapes_;
  MixingDistribution mixing_;
  double total_;
};

/// x^{a-1}/Gamma(a) E[Theta^a e^{-x Theta}], a = sum of shapes.
double gm_sum_pdf(const GammaMixtureModel& m, double x);
double gm_marginal_pdf(const GammaMixtureModel& m, int i, double x);

class SibuyaModel {
 public:
  SibuyaModel(std::vector<double> shapes, double beta, double gamma);

  const std::vector<double>& shapes() const { return shapes_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  int n() const { return static_cast<int>(shapes_.size()); }
  double total_shape() const { return total_; }

  /// Theta = 1/H = G_gamma/G_beta, the equivalent gamma-mixture frailty.
  MixingDistribution frailty() const;

 private:
  std::vector<double> shapes_;
  double beta_;
  double gamma_;
  double total_;
};

/// Normalized density of X_i, through the Kummer U integral.
double sibuya_marginal_pdf(const SibuyaModel& m, int i, double x);

/// Density of S_n = H G_{a}, a = sum of shapes, by the one-dimensional
/// conditioning integral over Theta.
double sibuya_sum_pdf(const SibuyaModel& m, double x);

/// Same density through the Kummer U integral; used as a cross-check.
double sibuya_sum_pdf_kummer(const SibuyaModel& m, double x);

/// E prod X_i^{r_i}; NonexistentMoment unless gamma > sum r_i.
double sibuya_moments(const SibuyaModel& m, const std::vector<int>& r);

/// E S_n^r; NonexistentMoment unless gamma > r.
double sibuya_sum_moment(const SibuyaModel& m, double r);

}  // namespace mixagg
