#include "mixagg/gamma_ext.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "detail/roots.hpp"
#include "mixagg/errors.hpp"
#include "mixagg/quadrature.hpp"
#include "mixagg/specfun.hpp"

namespace mixagg {

namespace {

using specfun::log_gamma;

double checked_total(const std::vector<double>& shapes, const char* who) {
  if (shapes.empty()) throw DomainError(std::string(who) + ": need at least one shape");
  for (double a : shapes) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw DomainError(std::string(who) + ": shapes must be positive and finite");
    }
  }
  return std::accumulate(shapes.begin(), shapes.end(), 0.0);
}

void check_x(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": x must be > 0");
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

// x^{a-1}/Gamma(a) * int theta^a e^{-x theta} f_Theta(theta) dtheta for
// Theta ~ B2(gamma, beta), in u = log theta. The log integrand
// (a+gamma) u - x e^u - (beta+gamma) log(1 + e^u) is concave, so the mode
// and a curvature width place the panels.
double sibuya_conditioning(double a, double beta, double gamma, double x) {
  const double A = a + gamma;
  const double B = beta + gamma;
  const double lx = std::log(x);
  // Everything in u so that x e^u stays finite for subnormal x.
  auto sigmoid = [](double u) { return u > 0.0 ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u)); };
  auto softplus = [](double u) { return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); };
  auto slope = [&](double u) { return std::exp(lx + u) + B * sigmoid(u) - A; };
  double lo = -1.0;
  double hi = 1.0;
  while (slope(lo) > 0.0) lo *= 2.0;
  while (slope(hi) < 0.0) hi *= 2.0;
  boost::uintmax_t iterations = 300;
  const auto [r0, r1] = boost::math::tools::toms748_solve(slope, lo, hi,
                                                          detail::RelativeTolerance{1e-14}, iterations);
  const double u_mode = 0.5 * (r0 + r1);
  auto log_g = [&](double u) { return A * u - std::exp(lx + u) - B * softplus(u); };
  const double peak = log_g(u_mode);
  const double sig = sigmoid(u_mode);
  const double curvature = std::exp(lx + u_mode) + B * sig * (1.0 - sig);
  const double w = 1.0 / std::sqrt(curvature);
  // Cut where the integrand has fallen by e^{-750}; concavity bounds the
  // left side by the slope A.
  constexpr double kDrop = 750.0;
  const double u_lo = u_mode - kDrop / A - 10.0 * w;
  double u_hi = u_mode + w;
  while (peak - log_g(u_hi) < kDrop) u_hi = u_mode + 2.0 * (u_hi - u_mode);
  auto f = [&](double u) { return std::exp(log_g(u) - peak); };
  const double pts[] = {u_lo, u_mode - w, u_mode, u_mode + w, u_hi};
  double integral = 0.0;
  for (int k = 0; k < 4; ++k) integral += quad::integrate(f, pts[k], pts[k + 1]);
  const double log_const = (a - 1.0) * std::log(x) - log_gamma(a) - log_beta(gamma, beta);
  return std::exp(log_const + peak) * integral;
}

double kummer_density(double a, double beta, double gamma, double x) {
  const double log_const = (a - 1.0) * std::log(x) - log_gamma(a) - log_beta(gamma, beta);
  return specfun::kummer_u_integral(a + gamma, a - beta + 1.0, x, log_const);
}

}  // namespace

GammaMixtureModel::GammaMixtureModel(std::vector<double> shapes, MixingDistribution mixing)
    : shapes_(std::move(shapes)),
      mixing_(std::move(mixing)),
      total_(checked_total(shapes_, "GammaMixtureModel")) {}

double gm_sum_pdf(const GammaMixtureModel& m, double x) {
  check_x(x, "gm_sum_pdf");
  const double a = m.total_shape();
  return std::exp((a - 1.0) * std::log(x) - log_gamma(a)) * tilted_moment(m.mixing(), a, x);
}

double gm_marginal_pdf(const GammaMixtureModel& m, int i, double x) {
  if (i < 0 || i >= m.n()) throw DimensionMismatch("gm_marginal_pdf: index out of range");
  return gm_sum_pdf(GammaMixtureModel({m.shapes()[i]}, m.mixing()), x);
}

SibuyaModel::SibuyaModel(std::vector<double> shapes, double beta, double gamma)
    : shapes_(std::move(shapes)),
      beta_(beta),
      gamma_(gamma),
      total_(checked_total(shapes_, "SibuyaModel")) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("SibuyaModel: beta must be > 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("SibuyaModel: gamma must be > 0");
}

MixingDistribution SibuyaModel::frailty() const {
  return MixingDistribution::beta_second_kind(gamma_, beta_);
}

double sibuya_marginal_pdf(const SibuyaModel& m, int i, double x) {
  if (i < 0 || i >= m.n()) throw DimensionMismatch("sibuya_marginal_pdf: index out of range");
  check_x(x, "sibuya_marginal_pdf");
  return kummer_density(m.shapes()[i], m.beta(), m.gamma(), x);
}

double sibuya_sum_pdf(const SibuyaModel& m, double x) {
  check_x(x, "sibuya_sum_pdf");
  return sibuya_conditioning(m.total_shape(), m.beta(), m.gamma(), x);
}

double sibuya_sum_pdf_kummer(const SibuyaModel& m, double x) {
  check_x(x, "sibuya_sum_pdf_kummer");
  return kummer_density(m.total_shape(), m.beta(), m.gamma(), x);
}

double sibuya_moments(const SibuyaModel& m, const std::vector<int>& r) {
  if (static_cast<int>(r.size()) != m.n()) {
    throw DimensionMismatch("sibuya_moments: need one order per component");
  }
  double log_value = 0.0;
  int total = 0;
  for (int i = 0; i < m.n(); ++i) {
    if (r[i] < 0) throw DomainError("sibuya_moments: orders must be >= 0");
    total += r[i];
    log_value += log_gamma(m.shapes()[i] + r[i]) - log_gamma(m.shapes()[i]);
  }
  if (!(m.gamma() > total)) {
    throw NonexistentMoment("sibuya_moments: need gamma > " + std::to_string(total));
  }
  log_value += log_gamma(m.beta() + total) - log_gamma(m.beta()) + log_gamma(m.gamma() - total) -
               log_gamma(m.gamma());
  return std::exp(log_value);
}

double sibuya_sum_moment(const SibuyaModel& m, double r) {
  if (!(r >= 0.0)) throw DomainError("sibuya_sum_moment: order must be >= 0");
  if (!(m.gamma() > r)) {
    throw NonexistentMoment("sibuya_sum_moment: need gamma > " + std::to_string(r));
  }
  const double a = m.total_shape();
  return std::exp(log_gamma(a + r) - log_gamma(a) + log_gamma(m.beta() + r) -
                  log_gamma(m.beta()) + log_gamma(m.gamma() - r) - log_gamma(m.gamma()));
}

}  // namespace mixagg
