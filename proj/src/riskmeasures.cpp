#include "mixagg/riskmeasures.hpp"

#include <cmath>
#include <string>

#include "detail/roots.hpp"
#include "mixagg/errors.hpp"
#include "mixagg/quadrature.hpp"

namespace mixagg {

namespace {

// Smallest tail mass we still divide by.
constexpr double kTailFloor = 1e-280;

bool has_closed_pdf(const AggregateModel& a) {
  const auto& m = a.mixing();
  return m.is<GammaMixing>() || m.is<GleserGammaMixing>() || m.is<LevyMixing>() ||
         m.is<PositiveStableMixing>() || m.is<InverseGaussianMixing>();
}

double density(const AggregateModel& a, double x) {
  return has_closed_pdf(a) ? pdf_closed(a, x) : pdf_generic(a, x);
}

bool has_mixture(const AggregateModel& a) {
  const auto& m = a.mixing();
  return m.is<GammaMixing>() || m.is<GleserGammaMixing>() || m.is<LevyMixing>() ||
         m.is<PositiveStableMixing>();
}

void check_threshold(double threshold) {
  if (!(threshold >= 0.0) || std::isinf(threshold)) {
    throw DomainError("tail threshold must be finite and >= 0");
  }
}

double divide_by_tail(double upper_moment, double tail, double threshold) {
  if (!(tail > kTailFloor)) {
    throw TailUnderflow("tail mass beyond " + std::to_string(threshold) +
                        " underflows double precision");
  }
  return upper_moment / tail;
}

double quadrature_tail_moment(const AggregateModel& a, int r, double threshold) {
  moment(a, r);  // throws NonexistentMoment when E S^r is infinite
  const double tail = survival(a, threshold);
  const double scale = std::max(mean(a), 1.0);
  const double t = threshold;
  auto integrand = [&](double x) { return std::pow(x, r) * density(a, x); };
  double upper = 0.0;
  if (t == 0.0) {
    upper = quad::integrate_singular(integrand, 0.0, scale);
    upper += quad::integrate_pieces(integrand, {scale, 10.0 * scale, 100.0 * scale, quad::kInfinity});
  } else {
    upper = quad::integrate_pieces(
        integrand, {t, t + scale, t + 10.0 * (t + scale), t + 100.0 * (t + scale), quad::kInfinity});
  }
  return divide_by_tail(upper, tail, threshold);
}

}  // namespace

double value_at_risk(const AggregateModel& a, double level) {
  if (!(level > 0.0) || !(level < 1.0)) throw DomainError("VaR level must lie in (0, 1)");
  if (level >= kMaxLevel) {
    throw TailUnderflow("VaR level " + std::to_string(level) +
                        " too close to 1: survival cannot be resolved in double precision");
  }
  const double target = 1.0 - level;
  double guess = 1.0;
  try {
    guess = std::max(mean(a), 1e-3);
  } catch (const NumericalError&) {
  }
  return detail::solve_increasing([&](double x) { return target - survival(a, x); }, guess,
                                  1e-13);
}

double tail_moment(const MixtureRepresentation& rep, int r, double threshold) {
  if (r < 0) throw DomainError("tail moment order must be >= 0");
  check_threshold(threshold);
  if (threshold == 0.0) return moment_from_mixture(rep, r);
  return divide_by_tail(mixture_upper_moment(rep, r, threshold), mixture_survival(rep, threshold),
                        threshold);
}

double tail_moment(const AggregateModel& a, int r, double threshold, TailMethod method) {
  if (r < 0) throw DomainError("tail moment order must be >= 0");
  check_threshold(threshold);
  if (method == TailMethod::Auto) {
    method = has_mixture(a) ? TailMethod::Mixture : TailMethod::Quadrature;
  }
  if (method == TailMethod::Mixture) return tail_moment(mixture_representation(a), r, threshold);
  if (threshold == 0.0) return moment(a, r);
  return quadrature_tail_moment(a, r, threshold);
}

double tvar(const AggregateModel& a, double level, TailMethod method) {
  return tail_moment(a, 1, value_at_risk(a, level), method);
}

RiskReport risk_report(const AggregateModel& a, double level, const std::vector<int>& orders) {
  RiskReport report{level, value_at_risk(a, level), 0.0, {}};
  report.tvar = tail_moment(a, 1, report.var);
  for (int r : orders) report.tail_moments.emplace_back(r, tail_moment(a, r, report.var));
  return report;
}

}  // namespace mixagg
