#include "mixagg/ruin_collective.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "detail/roots.hpp"
#include "mixagg/errors.hpp"
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

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void check_ruin(double lambda, double phi, double c) {
  require(positive(lambda), "ruin: Lindley lambda must be positive");
  require(positive(phi), "ruin: Poisson intensity phi must be positive");
  require(positive(c), "ruin: premium intensity c must be positive");
}

NegativeBinomialCount as_negative_binomial(const CountingLaw& law) {
  if (const auto* g = std::get_if<GeometricCount>(&law)) return {1.0, g->p};
  return std::get<NegativeBinomialCount>(law);
}

}  // namespace

double lindley_sum_pdf(double lambda, int n, double x) {
  require(positive(lambda), "lindley_sum_pdf: lambda must be positive");
  require(n >= 1, "lindley_sum_pdf: n must be >= 1");
  require(x >= 0.0, "lindley_sum_pdf: x must be >= 0");
  if (x == 0.0) return n == 1 ? (lambda + 2.0) / (lambda * (1.0 + lambda)) : 0.0;
  return std::exp(std::log(n * lambda * lambda / (1.0 + lambda)) + (n - 1.0) * std::log(x) +
                  std::log(x + lambda + n + 1.0) - (n + 2.0) * std::log(x + lambda));
}

double ruin_probability_limit(double lambda, double theta0) {
  require(positive(lambda), "ruin: Lindley lambda must be positive");
  require(positive(theta0), "ruin: theta0 must be positive");
  return 1.0 - (1.0 + lambda * (1.0 + theta0)) / (1.0 + lambda) * std::exp(-theta0 * lambda);
}

double ruin_excess(const RuinInput& in) {
  check_ruin(in.lambda, in.phi, in.c);
  require(in.u >= 0.0 && std::isfinite(in.u), "ruin: capital u must be finite and >= 0");
  const double theta0 = in.phi / in.c;
  const double shifted = in.u + in.lambda;
  // e^{u theta0} e^{-theta0 (u+lambda)} = e^{-theta0 lambda}; the incomplete
  // gamma term becomes e^{z} E_1(z) with z = theta0 (u + lambda).
  const double bracket =
      1.0 / shifted + specfun::scaled_exponential_integral(theta0 * shifted);
  return in.lambda * in.lambda * theta0 / (1.0 + in.lambda) * std::exp(-theta0 * in.lambda) *
         bracket;
}

double ruin_probability(const RuinInput& in) {
  const double excess = ruin_excess(in);
  return ruin_probability_limit(in.lambda, in.phi / in.c) + excess;
}

double ruin_capital_for_gap(double lambda, double phi, double c, double gap) {
  check_ruin(lambda, phi, c);
  require(positive(gap), "ruin: gap must be positive");
  auto shortfall = [&](double u) { return gap - ruin_excess({lambda, phi, c, u}); };
  if (shortfall(0.0) >= 0.0) return 0.0;
  return detail::solve_increasing(shortfall, 1.0, 1e-12);
}

CompoundModel::CompoundModel(CountingLaw primary, double severity_lambda)
    : primary_(primary), lambda_(severity_lambda) {
  require(positive(lambda_), "compound: severity lambda must be positive");
  std::visit(Overloaded{
                 [](const PoissonCount& p) {
                   require(positive(p.phi), "compound: Poisson phi must be positive");
                 },
                 [](const NegativeBinomialCount& nb) {
                   require(positive(nb.r), "compound: negative binomial r must be positive");
                   require(nb.p > 0.0 && nb.p < 1.0,
                           "compound: negative binomial p must lie in (0, 1)");
                 },
                 [](const GeometricCount& g) {
                   require(g.p > 0.0 && g.p < 1.0, "compound: geometric p must lie in (0, 1)");
                 },
                 [](const LogarithmicCount& l) {
                   require(l.phi > 0.0 && l.phi < 1.0,
                           "compound: logarithmic phi must lie in (0, 1)");
                 },
             },
             primary_);
}

double CompoundModel::count_probability(int n) const {
  if (n < 0) return 0.0;
  if (const auto* p = std::get_if<PoissonCount>(&primary_)) {
    return std::exp(-p->phi + n * std::log(p->phi) - log_gamma(n + 1.0));
  }
  if (const auto* l = std::get_if<LogarithmicCount>(&primary_)) {
    if (n == 0) return 0.0;
    return -std::exp(n * std::log(l->phi) - std::log(static_cast<double>(n))) /
           std::log1p(-l->phi);
  }
  const NegativeBinomialCount nb = as_negative_binomial(primary_);
  return std::exp(log_gamma(n + nb.r) - log_gamma(nb.r) - log_gamma(n + 1.0) +
                  nb.r * std::log(nb.p) + n * std::log1p(-nb.p));
}

double CompoundModel::count_tail(int n) const {
  if (n < 0) return 1.0;
  if (const auto* p = std::get_if<PoissonCount>(&primary_)) {
    return boost::math::gamma_p(n + 1.0, p->phi);
  }
  if (std::holds_alternative<LogarithmicCount>(primary_)) {
    // Geometric-rate series; stop once terms no longer move the sum.
    double sum = 0.0;
    for (int k = n + 1;; ++k) {
      const double term = count_probability(k);
      sum += term;
      if (term <= 1e-18 * sum || k > n + 100000) break;
    }
    return sum;
  }
  const NegativeBinomialCount nb = as_negative_binomial(primary_);
  // P(N <= n) = I_p(r, n + 1).
  return boost::math::ibetac(nb.r, n + 1.0, nb.p);
}

CompoundValue compound_pdf(const CompoundModel& m, double x) {
  require(x >= 0.0 && std::isfinite(x), "compound_pdf: x must be finite and >= 0");
  if (x == 0.0) return {CompoundValue::Kind::Atom, m.count_probability(0)};
  const double l = m.severity_lambda();
  const double density = std::visit(
      Overloaded{
          [&](const PoissonCount& p) {
            const double phi = p.phi;
            const double numerator = l * (l + 2.0) + x * (2.0 * (l + 1.0) + phi + x);
            return numerator / ((l + 1.0) * std::pow(l + x, 4)) * phi * l * l *
                   std::exp(-l * phi / (l + x));
          },
          [&](const LogarithmicCount& c) {
            const double phi = c.phi;
            const double numerator =
                l * l * phi * (x * phi * (l + x + 1.0) - (l + x) * (l + x + 2.0));
            const double inner = (l + x) * (l + x * (1.0 - phi));
            return numerator / ((l + 1.0) * inner * inner * std::log1p(-phi));
          },
          [&](const auto&) {
            const NegativeBinomialCount nb = as_negative_binomial(m.primary());
            const double r = nb.r;
            const double p = nb.p;
            const double q = 1.0 - p;
            const double numerator = l * (l + 2.0) + x * (p * (x + l - r + 1.0) + l + r + 1.0);
            return numerator / (l + 1.0) *
                   std::exp((r - 2.0) * std::log(x + l) - (2.0 + r) * std::log(l + p * x) +
                            r * std::log(p)) *
                   l * l * q * r;
          },
      },
      m.primary());
  return {CompoundValue::Kind::Density, density};
}

SeriesValue compound_pdf_series(const CompoundModel& m, double x, int n_max) {
  require(n_max >= 1, "compound_pdf_series: n_max must be >= 1");
  require(x > 0.0 && std::isfinite(x), "compound_pdf_series: x must be finite and > 0");
  double sum = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double pn = m.count_probability(n);
    if (pn == 0.0) continue;
    sum += pn * lindley_sum_pdf(m.severity_lambda(), n, x);
  }
  return {sum, m.count_tail(n_max)};
}

}  // namespace mixagg
