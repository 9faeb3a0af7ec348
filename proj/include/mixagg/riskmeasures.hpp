#pragma once

// VaR, TVaR and upper tail moments of S_n. VaR uses F(VaR) = level.

#include <utility>
#include <vector>

#include "mixagg/aggregate.hpp"

namespace mixagg {

/// Levels at or above this are refused: the survival target underflows.
inline constexpr double kMaxLevel = 1.0 - 1e-12;

/// The x with survival(x) = 1 - level, by geometric bracketing plus TOMS 748.
double value_at_risk(const AggregateModel& a, double level);

enum class TailMethod {
  Auto,        // mixture decomposition when a representation exists, else quadrature
  Mixture,
  Quadrature,
};

/// E(S_n^r | S_n > threshold).
double tail_moment(const AggregateModel& a, int r, double threshold,
                   TailMethod method = TailMethod::Auto);

/// E(X^r | X > threshold) for a finite mixture, from component incomplete moments.
double tail_moment(const MixtureRepresentation& rep, int r, double threshold);

/// tail_moment(a, 1, value_at_risk(a, level)).
double tvar(const AggregateModel& a, double level, TailMethod method = TailMethod::Auto);

struct RiskReport {
  double level;
  double var;
  double tvar;
  std::vector<std::pair<int, double>> tail_moments;  // (order, value) at var
};

RiskReport risk_report(const AggregateModel& a, double level, const std::vector<int>& orders);

}  // namespace mixagg
