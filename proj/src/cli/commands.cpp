#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <variant>

#include <fmt/format.h>
#include <json.hpp>

#include "mixagg/aggregate.hpp"
#include "mixagg/asymptotics.hpp"
#include "mixagg/cli.hpp"
#include "mixagg/dependence.hpp"
#include "mixagg/errors.hpp"
#include "mixagg/gamma_ext.hpp"
#include "mixagg/mc_oracle.hpp"
#include "mixagg/quadrature.hpp"
#include "mixagg/riskmeasures.hpp"
#include "mixagg/ruin_collective.hpp"

namespace mixagg::cli {

namespace {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, double> tolerances;
};

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << t.columns[j];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "");
      if (const auto* d = std::get_if<double>(&row[j])) {
        out << number(*d);
      } else {
        out << std::get<std::string>(row[j]);
      }
    }
    out << '\n';
  }
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return number(v);  // JSON has no infinities
}

nlohmann::json model_json(const JobConfig& c) {
  nlohmann::json model;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  switch (c.command) {
    case Command::Ruin:
      model["name"] = "lindley_ruin";
      break;
    case Command::Compound:
      model["name"] = "compound_" + c.primary;
      break;
    case Command::Asymptotic:
      model["name"] = "pareto_mixture_tail_" + c.mixing;
      model["m"] = c.m;
      break;
    default:
      model["name"] = c.model;
      model["n"] = c.n;
      if (!c.shapes.empty()) model["shapes"] = c.shapes;
  }
  model["params"] = params;
  return model;
}

void write_json(const JobConfig& c, const Table& t, std::ostream& out) {
  nlohmann::json doc;
  doc["model"] = model_json(c);
  doc["command"] = command_name(c.command);
  doc["results"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json entry = nlohmann::json::object();
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (const auto* d = std::get_if<double>(&row[j])) {
        entry[t.columns[j]] = json_number(*d);
      } else {
        entry[t.columns[j]] = std::get<std::string>(row[j]);
      }
    }
    doc["results"].push_back(entry);
  }
  nlohmann::json tolerances = nlohmann::json::object();
  for (const auto& [k, v] : t.tolerances) tolerances[k] = v;
  doc["meta"] = {{"seed", c.seed}, {"tolerances", tolerances}};
  out << doc.dump(2) << '\n';
}

AggregateModel make_model(const JobConfig& c) {
  const std::string& m = c.model;
  if (m == "pareto") return AggregateModel::pareto(c.param("alpha"), c.param("beta"), c.n);
  if (m == "gamma") return AggregateModel::gamma_claims(c.param("alpha"), c.param("lambda"), c.n);
  if (m == "weibull_half") return AggregateModel::weibull_half(c.param("lambda"), c.n);
  if (m == "weibull") return AggregateModel::weibull(c.param("alpha"), c.n);
  if (m == "ig") return AggregateModel::inverse_gaussian(c.param("lambda"), c.param("mu"), c.n);
  if (m == "lindley") return AggregateModel::lindley(c.param("lambda"), c.n);
  throw Unsupported("model " + m + " has no aggregate form for this command");
}

SibuyaModel make_sibuya(const JobConfig& c) {
  return SibuyaModel(c.shapes, c.param("beta"), c.param("gamma"));
}

bool has_closed(const AggregateModel& a) { return !a.mixing().is<BetaSecondKindMixing>(); }

// Closed displayed form where one exists; Lindley uses its own sum density.
double closed_pdf(const AggregateModel& a, double x) {
  if (const auto* l = std::get_if<LindleyMixing>(&a.mixing().kind())) {
    return lindley_sum_pdf(l->lambda, a.n(), x);
  }
  return pdf_closed(a, x);
}

double model_pdf(const AggregateModel& a, double x) {
  if (x == 0.0) return pdf_at_origin(a);
  return has_closed(a) ? closed_pdf(a, x) : pdf_generic(a, x);
}

bool has_mixture(const AggregateModel& a) {
  const auto& m = a.mixing();
  return m.is<GammaMixing>() || m.is<GleserGammaMixing>() || m.is<LevyMixing>() ||
         m.is<PositiveStableMixing>();
}

Table grid_table(const JobConfig& c) {
  Table t;
  const std::string name = command_name(c.command);
  t.columns = {"x", name};
  const auto xs = c.grid->values();
  if (c.model == "sibuya") {
    const SibuyaModel s = make_sibuya(c);
    for (double x : xs) t.rows.push_back({x, sibuya_sum_pdf(s, x)});
    return t;
  }
  const AggregateModel a = make_model(c);
  for (double x : xs) {
    double v = 0.0;
    switch (c.command) {
      case Command::Pdf:
        v = model_pdf(a, x);
        break;
      case Command::Cdf:
        v = cdf(a, x);
        break;
      default:
        v = survival(a, x);
    }
    t.rows.push_back({x, v});
  }
  return t;
}

// Infinite when the conditional mean does not exist.
double tvar_or_inf(const AggregateModel& a, double level) {
  try {
    return tvar(a, level);
  } catch (const NonexistentMoment&) {
    return std::numeric_limits<double>::infinity();
  }
}

Table risk_table(const JobConfig& c) {
  const AggregateModel a = make_model(c);
  Table t;
  if (c.command == Command::Var) {
    t.columns = {"level", "var", "tvar"};
    for (double level : c.levels) {
      t.rows.push_back({level, value_at_risk(a, level), tvar_or_inf(a, level)});
    }
  } else {
    t.columns = {"level", "tvar"};
    for (double level : c.levels) t.rows.push_back({level, tvar_or_inf(a, level)});
  }
  t.tolerances["var_relative"] = 1e-13;
  return t;
}

Table moments_table(const JobConfig& c) {
  Table t;
  t.columns = {"order", "moment"};
  for (int r : c.orders) {
    double v = 0.0;
    try {
      v = c.model == "sibuya" ? sibuya_sum_moment(make_sibuya(c), r) : moment(make_model(c), r);
    } catch (const NonexistentMoment&) {
      v = std::numeric_limits<double>::infinity();
    }
    t.rows.push_back({static_cast<double>(r), v});
  }
  return t;
}

Table dependence_table(const JobConfig& c) {
  const DependentVector pair(make_model(c).mixing(), 2);
  Table t;
  t.columns = {"quantity", "value"};
  if (c.command == Command::Rho) {
    t.rows.push_back({std::string("pearson_rho"), pearson_rho(pair)});
    return t;
  }
  t.rows.push_back({std::string("kendall_tau"), kendall_tau(pair)});
  try {
    t.rows.push_back({std::string("kendall_tau_closed"), kendall_tau_closed(pair)});
  } catch (const Unsupported&) {
  }
  t.tolerances["tau_quadrature"] = quad::kDefaultTolerance;
  return t;
}

SimulationPlan make_plan(const JobConfig& c) {
  SimulationPlan plan = c.model == "sibuya"
                            ? simulation_plan(make_sibuya(c), c.samples, c.seed)
                            : simulation_plan(make_model(c), c.samples, c.seed);
  plan.threads = c.threads;
  return plan;
}

Table simulate_table(const JobConfig& c, const Eigen::MatrixXd& s) {
  Table t;
  for (Eigen::Index j = 0; j < s.cols(); ++j) t.columns.push_back(fmt::format("x{}", j + 1));
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    std::vector<Cell> row;
    for (Eigen::Index j = 0; j < s.cols(); ++j) row.emplace_back(s(i, j));
    t.rows.push_back(std::move(row));
  }
  (void)c;
  return t;
}

Table ruin_table(const JobConfig& c) {
  Table t;
  t.columns = {"u", "psi", "limit"};
  const double limit = ruin_probability_limit(c.param("lambda"), c.param("phi") / c.param("c"));
  for (double u : c.grid->values()) {
    t.rows.push_back({u, ruin_probability({c.param("lambda"), c.param("phi"), c.param("c"), u}),
                      limit});
  }
  return t;
}

CompoundModel make_compound(const JobConfig& c) {
  const double lambda = c.param("lambda");
  if (c.primary == "poisson") return CompoundModel(PoissonCount{c.param("phi")}, lambda);
  if (c.primary == "negbin") {
    return CompoundModel(NegativeBinomialCount{c.param("r"), c.param("p")}, lambda);
  }
  if (c.primary == "geometric") return CompoundModel(GeometricCount{c.param("p")}, lambda);
  return CompoundModel(LogarithmicCount{c.param("phi")}, lambda);
}

Table compound_table(const JobConfig& c) {
  const CompoundModel m = make_compound(c);
  Table t;
  t.columns = {"x", "kind", "value"};
  const std::vector<double> xs = c.x ? std::vector<double>{*c.x} : c.grid->values();
  for (double x : xs) {
    const CompoundValue v = compound_pdf(m, x);
    t.rows.push_back(
        {x, std::string(v.kind == CompoundValue::Kind::Atom ? "atom" : "density"), v.value});
  }
  return t;
}

Table asymptotic_table(const JobConfig& c) {
  const double beta = c.param("beta");
  const MixingDistribution mixing =
      c.mixing == "gamma" ? MixingDistribution::gamma(c.param("alpha"), c.param("lambda"))
                          : MixingDistribution::inverse_gaussian(c.param("lambda"), c.param("mu"));
  const ParetoTailSpec spec(beta, c.m, mixing);
  Table t;
  t.columns = {"x", "tail_generic", "tail_closed"};
  for (double x : c.grid->values()) {
    const double closed = c.mixing == "gamma"
                              ? tail_pdf_gamma(c.param("alpha"), c.param("lambda"), beta, c.m, x)
                              : tail_pdf_ig(c.param("lambda"), c.param("mu"), beta, c.m, x);
    t.rows.push_back({x, tail_pdf_generic(spec, x), closed});
  }
  return t;
}

// ---- verify ---------------------------------------------------------------

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool skipped = false;
};

double relative(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::vector<double> log_points(double lo, double hi, int count) {
  return Grid{lo, hi, count, Spacing::Log}.values();
}

std::vector<Check> verify_checks(const JobConfig& c) {
  const AggregateModel a = make_model(c);
  const auto xs = log_points(0.05, 50.0, 30);
  std::vector<Check> checks;

  double err = 0.0;
  for (double x : xs) err = std::max(err, relative(closed_pdf(a, x), pdf_generic(a, x)));
  checks.push_back({"closed_vs_generic", err, 1e-9});

  if (!a.mixing().is<PositiveStableMixing>()) {
    err = 0.0;
    for (double x : xs) {
      err = std::max(err, relative(pdf_generic(a, x), quadrature_mixture_pdf(a.mixing(), a.n(), x)));
    }
    checks.push_back({"quadrature_oracle", err, 1e-8});
  }

  // F(eps) + int_eps^X f + S(X) = 1, X far in the tail; the middle piece in
  // log x, where densities unbounded at 0 are smooth.
  constexpr double kEps = 1e-8;
  const double far = value_at_risk(a, 0.999);
  auto f_log = [&](double w) {
    const double x = std::exp(w);
    return x * pdf_generic(a, x);
  };
  double middle = 0.0;
  for (double w = std::log(kEps); w < std::log(far); w += 2.0) {
    middle += quad::integrate(f_log, w, std::min(w + 2.0, std::log(far)));
  }
  checks.push_back({"normalization", std::abs(cdf(a, kEps) + middle + survival(a, far) - 1.0), 1e-8});

  checks.push_back({"survival_at_zero", std::abs(survival(a, 0.0) - 1.0), 0.0});

  err = 0.0;
  for (double x : xs) {
    const double h = 1e-4 * std::min(x, 1.0);
    const double fd = (survival(a, x - h) - survival(a, x + h)) / (2.0 * h);
    err = std::max(err, relative(fd, pdf_generic(a, x)));
  }
  checks.push_back({"survival_derivative", err, 1e-6});

  if (has_mixture(a)) {
    const MixtureRepresentation rep = mixture_representation(a);
    double total = 0.0;
    for (const auto& comp : rep.components) total += comp.weight;
    checks.push_back({"mixture_weights", std::abs(total - 1.0), 1e-12});
    err = 0.0;
    for (double x : xs) err = std::max(err, relative(mixture_pdf(rep, x), closed_pdf(a, x)));
    checks.push_back({"mixture_pdf", err, 1e-10});
  }

  const DependentVector pair(a.mixing(), 2);
  try {
    checks.push_back({"tau_closed", std::abs(kendall_tau(pair) - kendall_tau_closed(pair)), 1e-8});
  } catch (const Unsupported&) {
  }

  const Eigen::MatrixXd samples = sample_vector(make_plan(c));
  checks.push_back({"ks_monte_carlo", empirical_ks(samples, [&](double x) { return cdf(a, x); }),
                    0.005});

  const Eigen::VectorXd sums = samples.rowwise().sum();
  Check mean_check{"mean_monte_carlo_se", 0.0, 4.0, true};
  try {
    moment(a, 2);  // the standard error needs a finite variance
    const double n = static_cast<double>(sums.size());
    const double sample_mean = sums.mean();
    const double sd = std::sqrt((sums.array() - sample_mean).square().sum() / (n - 1.0));
    mean_check.value = std::abs(sample_mean - mean(a)) / (sd / std::sqrt(n));
    mean_check.skipped = false;
  } catch (const NonexistentMoment&) {
  }
  checks.push_back(mean_check);
  return checks;
}

Table verify_table(const JobConfig& c, bool& all_passed) {
  Table t;
  t.columns = {"check", "max_error", "tolerance", "status"};
  all_passed = true;
  for (const Check& check : verify_checks(c)) {
    const bool pass = check.skipped || check.value <= check.tolerance;
    all_passed = all_passed && pass;
    t.rows.push_back({check.name, check.value, check.tolerance,
                      std::string(check.skipped ? "skip" : pass ? "pass" : "FAIL")});
    t.tolerances[check.name] = check.tolerance;
  }
  return t;
}

void emit(const JobConfig& c, const Table& t, std::ostream& out) {
  if (c.format == Format::Json) {
    write_json(c, t, out);
  } else {
    write_csv(t, out);
  }
}

}  // namespace

int run(const JobConfig& c, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    if (!c.output.empty() && c.format != Format::Binary) {
      file.open(c.output);
      if (!file) throw DomainError("cannot open " + c.output + " for writing");
    }
    std::ostream& sink = c.output.empty() ? out : file;
    int status = 0;
    switch (c.command) {
      case Command::Pdf:
      case Command::Cdf:
      case Command::Survival:
        emit(c, grid_table(c), sink);
        break;
      case Command::Var:
      case Command::Tvar:
        emit(c, risk_table(c), sink);
        break;
      case Command::Moments:
        emit(c, moments_table(c), sink);
        break;
      case Command::Tau:
      case Command::Rho:
        emit(c, dependence_table(c), sink);
        break;
      case Command::Simulate: {
        const Eigen::MatrixXd s = sample_vector(make_plan(c));
        if (c.format == Format::Binary) {
          write_samples_binary(c.output, s, c.seed);
        } else {
          emit(c, simulate_table(c, s), sink);
        }
        break;
      }
      case Command::Ruin:
        emit(c, ruin_table(c), sink);
        break;
      case Command::Compound:
        emit(c, compound_table(c), sink);
        break;
      case Command::Asymptotic:
        emit(c, asymptotic_table(c), sink);
        break;
      case Command::Verify: {
        bool passed = false;
        emit(c, verify_table(c, passed), sink);
        if (!passed) {
          err << "verify: at least one check failed\n";
          status = 3;
        }
        break;
      }
    }
    return status;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::logic_error& e) {
    // DomainError, DimensionMismatch and Unsupported all land here.
    err << "invalid request: " << e.what() << '\n';
    return 2;
  }
}

int main(int argc, const char* const* argv) {
  const ParseResult parsed = parse_config(argc, argv);
  if (parsed.help) {
    std::cout << parsed.help_text;
    return 0;
  }
  for (const auto& note : parsed.notes) std::cerr << "note: " << note << '\n';
  if (!parsed.config) {
    for (const auto& e : parsed.errors) std::cerr << "error: " << e << '\n';
    return 2;
  }
  return run(*parsed.config, std::cout, std::cerr);
}

}  // namespace mixagg::cli
