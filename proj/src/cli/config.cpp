#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "mixagg/cli.hpp"

namespace mixagg::cli {

namespace {

struct KeySpec {
  const char* key;
  const char* help;
};

constexpr KeySpec kKeys[] = {
    {"model", "pareto | gamma | weibull_half | weibull | ig | lindley | sibuya"},
    {"n", "number of claims"},
    {"alpha", "shape parameter"},
    {"beta", "scale (pareto, asymptotic) or B2 first shape (sibuya)"},
    {"lambda", "rate, Lindley or inverse Gaussian shape parameter"},
    {"mu", "inverse Gaussian mean"},
    {"gamma", "B2 second shape (sibuya)"},
    {"shapes", "comma-separated gamma shapes (sibuya)"},
    {"grid", "x_min:x_max:points:lin|log"},
    {"x", "single abscissa (compound)"},
    {"levels", "comma-separated levels in (0,1)"},
    {"orders", "comma-separated moment orders"},
    {"primary", "poisson | negbin | geometric | logarithmic"},
    {"phi", "Poisson intensity or logarithmic parameter"},
    {"r", "negative binomial size"},
    {"p", "negative binomial or geometric probability"},
    {"c", "premium intensity (ruin)"},
    {"mixing", "gamma | ig (asymptotic)"},
    {"m", "index of the smallest Pareto shape (asymptotic)"},
    {"output", "output path (default stdout)"},
    {"format", "csv | json | binary"},
    {"seed", "random seed (default $MIXAGG_SEED)"},
    {"samples", "Monte Carlo sample count"},
    {"threads", "worker threads for sampling"},
};

const std::map<std::string, Command> kCommands = {
    {"pdf", Command::Pdf},           {"cdf", Command::Cdf},
    {"survival", Command::Survival}, {"var", Command::Var},
    {"tvar", Command::Tvar},         {"moments", Command::Moments},
    {"tau", Command::Tau},           {"rho", Command::Rho},
    {"simulate", Command::Simulate}, {"ruin", Command::Ruin},
    {"compound", Command::Compound}, {"asymptotic", Command::Asymptotic},
    {"verify", Command::Verify},
};

using Values = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

// Flat key = value lines; keys before any [section] apply to every command,
// keys under [command] only to that command and win over the global ones.
Values read_config_file(const std::string& path, const std::string& command,
                        std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("config: cannot open '" + path + "'");
    return {};
  }
  Values global;
  Values section;
  std::string current;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(number) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "unterminated section header");
        continue;
      }
      current = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + "expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = false;
    for (const auto& spec : kKeys) known = known || key == spec.key;
    if (!known) {
      errors.push_back(where + "unknown key '" + key + "'");
      continue;
    }
    if (current.empty()) {
      global[key] = value;
    } else if (current == command) {
      section[key] = value;
    }
  }
  for (const auto& [k, v] : section) global[k] = v;
  return global;
}

// Typed access to the merged values, accumulating errors instead of stopping.
class Reader {
 public:
  Reader(const Values& values, std::vector<std::string>& errors)
      : values_(values), errors_(errors) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::optional<double> number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const std::string& text = values_.at(key);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !std::isfinite(v)) {
      errors_.push_back(key + ": '" + text + "' is not a finite number");
      return std::nullopt;
    }
    return v;
  }

  std::optional<long long> integer(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const std::string& text = values_.at(key);
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0') {
      errors_.push_back(key + ": '" + text + "' is not an integer");
      return std::nullopt;
    }
    return v;
  }

  std::string text(const std::string& key) const { return has(key) ? values_.at(key) : ""; }

  // Required parameter with a positivity-style predicate.
  template <class Pred>
  void param(JobConfig& c, const std::string& key, Pred ok, const std::string& constraint,
             const std::string& context) {
    if (!has(key)) {
      errors_.push_back(context + " needs --" + key);
      return;
    }
    const auto v = number(key);
    if (!v) return;
    if (!ok(*v)) {
      errors_.push_back(key + ": " + constraint);
      return;
    }
    c.params[key] = *v;
  }

  void error(const std::string& message) { errors_.push_back(message); }

 private:
  const Values& values_;
  std::vector<std::string>& errors_;
};

bool positive(double v) { return v > 0.0; }
bool unit_open(double v) { return v > 0.0 && v < 1.0; }

void read_grid(Reader& r, JobConfig& c, const std::string& context) {
  if (!r.has("grid")) {
    r.error(context + " needs --grid x_min:x_max:points:lin|log");
    return;
  }
  const auto parts = split(r.text("grid"), ':');
  if (parts.size() != 4) {
    r.error("grid: expected x_min:x_max:points:lin|log, got '" + r.text("grid") + "'");
    return;
  }
  Grid g;
  char* end = nullptr;
  g.min = std::strtod(parts[0].c_str(), &end);
  bool ok = *end == '\0' && !parts[0].empty();
  g.max = std::strtod(parts[1].c_str(), &end);
  ok = ok && *end == '\0' && !parts[1].empty();
  g.points = static_cast<int>(std::strtol(parts[2].c_str(), &end, 10));
  ok = ok && *end == '\0' && !parts[2].empty();
  if (!ok) {
    r.error("grid: bounds and point count must be numbers");
    return;
  }
  if (parts[3] == "lin") {
    g.spacing = Spacing::Linear;
  } else if (parts[3] == "log") {
    g.spacing = Spacing::Log;
  } else {
    r.error("grid: spacing must be lin or log");
    return;
  }
  bool valid = true;
  if (!(g.min < g.max)) r.error("grid: x_min must be < x_max"), valid = false;
  if (g.points < 2) r.error("grid: points must be >= 2"), valid = false;
  if (g.spacing == Spacing::Log && !(g.min > 0.0)) {
    r.error("grid: log spacing needs x_min > 0"), valid = false;
  }
  if (!(g.min >= 0.0)) r.error("grid: x_min must be >= 0"), valid = false;
  if (valid) c.grid = g;
}

void read_model(Reader& r, JobConfig& c, const std::string& context) {
  if (!r.has("model")) {
    r.error(context + " needs --model");
    return;
  }
  c.model = r.text("model");
  const std::string ctx = context + " with model " + c.model;
  if (c.model == "pareto") {
    r.param(c, "alpha", positive, "shape must be positive", ctx);
    r.param(c, "beta", positive, "scale must be positive", ctx);
  } else if (c.model == "gamma") {
    r.param(c, "alpha", unit_open, "gamma-claims shape must lie in (0, 1)", ctx);
    r.param(c, "lambda", positive, "rate must be positive", ctx);
  } else if (c.model == "weibull_half") {
    r.param(c, "lambda", positive, "rate must be positive", ctx);
  } else if (c.model == "weibull") {
    r.param(c, "alpha", [](double v) { return v > 0.0 && v <= 1.0; },
            "Weibull shape must lie in (0, 1]", ctx);
  } else if (c.model == "ig") {
    r.param(c, "lambda", positive, "inverse Gaussian shape must be positive", ctx);
    r.param(c, "mu", positive, "inverse Gaussian mean must be positive", ctx);
  } else if (c.model == "lindley") {
    r.param(c, "lambda", positive, "Lindley parameter must be positive", ctx);
  } else if (c.model == "sibuya") {
    r.param(c, "beta", positive, "B2 shape beta must be positive", ctx);
    r.param(c, "gamma", positive, "B2 shape gamma must be positive", ctx);
    if (!r.has("shapes")) {
      r.error(ctx + " needs --shapes");
    } else {
      for (const auto& part : split(r.text("shapes"), ',')) {
        char* end = nullptr;
        const double a = std::strtod(part.c_str(), &end);
        if (part.empty() || *end != '\0' || !(a > 0.0) || !std::isfinite(a)) {
          r.error("shapes: '" + part + "': shape must be positive");
        } else {
          c.shapes.push_back(a);
        }
      }
    }
  } else {
    r.error("model: unknown model '" + c.model +
            "' (pareto, gamma, weibull_half, weibull, ig, lindley, sibuya)");
    return;
  }
  if (c.model == "sibuya") {
    if (r.has("n") && r.integer("n").value_or(-1) != static_cast<long long>(c.shapes.size())) {
      r.error("n: must equal the number of --shapes for sibuya");
    }
    c.n = static_cast<int>(c.shapes.size());
    const bool allowed = c.command == Command::Pdf || c.command == Command::Moments ||
                         c.command == Command::Simulate;
    if (!allowed) r.error("model sibuya supports only pdf, moments and simulate");
  } else if (auto n = r.integer("n")) {
    if (*n < 1 || *n > 64) {
      r.error("n: must lie in [1, 64]");
    } else {
      c.n = static_cast<int>(*n);
    }
  }
}

void read_levels(Reader& r, JobConfig& c, const std::string& context) {
  if (!r.has("levels")) {
    r.error(context + " needs --levels");
    return;
  }
  for (const auto& part : split(r.text("levels"), ',')) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || *end != '\0' || !(v > 0.0 && v < 1.0)) {
      r.error("levels: '" + part + "' must lie in (0, 1)");
    } else {
      c.levels.push_back(v);
    }
  }
}

void read_orders(Reader& r, JobConfig& c) {
  if (!r.has("orders")) {
    c.orders = {1, 2};
    return;
  }
  for (const auto& part : split(r.text("orders"), ',')) {
    char* end = nullptr;
    const long v = std::strtol(part.c_str(), &end, 10);
    if (part.empty() || *end != '\0' || v < 0 || v > 60) {
      r.error("orders: '" + part + "' must be an integer in [0, 60]");
    } else {
      c.orders.push_back(static_cast<int>(v));
    }
  }
}

void read_compound(Reader& r, JobConfig& c) {
  const std::string ctx = "compound";
  c.primary = r.text("primary");
  r.param(c, "lambda", positive, "Lindley severity parameter must be positive", ctx);
  if (c.primary == "poisson") {
    r.param(c, "phi", positive, "Poisson intensity must be positive", ctx);
  } else if (c.primary == "negbin") {
    r.param(c, "r", positive, "negative binomial size must be positive", ctx);
    r.param(c, "p", unit_open, "probability must lie in (0, 1)", ctx);
  } else if (c.primary == "geometric") {
    r.param(c, "p", unit_open, "probability must lie in (0, 1)", ctx);
  } else if (c.primary == "logarithmic") {
    r.param(c, "phi", unit_open, "logarithmic parameter must lie in (0, 1)", ctx);
  } else {
    r.error("primary: expected poisson, negbin, geometric or logarithmic");
  }
  if (r.has("x")) {
    if (auto x = r.number("x")) {
      if (*x < 0.0) {
        r.error("x: must be >= 0");
      } else {
        c.x = *x;
      }
    }
  } else {
    read_grid(r, c, ctx);
  }
}

void read_asymptotic(Reader& r, JobConfig& c) {
  const std::string ctx = "asymptotic";
  c.mixing = r.text("mixing");
  if (c.mixing == "gamma") {
    r.param(c, "alpha", positive, "shape must be positive", ctx);
    r.param(c, "lambda", positive, "rate must be positive", ctx);
  } else if (c.mixing == "ig") {
    r.param(c, "lambda", positive, "inverse Gaussian shape must be positive", ctx);
    r.param(c, "mu", positive, "inverse Gaussian mean must be positive", ctx);
  } else {
    r.error("mixing: asymptotic needs --mixing gamma or ig");
  }
  if (r.has("beta")) {
    r.param(c, "beta", positive, "precision parameter must be positive", ctx);
  } else {
    c.params["beta"] = 1.0;
  }
  if (auto m = r.integer("m")) {
    if (*m < 1) {
      r.error("m: must be >= 1");
    } else {
      c.m = static_cast<int>(*m);
    }
  }
  read_grid(r, c, ctx);
}

Format default_format(Command c) {
  switch (c) {
    case Command::Var:
    case Command::Tvar:
    case Command::Moments:
    case Command::Tau:
    case Command::Rho:
      return Format::Json;
    default:
      return Format::Csv;
  }
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [name, value] : kCommands) {
    if (value == c) return name;
  }
  return "?";
}

std::vector<double> Grid::values() const {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    v[i] = spacing == Spacing::Linear
               ? min + t * (max - min)
               : std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  }
  v.front() = min;
  v.back() = max;
  return v;
}

ParseResult parse_config(int argc, const char* const* argv) {
  ParseResult result;
  CLI::App app{"mixagg: aggregation of dependent risks under exponential mixtures"};
  std::string command;
  std::string config_path;
  app.add_option("command", command,
                 "pdf | cdf | survival | var | tvar | moments | tau | rho | simulate | ruin | "
                 "compound | asymptotic | verify");
  app.add_option("--config", config_path, "flat key = value file with [command] sections");
  Values flags;
  std::map<std::string, CLI::Option*> options;
  for (const auto& spec : kKeys) {
    options[spec.key] = app.add_option(std::string("--") + spec.key, flags[spec.key], spec.help)
                            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    result.help = true;
    result.help_text = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.errors.push_back(e.what());
    return result;
  }
  for (auto it = flags.begin(); it != flags.end();) {
    it = options[it->first]->count() ? std::next(it) : flags.erase(it);
  }

  JobConfig c;
  const auto found = kCommands.find(command);
  if (found == kCommands.end()) {
    result.errors.push_back(command.empty() ? "missing command"
                                            : "unknown command '" + command + "'");
    return result;
  }
  c.command = found->second;

  Values merged;
  if (!config_path.empty()) merged = read_config_file(config_path, command, result.errors);
  for (const auto& [key, value] : flags) {
    const auto prior = merged.find(key);
    if (prior != merged.end() && prior->second != value) {
      result.notes.push_back("--" + key + "=" + value + " overrides config value " +
                             prior->second);
    }
    merged[key] = value;
  }

  Reader r(merged, result.errors);
  switch (c.command) {
    case Command::Pdf:
    case Command::Cdf:
    case Command::Survival:
      read_model(r, c, command);
      read_grid(r, c, command);
      break;
    case Command::Var:
    case Command::Tvar:
      read_model(r, c, command);
      read_levels(r, c, command);
      break;
    case Command::Moments:
      read_model(r, c, command);
      read_orders(r, c);
      break;
    case Command::Tau:
    case Command::Rho:
    case Command::Simulate:
    case Command::Verify:
      read_model(r, c, command);
      break;
    case Command::Ruin:
      r.param(c, "lambda", positive, "Lindley parameter must be positive", command);
      r.param(c, "phi", positive, "Poisson intensity must be positive", command);
      r.param(c, "c", positive, "premium intensity must be positive", command);
      read_grid(r, c, command);
      break;
    case Command::Compound:
      read_compound(r, c);
      break;
    case Command::Asymptotic:
      read_asymptotic(r, c);
      break;
  }

  c.format = default_format(c.command);
  if (r.has("format")) {
    const std::string f = r.text("format");
    if (f == "csv") {
      c.format = Format::Csv;
    } else if (f == "json") {
      c.format = Format::Json;
    } else if (f == "binary" && c.command == Command::Simulate) {
      c.format = Format::Binary;
    } else {
      r.error("format: expected csv or json (binary only for simulate)");
    }
  }
  c.output = r.text("output");
  if (c.format == Format::Binary && c.output.empty()) r.error("format binary needs --output");

  c.seed = kDefaultSeed;
  if (const char* env = std::getenv("MIXAGG_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0') {
      r.error("MIXAGG_SEED: '" + std::string(env) + "' is not an unsigned integer");
    } else {
      c.seed = v;
    }
  }
  if (auto s = r.integer("seed")) {
    if (*s < 0) {
      r.error("seed: must be >= 0");
    } else {
      c.seed = static_cast<std::uint64_t>(*s);
    }
  }
  c.samples = c.command == Command::Verify ? 1000000 : 100000;
  if (auto s = r.integer("samples")) {
    if (*s < 1) {
      r.error("samples: must be >= 1");
    } else {
      c.samples = static_cast<std::uint64_t>(*s);
    }
  }
  if (auto t = r.integer("threads")) {
    if (*t < 1 || *t > 256) {
      r.error("threads: must lie in [1, 256]");
    } else {
      c.threads = static_cast<int>(*t);
    }
  }

  if (result.errors.empty()) result.config = c;
  return result;
}

}  // namespace mixagg::cli
