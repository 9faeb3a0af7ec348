#pragma once

// Command-line front end. parse_config turns argv (plus an optional flat
// key = value file with [command] sections) into a validated JobConfig; run
// executes it and writes CSV or JSON.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mixagg::cli {

enum class Command {
  Pdf,
  Cdf,
  Survival,
  Var,
  Tvar,
  Moments,
  Tau,
  Rho,
  Simulate,
  Ruin,
  Compound,
  Asymptotic,
  Verify,
};

enum class Spacing { Linear, Log };
enum class Format { Csv, Json, Binary };

struct Grid {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

struct JobConfig {
  Command command = Command::Pdf;
  std::string model;                     // pareto, gamma, weibull_half, weibull, ig, lindley, sibuya
  std::map<std::string, double> params;  // alpha, beta, lambda, mu, gamma, phi, r, p, c
  std::vector<double> shapes;
  int n = 1;
  std::optional<Grid> grid;
  std::optional<double> x;
  std::vector<double> levels;
  std::vector<int> orders;
  std::string primary;  // compound counting law
  std::string mixing;   // asymptotic mixing law: gamma or ig
  int m = 1;
  std::string output;   // empty writes to stdout
  Format format = Format::Csv;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  int threads = 1;

  double param(const std::string& key) const { return params.at(key); }
};

struct ParseResult {
  std::optional<JobConfig> config;
  std::vector<std::string> errors;  // every violation, not just the first
  std::vector<std::string> notes;   // e.g. flag overriding a file value
  bool help = false;
  std::string help_text;
};

inline constexpr std::uint64_t kDefaultSeed = 20170901;

std::string command_name(Command c);

ParseResult parse_config(int argc, const char* const* argv);

/// Exit status: 0 ok, 2 invalid request, 3 numerical failure.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, const char* const* argv);

}  // namespace mixagg::cli
