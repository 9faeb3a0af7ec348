#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixagg/cli.hpp"

using namespace mixagg::cli;

namespace {

ParseResult parse(std::vector<std::string> args) {
  args.insert(args.begin(), "mixagg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome execute(std::vector<std::string> args) {
  const auto parsed = parse(std::move(args));
  const std::string first = parsed.errors.empty() ? "" : parsed.errors.front();
  INFO(first);
  REQUIRE(parsed.config.has_value());
  std::ostringstream out, err;
  const int status = run(*parsed.config, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

}  // namespace

TEST_CASE("pdf grid reproduces the worked value") {
  const auto o = execute({"pdf", "--model", "pareto", "--alpha", "3", "--beta", "1", "--n", "2",
                          "--grid", "0.01:10:100:log"});
  CHECK(o.status == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 101);
  CHECK(rows[0] == "x,pdf");
  bool found = false;
  for (const auto& row : rows) found = found || row == "1,0.375";
  CHECK(found);
}

TEST_CASE("every violation is reported") {
  const auto p = parse({"pdf", "--model", "pareto", "--alpha", "-1", "--n", "0"});
  CHECK_FALSE(p.config.has_value());
  CHECK(p.errors.size() == 4);
  const auto unknown = parse({"frobnicate"});
  REQUIRE(unknown.errors.size() == 1);
  CHECK(unknown.errors[0].find("unknown command") != std::string::npos);
  CHECK_FALSE(parse({"pdf", "--model", "nosuch", "--n", "2", "--grid", "1:2:3:lin"}).config);
  CHECK_FALSE(parse({"pdf", "--model", "lindley", "--lambda", "1", "--n", "2", "--grid",
                     "2:1:3:lin"})
                  .config);
  CHECK_FALSE(parse({"var", "--model", "lindley", "--lambda", "1", "--n", "2", "--levels", "1.2"})
                  .config);
  CHECK_FALSE(parse({"simulate", "--model", "lindley", "--lambda", "1", "--n", "2", "--format",
                     "binary"})
                  .config);
  CHECK(parse({"--help"}).help);
}

TEST_CASE("flags override config-file values with a note") {
  const auto path = (std::filesystem::temp_directory_path() / "mixagg_cli_test.ini").string();
  {
    std::ofstream f(path);
    f << "# shared\nmodel = pareto\nbeta = 1\n[pdf]\nalpha = 2\nn = 2\ngrid = 1:2:2:lin\n"
         "[var]\nalpha = 9\n";
  }
  const auto p = parse({"pdf", "--config", path, "--alpha", "3"});
  REQUIRE(p.config.has_value());
  CHECK(p.config->param("alpha") == 3.0);
  REQUIRE(p.notes.size() == 1);
  CHECK(p.notes[0] == "--alpha=3 overrides config value 2");
  {
    std::ofstream f(path);
    f << "model = pareto\nbogus = 1\n";
  }
  CHECK_FALSE(parse({"pdf", "--config", path}).config.has_value());
  std::filesystem::remove(path);
}

TEST_CASE("seed from the environment") {
  ::setenv("MIXAGG_SEED", "123", 1);
  auto p = parse({"simulate", "--model", "lindley", "--lambda", "1", "--n", "2"});
  REQUIRE(p.config);
  CHECK(p.config->seed == 123);
  p = parse({"simulate", "--model", "lindley", "--lambda", "1", "--n", "2", "--seed", "9"});
  CHECK(p.config->seed == 9);
  ::unsetenv("MIXAGG_SEED");
  p = parse({"simulate", "--model", "lindley", "--lambda", "1", "--n", "2"});
  CHECK(p.config->seed == kDefaultSeed);
}

TEST_CASE("risk output in JSON") {
  const auto o = execute({"var", "--model", "pareto", "--alpha", "3", "--beta", "1", "--n", "2",
                          "--levels", "0.6875"});
  REQUIRE(o.status == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["command"] == "var");
  CHECK(j["model"]["name"] == "pareto");
  CHECK(j["model"]["n"] == 2);
  CHECK(j["results"][0]["var"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(j["results"][0]["tvar"].get<double>() == doctest::Approx(2.2).epsilon(1e-8));
  CHECK(j["meta"]["seed"] == kDefaultSeed);
}

TEST_CASE("nonexistent moments print as infinity") {
  const auto o = execute({"moments", "--model", "pareto", "--alpha", "3", "--beta", "1", "--n",
                          "2", "--orders", "1,3", "--format", "csv"});
  CHECK(o.status == 0);
  CHECK(lines(o.out) == std::vector<std::string>{"order,moment", "1,1", "3,inf"});
}

TEST_CASE("compound output separates the atom") {
  const auto o = execute({"compound", "--primary", "poisson", "--phi", "1", "--lambda", "1",
                          "--grid", "0:2:3:lin"});
  CHECK(o.status == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "x,kind,value");
  CHECK(rows[1].rfind("0,atom,0.3678794411714", 0) == 0);
  CHECK(rows[2].rfind("1,density,", 0) == 0);
}

TEST_CASE("ruin, dependence and asymptotic commands") {
  auto o = execute({"ruin", "--lambda", "1", "--phi", "1", "--c", "1", "--grid", "0:5:6:lin"});
  CHECK(o.status == 0);
  CHECK(lines(o.out).size() == 7);
  o = execute({"tau", "--model", "ig", "--lambda", "1", "--mu", "1", "--n", "2"});
  CHECK(o.status == 0);
  CHECK(o.out.find("0.2226572") != std::string::npos);
  o = execute({"asymptotic", "--mixing", "gamma", "--alpha", "2", "--lambda", "1", "--beta", "1",
               "--m", "1", "--grid", "1e3:1e5:3:log"});
  CHECK(o.status == 0);
  CHECK(lines(o.out).size() == 4);
}

TEST_CASE("numerical failures exit with status 3") {
  const auto o = execute({"rho", "--model", "pareto", "--alpha", "2", "--beta", "1", "--n", "2"});
  CHECK(o.status == 3);
  CHECK_FALSE(o.err.empty());
}

TEST_CASE("simulate writes a reproducible binary file") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "mixagg_cli_a.bin").string();
  const auto b = (dir / "mixagg_cli_b.bin").string();
  CHECK(execute({"simulate", "--model", "weibull", "--alpha", "0.5", "--n", "3", "--samples",
                 "1000", "--seed", "5", "--format", "binary", "--output", a})
            .status == 0);
  CHECK(execute({"simulate", "--model", "weibull", "--alpha", "0.5", "--n", "3", "--samples",
                 "1000", "--seed", "5", "--format", "binary", "--output", b, "--threads", "3"})
            .status == 0);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  const std::string da((std::istreambuf_iterator<char>(fa)), {});
  const std::string db((std::istreambuf_iterator<char>(fb)), {});
  CHECK(da.size() > 3000 * sizeof(double));
  CHECK(da == db);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
