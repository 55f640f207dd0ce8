#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#ifndef GHARM_CLI_PATH
#error "GHARM_CLI_PATH must be defined"
#endif

namespace {

int run(const std::string& args) {
  const std::string cmd =
      std::string(GHARM_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

int run_to(const std::string& args, const std::string& path) {
  const std::string cmd = std::string(GHARM_CLI_PATH) + " " + args +
                          " --out " + path + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("diverge --ys 4,6,8") == 0);
  CHECK(run("diverge --u 0") == 2);               // invalid parameters
  CHECK(run("no_such_subcommand") == 2);          // parse error
  CHECK(run("diverge --format xml") == 2);        // unknown format
  CHECK(run("tree --q 1") == 2);                  // invalid branching
  CHECK(run("diverge --out /nonexistent_dir/x.json") == 1);  // I/O
  CHECK(run("mehler --tol 1e-300") == 3);         // unreachable tolerance
}

TEST_CASE("json output follows the schema and round-trips") {
  REQUIRE(run_to("tree equivalence --q 2 --kernel geometric:0.25",
                 "cli_tree.json") == 0);
  const auto j = nlohmann::json::parse(slurp("cli_tree.json"));
  REQUIRE(j.contains("experiment"));
  REQUIRE(j.contains("params"));
  REQUIRE(j.contains("rows"));
  REQUIRE(j.contains("meta"));
  CHECK(j["experiment"] == "tree");
  CHECK(j["params"]["q"] == "2");
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["consistent"].get<double>() == 1.0);
  CHECK(j["meta"].contains("tolerance"));
  CHECK(j["meta"].contains("version"));
  CHECK(j["meta"].contains("converged"));
}

TEST_CASE("csv output: header, separators, decimal points, LF endings") {
  REQUIRE(run_to("diverge --ys 4,6,8 --format csv", "cli_div.csv") == 0);
  const std::string text = slurp("cli_div.csv");
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "y,phi,phi_window,ln_y,comparator");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string field;
    int nfields = 0;
    while (std::getline(fields, field, ',')) {
      ++nfields;
      std::size_t pos = 0;
      const double v = std::stod(field, &pos);
      CHECK(pos == field.size());  // '.' decimal, no locale artifacts
      (void)v;
    }
    CHECK(nfields == 5);
  }
  CHECK(rows == 3);
}

TEST_CASE("byte-identical reruns at thread counts 1 and 8") {
  const std::string base = "diverge --ys 4,6,8,12";
  REQUIRE(run_to(base + " --threads 1", "cli_t1.json") == 0);
  REQUIRE(run_to(base + " --threads 8", "cli_t8.json") == 0);
  REQUIRE(run_to(base + " --threads 8", "cli_t8b.json") == 0);
  CHECK(slurp("cli_t1.json") == slurp("cli_t8.json"));
  CHECK(slurp("cli_t8.json") == slurp("cli_t8b.json"));

  REQUIRE(run_to("hardy --ys 4,8 --threads 1 --format csv", "cli_h1.csv") == 0);
  REQUIRE(run_to("hardy --ys 4,8 --threads 8 --format csv", "cli_h8.csv") == 0);
  CHECK(slurp("cli_h1.csv") == slurp("cli_h8.csv"));
}

TEST_CASE("GHARM_THREADS env override preserves bytes") {
  const std::string path1 = "cli_env1.json", path2 = "cli_env4.json";
  const std::string base = std::string(GHARM_CLI_PATH) +
                           " mehler --t 1 --grid 3 --out ";
  CHECK(WEXITSTATUS(std::system(
            ("GHARM_THREADS=1 " + base + path1 + " 2>/dev/null").c_str())) == 0);
  CHECK(WEXITSTATUS(std::system(
            ("GHARM_THREADS=4 " + base + path2 + " 2>/dev/null").c_str())) == 0);
  CHECK(slurp(path1) == slurp(path2));
}
