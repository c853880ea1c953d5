// Exercises the command surface end to end: exit codes, output contracts,
// and the bundled fixtures.  The binary path comes from the DNMCAST_CLI
// environment variable (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "../support/cli_runner.hpp"

using dnmcast::testsupport::run_cli;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("DNMCAST_CLI");
  REQUIRE_MESSAGE(env != nullptr, "DNMCAST_CLI must point at the binary");
  return env;
}

struct Workspace {
  fs::path dir;
  std::string model;
  std::string data;

  Workspace() {
    dir = fs::temp_directory_path() / "dnmcast_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto res = run_cli(cli_path(), "example carsales --dir \"" + dir.string() + "\"");
    REQUIRE(res.exit_code == 0);
    model = (dir / "carsales.json").string();
    data = (dir / "carsales.csv").string();
  }

  std::string write(const std::string& name, const std::string& text) const {
    fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p.string();
  }
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("validate: bundled model passes, cycles and bad json fail") {
  Workspace ws;
  CHECK(run_cli(cli_path(), "validate \"" + ws.model + "\"").exit_code == 0);

  auto cyclic = ws.write("cyclic.json", R"({
    "variables": [{"name": "a", "states": ["H", "L"]},
                   {"name": "b", "states": ["H", "L"]}],
    "contemporaneous_arcs": [["a", "b"], ["b", "a"]],
    "cpds": {
      "a": {"parents": ["b"], "rows": {"H": [0.5, 0.5], "L": [0.5, 0.5]}},
      "b": {"parents": ["a"], "rows": {"H": [0.5, 0.5], "L": [0.5, 0.5]}}
    }
  })");
  auto res = run_cli(cli_path(), "validate \"" + cyclic + "\"");
  CHECK(res.exit_code == 1);
  CHECK(res.out.find("cycle") != std::string::npos);

  auto broken = ws.write("broken.json", "{ not json");
  CHECK(run_cli(cli_path(), "validate \"" + broken + "\"").exit_code == 2);

  CHECK(run_cli(cli_path(), "validate \"" + ws.dir.string() + "/absent.json\"").exit_code == 2);
}

TEST_CASE("backtest: expected weight column and column mismatch handling") {
  Workspace ws;
  auto res = run_cli(cli_path(),
                     "backtest --model \"" + ws.model + "\" --data \"" + ws.data + "\"");
  REQUIRE(res.exit_code == 0);
  auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 12);  // header + t=1..11
  CHECK(rows[0][1] == "alpha_star:supply");

  const std::vector<std::string> expected{"0.000000", "0.000000", "1.000000", "0.500000",
                                          "0.000000", "0.000000", "0.500000", "1.000000",
                                          "1.000000", "0.000000", "0.000000"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(rows[i + 1][1] == expected[i]);
  }

  // Missing supply column: refused by name.
  std::string truncated = "t,demand,health,price\n0,H,H,H\n1,H,H,H\n";
  auto missing = ws.write("missing.csv", truncated);
  auto bad = run_cli(cli_path(),
                     "backtest --model \"" + ws.model + "\" --data \"" + missing + "\"");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("forecast: full shape, unit row sums, worked-example t=5 value") {
  Workspace ws;

  // Data through t=5 only.
  std::ostringstream partial;
  {
    std::ifstream in(ws.data);
    std::string line;
    int kept = 0;
    while (std::getline(in, line) && kept < 7) {  // header + t=0..5
      partial << line << "\n";
      ++kept;
    }
  }
  auto through5 = ws.write("through5.csv", partial.str());

  auto res = run_cli(cli_path(), "forecast --model \"" + ws.model + "\" --data \"" +
                                     through5 + "\" --horizon 3");
  REQUIRE(res.exit_code == 0);
  auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 1 + 3 * 4 * 2);  // header + horizons * variables * states
  CHECK(rows[0] == std::vector<std::string>{"horizon", "variable", "state", "probability"});

  std::map<std::string, double> by_key;
  std::map<std::string, double> sums;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    by_key[rows[i][0] + "," + rows[i][1] + "," + rows[i][2]] = std::stod(rows[i][3]);
    sums[rows[i][0] + "," + rows[i][1]] += std::stod(rows[i][3]);
  }
  CHECK(std::fabs(by_key.at("1,supply,H") - 0.90) < 1e-6);
  for (const auto& [key, sum] : sums) {
    CAPTURE(key);
    CHECK(std::fabs(sum - 1.0) < 2e-6);
  }

  // Horizon zero is a usage error.
  auto zero = run_cli(cli_path(), "forecast --model \"" + ws.model + "\" --data \"" +
                                      through5 + "\" --horizon 0");
  CHECK(zero.exit_code == 2);
}

TEST_CASE("diagnose: report fields and the constant-residual failure") {
  Workspace ws;
  auto sim = run_cli(cli_path(),
                     "simulate --model \"" + ws.model + "\" --periods 120 --seed 11");
  REQUIRE(sim.exit_code == 0);
  auto simdata = ws.write("sim.csv", sim.out);

  auto res = run_cli(cli_path(), "diagnose --model \"" + ws.model + "\" --data \"" + simdata +
                                     "\" --var supply --state H --maxlag 6");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("mean,") != std::string::npos);
  CHECK(res.out.find("z,") != std::string::npos);
  CHECK(res.out.find("rho_6,") != std::string::npos);
  CHECK(res.out.find("verdict,") != std::string::npos);

  // A deterministic-supply model yields point-mass forecasts and hence
  // constant residuals once the weight locks onto the lagged table.
  std::ostringstream constant;
  constant << "t,demand,health,price,supply\n";
  for (int t = 0; t < 40; ++t) {
    constant << t << ",H,H,H,H\n";
  }
  auto constant_csv = ws.write("constant.csv", constant.str());
  auto degenerate = ws.write("degenerate.json", R"({
    "variables": [{"name": "demand", "states": ["H", "L"]},
                   {"name": "health", "states": ["H", "L"]},
                   {"name": "price", "states": ["H", "L"]},
                   {"name": "supply", "states": ["H", "L"]}],
    "contemporaneous_arcs": [["health", "price"], ["price", "demand"],
                              ["demand", "supply"], ["health", "supply"]],
    "lagged_arcs": [{"from": "price", "lag": 1, "to": "supply"},
                     {"from": "supply", "lag": 1, "to": "supply"}],
    "cpds": {
      "health": {"parents": [], "rows": {"": [0.85, 0.15]}},
      "price": {"parents": ["health"], "rows": {"H": [0.35, 0.65], "L": [0.8, 0.2]}},
      "demand": {"parents": ["price"], "rows": {"H": [0.25, 0.75], "L": [0.65, 0.35]}},
      "supply": {"decomposition": "additive", "alpha_init": 0.0,
        "q_parents": ["demand", "health"],
        "q_table": {"H,H": [1.0, 0.0], "H,L": [1.0, 0.0], "L,H": [1.0, 0.0], "L,L": [1.0, 0.0]},
        "r_parents": [["price", 1], ["supply", 1]],
        "r_table": {"H,H": [1.0, 0.0], "H,L": [1.0, 0.0], "L,H": [1.0, 0.0], "L,L": [1.0, 0.0]}}
    },
    "initial_slices": {"supply": "observed"}
  })");
  auto flat = run_cli(cli_path(), "diagnose --model \"" + degenerate + "\" --data \"" +
                                      constant_csv + "\" --var supply --state H --maxlag 5");
  CHECK(flat.exit_code == 1);
}

TEST_CASE("simulate: deterministic, re-ingestible, near the health prior") {
  Workspace ws;
  auto a = run_cli(cli_path(), "simulate --model \"" + ws.model + "\" --periods 1000 --seed 5");
  auto b = run_cli(cli_path(), "simulate --model \"" + ws.model + "\" --periods 1000 --seed 5");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 1001);
  int health_high = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][2] == "H") ++health_high;
  }
  CHECK(std::fabs(health_high / 1000.0 - 0.85) < 0.04);

  auto simdata = ws.write("sim1000.csv", a.out);
  auto bt = run_cli(cli_path(),
                    "backtest --model \"" + ws.model + "\" --data \"" + simdata + "\"");
  CHECK(bt.exit_code == 0);
  CHECK(parse_csv(bt.out).size() == 1000);  // header + t=1..999

  // Initial supply can be pinned instead of drawn.
  auto pinned = run_cli(cli_path(), "simulate --model \"" + ws.model +
                                        "\" --periods 5 --seed 5 --init supply=L");
  REQUIRE(pinned.exit_code == 0);
  CHECK(parse_csv(pinned.out)[1][4] == "L");
}

TEST_CASE("example: emitted fixtures carry the expected tables") {
  Workspace ws;
  std::ifstream model_in(ws.model);
  std::ostringstream model_text;
  model_text << model_in.rdbuf();
  CHECK(model_text.str().find("\"L,H\": [\n          0.6,\n          0.4\n        ]") !=
        std::string::npos);

  std::ifstream data_in(ws.data);
  std::ostringstream data_text;
  data_text << data_in.rdbuf();
  CHECK(data_text.str().find("3,L,H,H,H\n") != std::string::npos);

  CHECK(run_cli(cli_path(), "example nonesuch").exit_code == 2);
}
