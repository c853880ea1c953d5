#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnmcast/backtest.hpp"
#include "dnmcast/carsales.hpp"
#include "dnmcast/diagnostics.hpp"
#include "dnmcast/model_json.hpp"
#include "dnmcast/series_csv.hpp"
#include "dnmcast/session.hpp"
#include "dnmcast/simulate.hpp"
#include "dnmcast/temporal.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dnmcast::SeriesParseError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::map<std::string, std::string> parse_pairs(const std::string& text,
                                               const std::string& flag) {
  std::map<std::string, std::string> out;
  if (text.empty()) return out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw CLI::ValidationError(flag, "expected comma-separated var=state pairs");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::shared_ptr<const dnmcast::CompiledModel> load_model(const std::string& path) {
  dnmcast::DnmSpec spec = dnmcast::spec_from_json_text(read_file(path));
  return std::make_shared<const dnmcast::CompiledModel>(
      dnmcast::CompiledModel::compile(std::move(spec)));
}

int run_validate(const std::string& model_path) {
  dnmcast::DnmSpec spec = dnmcast::spec_from_json_text(read_file(model_path));
  dnmcast::ValidationReport report = dnmcast::CompiledModel::validate(spec);
  if (report.ok()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (const auto& v : report.violations) {
    std::cout << v.where << ": " << v.what << "\n";
  }
  return kExitDomain;
}

int run_backtest(const std::string& model_path, const std::string& data_path, int window,
                 const std::string& state_map) {
  auto model = load_model(model_path);
  dnmcast::TimeSeries series = dnmcast::parse_series_csv(read_file(data_path));
  auto designated = parse_pairs(state_map, "--state-map");
  dnmcast::BacktestReport report = dnmcast::backtest(model, series, window, designated);
  std::cout << report.to_csv();
  return kExitOk;
}

int run_forecast(const std::string& model_path, const std::string& data_path, int horizon,
                 int window) {
  auto model = load_model(model_path);
  dnmcast::TimeSeries series = dnmcast::parse_series_csv(read_file(data_path));
  for (const auto& col : series.variables) {
    if (!model->find_variable(col)) {
      throw dnmcast::DomainError("series column '" + col + "' is not a model variable");
    }
  }

  // Replay: ingest each period and update the weights as the backtest
  // protocol does, then project from the end of the data.
  dnmcast::Session session(model);
  const int last = series.times.empty() ? -1 : series.times.back();
  std::map<int, int> row_of_time;
  for (int r = 0; r < series.row_count(); ++r) {
    row_of_time[series.times[static_cast<std::size_t>(r)]] = r;
  }
  for (int t = 0; t <= last; ++t) {
    std::vector<std::pair<std::string, std::string>> assignments;
    auto rit = row_of_time.find(t);
    if (rit != row_of_time.end()) {
      const auto& cells = series.cells[static_cast<std::size_t>(rit->second)];
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c]) assignments.push_back({series.variables[c], *cells[c]});
      }
    }
    session.observe(t, assignments);
    if (t >= 1) session.update_weights(window);
  }

  dnmcast::ForecastProfile profile = session.forecast(horizon);
  std::cout << "horizon,variable,state,probability\n";
  for (int h = 1; h <= horizon; ++h) {
    for (const auto& [name, dist] : profile.horizons[static_cast<std::size_t>(h - 1)]) {
      int v = *model->find_variable(name);
      for (int s = 0; s < dist.size(); ++s) {
        std::cout << h << ',' << name << ','
                  << model->variable(v).states[static_cast<std::size_t>(s)] << ','
                  << format6(dist[s]) << "\n";
      }
    }
  }
  return kExitOk;
}

int run_diagnose(const std::string& model_path, const std::string& data_path,
                 const std::string& variable, const std::string& state, int max_lag,
                 int window) {
  auto model = load_model(model_path);
  dnmcast::TimeSeries series = dnmcast::parse_series_csv(read_file(data_path));
  dnmcast::BacktestReport report =
      dnmcast::backtest(model, series, window, {{variable, state}});
  dnmcast::ResidualSeries res = dnmcast::residuals(report, variable, state);
  dnmcast::WhitenessReport white = dnmcast::whiteness_summary(res, max_lag);

  std::cout << "variable," << variable << "\n";
  std::cout << "state," << state << "\n";
  std::cout << "n," << white.n << "\n";
  std::cout << "mean," << format6(white.mean) << "\n";
  std::cout << "z," << format6(white.z) << "\n";
  for (std::size_t k = 0; k < white.acf.rho.size(); ++k) {
    std::cout << "rho_" << (k + 1) << ',' << format6(white.acf.rho[k]) << "\n";
  }
  std::cout << "band," << format6(white.acf.band) << "\n";
  std::cout << "flagged_lags,";
  for (std::size_t i = 0; i < white.acf.flagged_lags.size(); ++i) {
    if (i) std::cout << ' ';
    std::cout << white.acf.flagged_lags[i];
  }
  std::cout << "\n";
  std::cout << "verdict," << (white.adequate ? "adequate" : "inadequate") << "\n";
  return kExitOk;
}

int run_simulate(const std::string& model_path, int periods, std::uint64_t seed,
                 const std::string& init) {
  auto model = load_model(model_path);
  auto initial = parse_pairs(init, "--init");
  dnmcast::TimeSeries series = dnmcast::simulate_series(*model, periods, seed, initial);
  std::cout << dnmcast::series_to_csv(series);
  return kExitOk;
}

int run_example(const std::string& name, const std::string& dir) {
  if (name != "carsales") {
    std::cerr << "unknown example '" << name << "'; available: carsales\n";
    return kExitUsage;
  }
  dnmcast::DnmSpec spec = dnmcast::build_carsales();
  const std::string model_path = dir + "/carsales.json";
  const std::string data_path = dir + "/carsales.csv";

  std::ofstream model_out(model_path, std::ios::binary);
  if (!model_out) {
    std::cerr << "cannot write '" << model_path << "'\n";
    return kExitDomain;
  }
  model_out << dnmcast::spec_to_json_text(spec);

  dnmcast::TimeSeries series;
  for (const auto& v : spec.slice.variables) series.variables.push_back(v.name);
  auto rows = dnmcast::carsales_series();
  for (std::size_t t = 0; t < rows.size(); ++t) {
    series.times.push_back(static_cast<int>(t));
    std::vector<std::optional<std::string>> row;
    for (const auto& label : rows[t]) row.push_back(label);
    series.cells.push_back(std::move(row));
  }
  std::ofstream data_out(data_path, std::ios::binary);
  if (!data_out) {
    std::cerr << "cannot write '" << data_path << "'\n";
    return kExitDomain;
  }
  data_out << dnmcast::series_to_csv(series);

  std::cout << model_path << "\n" << data_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forecasting with discrete dynamic network models"};
  app.require_subcommand(1);

  std::string model_path, data_path, state_map, init_pairs, variable, state;
  std::string example_name, example_dir = ".";
  int window = 2, horizon = 1, max_lag = 10, periods = 1;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check a model file");
  validate->add_option("model", model_path, "model JSON file")->required();

  auto* bt = app.add_subcommand("backtest", "One-step-ahead replay over a series");
  bt->add_option("--model", model_path)->required();
  bt->add_option("--data", data_path)->required();
  bt->add_option("--window", window, "estimation window")->check(CLI::PositiveNumber);
  bt->add_option("--state-map", state_map, "var=state,... designated states");

  auto* fc = app.add_subcommand("forecast", "Project past the end of a series");
  fc->add_option("--model", model_path)->required();
  fc->add_option("--data", data_path)->required();
  fc->add_option("--horizon", horizon, "steps ahead")->required()->check(CLI::PositiveNumber);
  fc->add_option("--window", window, "estimation window")->check(CLI::PositiveNumber);

  auto* dg = app.add_subcommand("diagnose", "Residual whiteness checks");
  dg->add_option("--model", model_path)->required();
  dg->add_option("--data", data_path)->required();
  dg->add_option("--var", variable, "variable to diagnose")->required();
  dg->add_option("--state", state, "designated state")->required();
  dg->add_option("--maxlag", max_lag, "autocorrelation lags")->check(CLI::PositiveNumber);
  dg->add_option("--window", window, "estimation window")->check(CLI::PositiveNumber);

  auto* sim = app.add_subcommand("simulate", "Sample a series from the model");
  sim->add_option("--model", model_path)->required();
  sim->add_option("--periods", periods)->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed)->required();
  sim->add_option("--init", init_pairs, "var=state,... for must-observe initial slices");

  auto* ex = app.add_subcommand("example", "Write bundled example fixtures");
  ex->add_option("name", example_name, "example name (carsales)")->required();
  ex->add_option("--dir", example_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(model_path);
    if (app.got_subcommand(bt)) return run_backtest(model_path, data_path, window, state_map);
    if (app.got_subcommand(fc)) return run_forecast(model_path, data_path, horizon, window);
    if (app.got_subcommand(dg)) {
      return run_diagnose(model_path, data_path, variable, state, max_lag, window);
    }
    if (app.got_subcommand(sim)) return run_simulate(model_path, periods, seed, init_pairs);
    if (app.got_subcommand(ex)) return run_example(example_name, example_dir);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dnmcast::ModelFormatError& e) {
    std::cerr << "model format error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dnmcast::SeriesParseError& e) {
    std::cerr << "series error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dnmcast::ValidationError& e) {
    for (const auto& v : e.report().violations) {
      std::cerr << v.where << ": " << v.what << "\n";
    }
    return kExitDomain;
  } catch (const dnmcast::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
