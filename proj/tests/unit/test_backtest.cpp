#include <cmath>

#include <doctest.h>

#include "dnmcast/backtest.hpp"
#include "dnmcast/carsales.hpp"
#include "dnmcast/series_csv.hpp"

using namespace dnmcast;

namespace {

std::shared_ptr<const CompiledModel> carsales_model() {
  return std::make_shared<const CompiledModel>(CompiledModel::compile(build_carsales()));
}

TimeSeries carsales_timeseries(int periods = 12) {
  TimeSeries series;
  series.variables = {"demand", "health", "price", "supply"};
  auto rows = carsales_series();
  for (int t = 0; t < periods; ++t) {
    series.times.push_back(t);
    std::vector<std::optional<std::string>> row;
    for (const auto& label : rows[static_cast<std::size_t>(t)]) row.push_back(label);
    series.cells.push_back(std::move(row));
  }
  return series;
}

}  // namespace

TEST_CASE("the twelve-period replay reproduces the worked example traces") {
  auto report = backtest(carsales_model(), carsales_timeseries());
  REQUIRE(report.rows.size() == 11);

  const std::vector<double> alpha{0.0, 0.0, 1.0, 0.5, 0.0, 0.0, 0.5, 1.0, 1.0, 0.0, 0.0};
  const std::vector<double> sbar{0.40, 0.40, 0.555975, 0.7279875, 0.90,
                                 0.40,  // derived from the lagged row (p6=L, s6=H)
                                 0.4779875, 0.555975, 0.555975, 0.10, 0.10};
  for (int t = 1; t <= 11; ++t) {
    const auto& row = report.rows[static_cast<std::size_t>(t - 1)];
    CHECK(row.time == t);
    REQUIRE(row.alpha_star.size() == 1);
    CHECK(row.alpha_star[0].second ==
          doctest::Approx(alpha[static_cast<std::size_t>(t - 1)]).epsilon(1e-12));
    // forecast columns are (demand, health, price, supply); supply is last.
    CHECK(row.forecast[3].second ==
          doctest::Approx(sbar[static_cast<std::size_t>(t - 1)]).epsilon(1e-9));
  }
}

TEST_CASE("truncating the series leaves earlier rows byte-identical") {
  auto model = carsales_model();
  auto full_csv = backtest(model, carsales_timeseries(12)).to_csv();
  for (int cut : {8, 5, 2}) {
    auto part_csv = backtest(model, carsales_timeseries(cut)).to_csv();
    CHECK(full_csv.substr(0, part_csv.size()) == part_csv);
  }
}

TEST_CASE("a series of length one yields an empty report") {
  auto report = backtest(carsales_model(), carsales_timeseries(1));
  CHECK(report.rows.empty());
  CHECK_FALSE(report.to_csv().empty());  // header still present
}

TEST_CASE("column mismatches are refused by name") {
  auto series = carsales_timeseries();
  series.variables[3] = "sales";
  CHECK_THROWS_WITH_AS(backtest(carsales_model(), series),
                       "series column 'sales' is not a model variable", DomainError);

  TimeSeries missing;
  missing.variables = {"demand", "health", "price"};
  missing.times = {0};
  missing.cells = {{std::string("H"), std::string("H"), std::string("H")}};
  CHECK_THROWS_WITH_AS(backtest(carsales_model(), missing),
                       "series is missing a column for 'supply'", DomainError);
}

TEST_CASE("designated states can be flipped per variable") {
  auto report = backtest(carsales_model(), carsales_timeseries(), 2, {{"supply", "L"}});
  // P(supply=L) complements the designated-H trace.
  CHECK(report.rows[4].forecast[3].second == doctest::Approx(0.10).epsilon(1e-9));
  CHECK_THROWS_AS(backtest(carsales_model(), carsales_timeseries(), 2, {{"supply", "X"}}),
                  DomainError);
}

TEST_CASE("missing observations keep the last weight") {
  auto series = carsales_timeseries();
  series.cells[5][0] = std::nullopt;  // drop demand at t=5
  auto report = backtest(carsales_model(), series);
  // At t=5 the window (4,5) is incomplete, so alpha stays at its t=4 value;
  // at t=6 the window (5,6) is still incomplete.  t=7 estimates again.
  CHECK(report.rows[4].alpha_star[0].second == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.rows[5].alpha_star[0].second == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("csv output shape") {
  auto csv = backtest(carsales_model(), carsales_timeseries(3)).to_csv();
  CHECK(csv.rfind("t,alpha_star:supply,forecast:demand=H,forecast:health=H,"
                  "forecast:price=H,forecast:supply=H,observed:demand,observed:health,"
                  "observed:price,observed:supply\n", 0) == 0);
  CHECK(csv.find("\n1,0.000000,") != std::string::npos);
}
