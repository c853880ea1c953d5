#ifndef DNMCAST_BACKTEST_HPP
#define DNMCAST_BACKTEST_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dnmcast/series_csv.hpp"
#include "dnmcast/session.hpp"

namespace dnmcast {

// One period of a backtest: the weights estimated at this time, the
// horizon-1 forecasts issued from it, and what was actually observed at
// this time.
struct BacktestRow {
  int time = 0;
  std::vector<std::pair<std::string, double>> alpha_star;   // per mixture node
  std::vector<std::pair<std::string, double>> forecast;     // P(designated) per variable
  std::vector<std::pair<std::string, std::string>> observed;  // labels, "" when missing
};

struct BacktestReport {
  std::vector<std::string> mixture_nodes;
  std::vector<std::string> variables;
  std::vector<std::pair<std::string, std::string>> designated;  // per variable
  std::vector<BacktestRow> rows;

  // Deterministic CSV: columns t, alpha_star:<node>..., forecast:<var>=<state>...,
  // observed:<var>...; probabilities with six decimals.
  std::string to_csv() const;
};

// Replays the series in time order.  For each period t >= 1: ingest the
// slice, re-estimate the weights from the trailing window, forecast one
// step ahead.  Rows never use data beyond their own time.  `designated`
// may pin the reported state per variable; the default is each variable's
// first state.
BacktestReport backtest(std::shared_ptr<const CompiledModel> model, const TimeSeries& series,
                        int window = 2,
                        const std::map<std::string, std::string>& designated = {});

}  // namespace dnmcast

#endif  // DNMCAST_BACKTEST_HPP
