#include "dnmcast/diagnostics.hpp"

#include <cmath>

namespace dnmcast {

ResidualSeries residuals(const BacktestReport& report, const std::string& variable,
                         const std::string& state) {
  int var_col = -1;
  for (std::size_t i = 0; i < report.variables.size(); ++i) {
    if (report.variables[i] == variable) var_col = static_cast<int>(i);
  }
  if (var_col < 0) throw DomainError("variable '" + variable + "' not in backtest report");

  bool state_matches_designated = false;
  for (const auto& [var, designated_state] : report.designated) {
    if (var == variable && designated_state == state) state_matches_designated = true;
  }
  if (!state_matches_designated) {
    throw DomainError("backtest report carries forecasts of '" + variable +
                      "' for a different designated state than '" + state + "'");
  }

  ResidualSeries out;
  out.variable = variable;
  out.state = state;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const BacktestRow& prev = report.rows[i - 1];
    const BacktestRow& cur = report.rows[i];
    if (cur.time != prev.time + 1) continue;  // forecast was not for this period
    const std::string& observed = cur.observed[static_cast<std::size_t>(var_col)].second;
    if (observed.empty()) continue;
    double forecast = prev.forecast[static_cast<std::size_t>(var_col)].second;
    out.times.push_back(cur.time);
    out.values.push_back((observed == state ? 1.0 : 0.0) - forecast);
  }
  return out;
}

AcfReport sample_acf(const std::vector<double>& series, int max_lag) {
  const int n = static_cast<int>(series.size());
  if (max_lag < 1) throw DomainError("max lag must be >= 1");
  if (n <= max_lag) {
    throw DomainError("series too short: n=" + std::to_string(n) + " with max lag " +
                      std::to_string(max_lag));
  }

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= n;

  double denom = 0.0;
  for (double v : series) denom += (v - mean) * (v - mean);
  if (!(denom > 0.0)) {
    throw UndefinedAcfError("autocorrelation undefined for a zero-variance series");
  }

  AcfReport report;
  report.n = n;
  report.band = 2.0 / std::sqrt(static_cast<double>(n));
  for (int k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (int t = 0; t + k < n; ++t) {
      num += (series[static_cast<std::size_t>(t)] - mean) *
             (series[static_cast<std::size_t>(t + k)] - mean);
    }
    double rho = num / denom;
    report.rho.push_back(rho);
    if (std::fabs(rho) > report.band) report.flagged_lags.push_back(k);
  }
  return report;
}

WhitenessReport whiteness_summary(const ResidualSeries& series, int max_lag) {
  const int n = series.size();
  if (n < 8) throw DomainError("whiteness check needs at least 8 residuals, got " +
                               std::to_string(n));

  WhitenessReport report;
  report.n = n;
  report.acf = sample_acf(series.values, max_lag);

  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : series.values) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / (n - 1));

  report.mean = mean;
  report.z = mean / (sd / std::sqrt(static_cast<double>(n)));
  report.adequate = std::fabs(report.z) < 2.0 && report.acf.flagged_lags.empty();
  return report;
}

}  // namespace dnmcast
