#include "dnmcast/backtest.hpp"

#include <cstdio>
#include <sstream>

namespace dnmcast {

namespace {

std::string format_prob(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string BacktestReport::to_csv() const {
  std::ostringstream out;
  out << "t";
  for (const auto& node : mixture_nodes) out << ",alpha_star:" << node;
  for (const auto& [var, state] : designated) out << ",forecast:" << var << "=" << state;
  for (const auto& var : variables) out << ",observed:" << var;
  out << '\n';
  for (const auto& row : rows) {
    out << row.time;
    for (const auto& [node, alpha] : row.alpha_star) out << ',' << format_prob(alpha);
    for (const auto& [var, p] : row.forecast) out << ',' << format_prob(p);
    for (const auto& [var, label] : row.observed) out << ',' << label;
    out << '\n';
  }
  return out.str();
}

BacktestReport backtest(std::shared_ptr<const CompiledModel> model, const TimeSeries& series,
                        int window, const std::map<std::string, std::string>& designated) {
  const CompiledModel& m = *model;

  // Every model variable must have a column; unknown columns are refused.
  std::vector<int> column_of(static_cast<std::size_t>(m.variable_count()), -1);
  for (std::size_t c = 0; c < series.variables.size(); ++c) {
    auto var = m.find_variable(series.variables[c]);
    if (!var) throw DomainError("series column '" + series.variables[c] +
                                "' is not a model variable");
    column_of[static_cast<std::size_t>(*var)] = static_cast<int>(c);
  }
  for (int v = 0; v < m.variable_count(); ++v) {
    if (column_of[static_cast<std::size_t>(v)] < 0) {
      throw DomainError("series is missing a column for '" + m.variable(v).name + "'");
    }
  }

  BacktestReport report;
  for (int v : m.mixture_variables()) report.mixture_nodes.push_back(m.variable(v).name);
  for (int v = 0; v < m.variable_count(); ++v) {
    const Variable& var = m.variable(v);
    report.variables.push_back(var.name);
    auto it = designated.find(var.name);
    std::string state = it == designated.end() ? var.states.front() : it->second;
    if (var.state_index(state) < 0) {
      throw DomainError("designated state '" + state + "' unknown for '" + var.name + "'");
    }
    report.designated.push_back({var.name, state});
  }
  for (const auto& [name, state] : designated) {
    if (!m.find_variable(name)) {
      throw DomainError("designated state for unknown variable '" + name + "'");
    }
  }

  if (series.row_count() == 0) return report;

  std::map<int, int> row_of_time;
  for (int r = 0; r < series.row_count(); ++r) {
    row_of_time[series.times[static_cast<std::size_t>(r)]] = r;
  }

  Session session(model);
  const int last = series.times.back();
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
    if (t < 1) continue;

    session.update_weights(window);

    BacktestRow row;
    row.time = t;
    for (int v : m.mixture_variables()) {
      row.alpha_star.push_back({m.variable(v).name, session.alpha(m.variable(v).name)});
    }
    ForecastProfile profile = session.forecast(1);
    for (std::size_t i = 0; i < report.designated.size(); ++i) {
      const auto& [var_name, state] = report.designated[i];
      int v = *m.find_variable(var_name);
      int s = m.variable(v).state_index(state);
      row.forecast.push_back({var_name, profile.horizons[0][static_cast<std::size_t>(v)].second[s]});
    }
    for (int v = 0; v < m.variable_count(); ++v) {
      auto obs = session.history().observed(t, v);
      row.observed.push_back(
          {m.variable(v).name, obs ? m.variable(v).states[static_cast<std::size_t>(*obs)] : ""});
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace dnmcast
