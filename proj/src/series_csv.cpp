#include "dnmcast/series_csv.hpp"

#include <sstream>

namespace dnmcast {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

TimeSeries parse_series_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw SeriesParseError("empty series file");
  auto header = split_line(strip_cr(line));
  if (header.empty() || header[0] != "t") {
    throw SeriesParseError("series header must start with 't'");
  }

  TimeSeries series;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i].empty()) throw SeriesParseError("empty column name in header");
    series.variables.push_back(header[i]);
  }

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw SeriesParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
    }
    int t;
    try {
      std::size_t pos = 0;
      t = std::stoi(cells[0], &pos);
      if (pos != cells[0].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw SeriesParseError("line " + std::to_string(line_no) + ": bad time index '" +
                             cells[0] + "'");
    }
    if (t < 0) {
      throw SeriesParseError("line " + std::to_string(line_no) + ": negative time index");
    }
    if (!series.times.empty() && t <= series.times.back()) {
      throw SeriesParseError("line " + std::to_string(line_no) +
                             ": time indices must be strictly increasing");
    }
    series.times.push_back(t);
    std::vector<std::optional<std::string>> row;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (cells[i].empty()) {
        row.push_back(std::nullopt);
      } else {
        row.push_back(cells[i]);
      }
    }
    series.cells.push_back(std::move(row));
  }
  return series;
}

std::string series_to_csv(const TimeSeries& series) {
  std::ostringstream out;
  out << "t";
  for (const auto& v : series.variables) out << ',' << v;
  out << '\n';
  for (int r = 0; r < series.row_count(); ++r) {
    out << series.times[static_cast<std::size_t>(r)];
    for (const auto& cell : series.cells[static_cast<std::size_t>(r)]) {
      out << ',' << (cell ? *cell : "");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dnmcast
