#ifndef DNMCAST_SERIES_CSV_HPP
#define DNMCAST_SERIES_CSV_HPP

#include <optional>
#include <string>
#include <vector>

#include "dnmcast/types.hpp"

namespace dnmcast {

// A time series of partial observations.  Column per variable, row per
// time index; empty cells are missing observations.
struct TimeSeries {
  std::vector<std::string> variables;
  std::vector<int> times;  // strictly increasing
  std::vector<std::vector<std::optional<std::string>>> cells;  // [row][column]

  int row_count() const { return static_cast<int>(times.size()); }
};

// Raised on malformed series text (bad header, non-integer or
// non-increasing t, wrong cell count).
class SeriesParseError : public std::runtime_error {
 public:
  explicit SeriesParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Header "t,<var1>,<var2>,...", one row per time index.
TimeSeries parse_series_csv(const std::string& text);
std::string series_to_csv(const TimeSeries& series);

}  // namespace dnmcast

#endif  // DNMCAST_SERIES_CSV_HPP
