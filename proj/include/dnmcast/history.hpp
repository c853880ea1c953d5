#ifndef DNMCAST_HISTORY_HPP
#define DNMCAST_HISTORY_HPP

#include <map>
#include <optional>

#include "dnmcast/types.hpp"

namespace dnmcast {

// Time-indexed partial assignments: for each nonnegative time index, the
// template variables observed at that time (state indices).  Observations
// are immutable once recorded.
class ObservationHistory {
 public:
  // Throws ObservationConflictError when (time, variable) was already
  // recorded with a different state; re-recording the same state is a
  // no-op.
  void record(int time, int variable, int state);

  std::optional<int> observed(int time, int variable) const;

  // Largest recorded time index, or -1 when empty.
  int max_time() const { return max_time_; }

  const std::map<int, int>& slice(int time) const;

 private:
  std::map<int, std::map<int, int>> slices_;
  int max_time_ = -1;

  static const std::map<int, int>& empty_slice();
};

}  // namespace dnmcast

#endif  // DNMCAST_HISTORY_HPP
