#include "dnmcast/history.hpp"

#include <string>

namespace dnmcast {

void ObservationHistory::record(int time, int variable, int state) {
  if (time < 0) throw DomainError("observation time must be nonnegative");
  auto& slice = slices_[time];
  auto it = slice.find(variable);
  if (it != slice.end()) {
    if (it->second != state) {
      throw ObservationConflictError("conflicting re-observation at t=" +
                                     std::to_string(time) + " for variable #" +
                                     std::to_string(variable));
    }
    return;
  }
  slice.emplace(variable, state);
  if (time > max_time_) max_time_ = time;
}

std::optional<int> ObservationHistory::observed(int time, int variable) const {
  auto it = slices_.find(time);
  if (it == slices_.end()) return std::nullopt;
  auto jt = it->second.find(variable);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

const std::map<int, int>& ObservationHistory::empty_slice() {
  static const std::map<int, int> kEmpty;
  return kEmpty;
}

const std::map<int, int>& ObservationHistory::slice(int time) const {
  auto it = slices_.find(time);
  return it == slices_.end() ? empty_slice() : it->second;
}

}  // namespace dnmcast
