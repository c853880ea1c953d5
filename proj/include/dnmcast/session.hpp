#ifndef DNMCAST_SESSION_HPP
#define DNMCAST_SESSION_HPP

#include <memory>
#include <string>
#include <vector>

#include "dnmcast/estimation.hpp"
#include "dnmcast/history.hpp"
#include "dnmcast/temporal.hpp"

namespace dnmcast {

// Posterior marginals for every template variable over horizons 1..l.
struct ForecastProfile {
  // horizons[h-1] holds (variable name, posterior) pairs in template order.
  std::vector<std::vector<std::pair<std::string, Distribution>>> horizons;

  const Distribution& at(int horizon, const std::string& variable) const;
};

struct AlphaTraceEntry {
  int time = 0;
  std::string node;
  double alpha = 0.0;
};

// A forecasting session: a compiled model plus the observation history,
// the current likelihood weights, and their trace.  Single-owner; distinct
// sessions over the same model may run concurrently.
class Session {
 public:
  explicit Session(std::shared_ptr<const CompiledModel> model);
  explicit Session(DnmSpec spec);

  const CompiledModel& model() const { return *model_; }
  const std::shared_ptr<const CompiledModel>& model_ptr() const { return model_; }
  int current_time() const { return time_; }
  const ObservationHistory& history() const { return history_; }

  double alpha(const std::string& node) const;
  const std::vector<AlphaTraceEntry>& alpha_trace() const { return trace_; }
  const AlphaVector& alphas() const { return alphas_; }

  // Records observations for time t.  t may extend the session by one
  // slice or fill gaps in any slice already reached.
  void observe(int t, const std::vector<std::pair<std::string, std::string>>& assignments);

  struct UpdateOutcome {
    std::string node;
    bool updated = false;
    double alpha = 0.0;
    std::string note;  // why the update was skipped, empty when updated
  };

  // Re-estimates the weight of every mixture node from the most recent
  // `window` periods.  A node whose window has missing observations keeps
  // its weight (the skip is reported, not thrown); tabular nodes are not
  // touched.
  std::vector<UpdateOutcome> update_weights(int window = 2);

  // Posterior marginals for slices t+1..t+l given the full history, with
  // the current weights.  Uses the lagged-boundary window when every
  // boundary source is observed, otherwise falls back to the full unroll.
  ForecastProfile forecast(int horizons) const;

  // Same marginals by brute unrolling of slices 0..t+l; the reference path
  // the windowed forecast is checked against.
  ForecastProfile forecast_full_unroll(int horizons) const;

 private:
  ForecastProfile profile_from_forecast_net(const ForecastNetwork& net) const;

  std::shared_ptr<const CompiledModel> model_;
  ObservationHistory history_;
  int time_ = -1;
  AlphaVector alphas_;
  std::vector<AlphaTraceEntry> trace_;
};

// Scrolling projection: advances the model one slice at a time past the
// session's last observation, preserving the likelihood weights and the
// observed lagged parents.  Querying after j scrolls yields the slice
// t+j marginals; iterating scroll matches a single unroll to the same
// horizon.
class Projection {
 public:
  explicit Projection(const Session& session);

  int horizon() const { return horizon_; }
  void scroll() { ++horizon_; }

  // Marginals of the leading slice (base time + horizon).
  std::vector<std::pair<std::string, Distribution>> leading_marginals() const;

 private:
  std::shared_ptr<const CompiledModel> model_;
  ObservationHistory history_;
  int base_time_ = -1;
  AlphaVector alphas_;
  int horizon_ = 0;
};

}  // namespace dnmcast

#endif  // DNMCAST_SESSION_HPP
