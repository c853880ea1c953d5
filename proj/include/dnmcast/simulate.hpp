#ifndef DNMCAST_SIMULATE_HPP
#define DNMCAST_SIMULATE_HPP

#include <cstdint>
#include <map>
#include <string>

#include "dnmcast/series_csv.hpp"
#include "dnmcast/temporal.hpp"

namespace dnmcast {

// Samples one trajectory of the model over periods 0..periods-1 by
// ancestral sampling of the unrolled process at the model's initial
// weights.  "Must be observed" initial slices are drawn uniformly unless
// an initial value is supplied; provision tables are sampled like any
// other CPD.  Deterministic for a fixed seed.
TimeSeries simulate_series(const CompiledModel& model, int periods, std::uint64_t seed,
                           const std::map<std::string, std::string>& initial_values = {});

}  // namespace dnmcast

#endif  // DNMCAST_SIMULATE_HPP
