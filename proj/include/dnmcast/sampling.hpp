#ifndef DNMCAST_SAMPLING_HPP
#define DNMCAST_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "dnmcast/network.hpp"

namespace dnmcast {

// n full ancestral samples, one row per sample, one state index per
// variable (network order).
struct SampleMatrix {
  int sample_count = 0;
  int variable_count = 0;
  std::vector<std::int32_t> states;  // sample_count * variable_count

  int at(int sample, int variable) const {
    return states[static_cast<std::size_t>(sample) * static_cast<std::size_t>(variable_count) +
                  static_cast<std::size_t>(variable)];
  }

  // Fraction of samples with the given state for one variable.
  double empirical_marginal(int variable, int state) const;
};

// Ancestral forward sampling.  Each sample draws from its own RNG stream
// derived from (seed, sample index), so the output is identical for any
// thread count; samples are filled in parallel under OpenMP.
SampleMatrix forward_sample(const DiscreteNetwork& net, std::uint64_t seed, int n);

// Plain-loop reference; produces bit-identical output to forward_sample.
SampleMatrix forward_sample_serial(const DiscreteNetwork& net, std::uint64_t seed, int n);

}  // namespace dnmcast

#endif  // DNMCAST_SAMPLING_HPP
