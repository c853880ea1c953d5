#include "dnmcast/sampling.hpp"

#include "dnmcast/rng.hpp"

namespace dnmcast {

double SampleMatrix::empirical_marginal(int variable, int state) const {
  if (sample_count == 0) return 0.0;
  std::int64_t hits = 0;
  for (int i = 0; i < sample_count; ++i) {
    if (at(i, variable) == state) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(sample_count);
}

namespace {

void draw_one(const DiscreteNetwork& net, std::uint64_t seed, std::uint64_t index,
              std::int32_t* row) {
  SplitMix64 rng(derive_stream_seed(seed, index));
  for (int v : net.topological_order()) {
    const TabularCpd& cpd = net.cpd(v);
    int r = 0;
    for (int p : cpd.parent_order()) {
      r = r * net.variable(p).cardinality() + row[p];
    }
    auto probs = cpd.row(r);
    double u = rng.next_unit();
    double cum = 0.0;
    int picked = static_cast<int>(probs.size()) - 1;
    for (std::size_t s = 0; s < probs.size(); ++s) {
      cum += probs[s];
      if (u < cum) {
        picked = static_cast<int>(s);
        break;
      }
    }
    row[v] = picked;
  }
}

}  // namespace

SampleMatrix forward_sample_serial(const DiscreteNetwork& net, std::uint64_t seed, int n) {
  if (n < 1) throw DomainError("sample count must be >= 1");
  SampleMatrix out;
  out.sample_count = n;
  out.variable_count = net.variable_count();
  out.states.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(out.variable_count), 0);
  for (int i = 0; i < n; ++i) {
    draw_one(net, seed, static_cast<std::uint64_t>(i),
             out.states.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(out.variable_count));
  }
  return out;
}

SampleMatrix forward_sample(const DiscreteNetwork& net, std::uint64_t seed, int n) {
  if (n < 1) throw DomainError("sample count must be >= 1");
  SampleMatrix out;
  out.sample_count = n;
  out.variable_count = net.variable_count();
  out.states.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(out.variable_count), 0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    draw_one(net, seed, static_cast<std::uint64_t>(i),
             out.states.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(out.variable_count));
  }
  return out;
}

}  // namespace dnmcast
