#include <cmath>

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dnmcast/inference.hpp"
#include "dnmcast/sampling.hpp"
#include "../support/fixtures.hpp"

using namespace dnmcast;
using testsupport::carsales_slice_network;

TEST_CASE("same seed gives identical samples, different seed differs") {
  auto net = carsales_slice_network();
  auto a = forward_sample(net, 99, 500);
  auto b = forward_sample(net, 99, 500);
  CHECK(a.states == b.states);
  auto c = forward_sample(net, 100, 500);
  CHECK(a.states != c.states);
}

TEST_CASE("parallel and serial sampling are bit-identical") {
  auto net = carsales_slice_network();
  auto a = forward_sample(net, 1234, 20000);
  auto b = forward_sample_serial(net, 1234, 20000);
  CHECK(a.states == b.states);
}

TEST_CASE("point-mass network yields constant samples") {
  NetworkStructure s;
  s.variables = {{"a", {"0", "1"}}, {"b", {"0", "1"}}};
  s.parents = {{}, {0}};
  std::vector<TabularCpd> cpds;
  cpds.push_back(TabularCpd(0, {}, {}, 2, {0.0, 1.0}));
  cpds.push_back(TabularCpd(1, {0}, {2}, 2, {1.0, 0.0, 0.0, 1.0}));
  DiscreteNetwork net(std::move(s), std::move(cpds));
  auto out = forward_sample(net, 5, 200);
  for (int i = 0; i < out.sample_count; ++i) {
    CHECK(out.at(i, 0) == 1);
    CHECK(out.at(i, 1) == 1);
  }
}

TEST_CASE("empirical marginals converge to exact marginals") {
  auto net = carsales_slice_network();
  const int n = 1000000;
  auto out = forward_sample(net, 2024, n);

  // 3-sigma binomial bands around the exact marginals.
  for (int v = 0; v < net.variable_count(); ++v) {
    auto exact = posterior_eliminate(net, {}, v);
    double p = exact[0];
    double band = 3.0 * std::sqrt(p * (1.0 - p) / n);
    CHECK(std::fabs(out.empirical_marginal(v, 0) - p) < band);
  }
  CHECK(std::fabs(out.empirical_marginal(*net.find_variable("health"), 0) - 0.85) < 0.002);
}

TEST_CASE("sample count must be positive") {
  auto net = carsales_slice_network();
  CHECK_THROWS_AS(forward_sample(net, 1, 0), DomainError);
}

#ifdef _OPENMP
TEST_CASE("parallel kernels are bit-stable across thread counts") {
  auto net = carsales_slice_network();
  const int saved = omp_get_max_threads();

  omp_set_num_threads(1);
  auto samples_1 = forward_sample(net, 31, 50000);
  auto posterior_1 = posterior_enumerate(net, {{1, 0}}, 3);
  omp_set_num_threads(2);
  auto samples_2 = forward_sample(net, 31, 50000);
  auto posterior_2 = posterior_enumerate(net, {{1, 0}}, 3);
  omp_set_num_threads(5);
  auto samples_5 = forward_sample(net, 31, 50000);
  auto posterior_5 = posterior_enumerate(net, {{1, 0}}, 3);
  omp_set_num_threads(saved);

  CHECK(samples_1.states == samples_2.states);
  CHECK(samples_1.states == samples_5.states);
  for (int s = 0; s < posterior_1.size(); ++s) {
    CHECK(posterior_1[s] == posterior_2[s]);
    CHECK(posterior_1[s] == posterior_5[s]);
  }
}
#endif
