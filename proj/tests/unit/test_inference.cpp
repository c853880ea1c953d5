#include <cmath>

#include <doctest.h>

#include "dnmcast/inference.hpp"
#include "../support/fixtures.hpp"
#include "../support/random_models.hpp"

using namespace dnmcast;
using testsupport::carsales_slice_network;

namespace {

double max_abs_diff(const Distribution& a, const Distribution& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("slice priors by enumeration") {
  auto net = carsales_slice_network();
  auto price = posterior_enumerate(net, {}, *net.find_variable("price"));
  CHECK(price[0] == doctest::Approx(0.4175).epsilon(1e-12));
  auto demand = posterior_enumerate(net, {}, *net.find_variable("demand"));
  CHECK(demand[0] == doctest::Approx(0.483).epsilon(1e-12));
}

TEST_CASE("observed query gives a point mass") {
  auto net = carsales_slice_network();
  int supply = *net.find_variable("supply");
  auto post = posterior_enumerate(net, {{supply, 0}}, supply);
  CHECK(post[0] == 1.0);
  CHECK(post[1] == 0.0);
  auto post_ve = posterior_eliminate(net, {{supply, 0}}, supply);
  CHECK(post_ve[0] == 1.0);
}

TEST_CASE("elimination matches enumeration on the slice") {
  auto net = carsales_slice_network();
  for (int q = 0; q < net.variable_count(); ++q) {
    auto a = posterior_enumerate(net, {}, q);
    auto b = posterior_eliminate(net, {}, q);
    CHECK(max_abs_diff(a, b) < 1e-12);
  }
  Evidence ev{{*net.find_variable("supply"), 1}, {*net.find_variable("health"), 0}};
  auto a = posterior_enumerate(net, ev, *net.find_variable("demand"));
  auto b = posterior_eliminate(net, ev, *net.find_variable("demand"));
  CHECK(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("zero-probability evidence is an error") {
  NetworkStructure s;
  s.variables = {{"a", {"0", "1"}}, {"b", {"0", "1"}}};
  s.parents = {{}, {0}};
  std::vector<TabularCpd> cpds;
  cpds.push_back(TabularCpd(0, {}, {}, 2, {1.0, 0.0}));
  cpds.push_back(TabularCpd(1, {0}, {2}, 2, {1.0, 0.0, 0.0, 1.0}));
  DiscreteNetwork net(std::move(s), std::move(cpds));
  // b deterministically equals a, and a is always state 0.
  CHECK_THROWS_AS(posterior_enumerate(net, {{1, 1}}, 0), InconsistentEvidenceError);
  CHECK_THROWS_AS(posterior_eliminate(net, {{1, 1}}, 0), InconsistentEvidenceError);
  // Observed query under impossible evidence must also refuse.
  CHECK_THROWS_AS(posterior_eliminate(net, {{0, 1}}, 0), InconsistentEvidenceError);
}

TEST_CASE("fully observed parents reduce to CPT row lookups") {
  auto net = carsales_slice_network();
  Evidence ev{{0, 1}, {1, 0}, {2, 0}};  // demand=L, health=H, price=H
  auto post = posterior_eliminate(net, ev, 3);
  CHECK(post[0] == doctest::Approx(0.60).epsilon(1e-12));
}

TEST_CASE("elimination equals enumeration on random networks") {
  SplitMix64 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    auto net = testsupport::random_binary_network(rng, 12, 3);
    auto ev = testsupport::random_evidence(rng, net, 0.3);
    int query = static_cast<int>(rng.next_u64() % 12);
    if (ev.count(query)) ev.erase(query);
    auto a = posterior_enumerate_serial(net, ev, query);
    auto b = posterior_eliminate(net, ev, query);
    CHECK(max_abs_diff(a, b) < 1e-9);
  }
}

TEST_CASE("parallel enumeration matches the serial reference") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto net = testsupport::random_binary_network(rng, 14, 3);
    auto ev = testsupport::random_evidence(rng, net, 0.2);
    int query = static_cast<int>(rng.next_u64() % 14);
    if (ev.count(query)) ev.erase(query);
    auto serial = posterior_enumerate_serial(net, ev, query);
    auto parallel = posterior_enumerate(net, ev, query);
    CHECK(max_abs_diff(serial, parallel) < 1e-12);
  }
}

TEST_CASE("posteriors are normalized with nonnegative entries") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto net = testsupport::random_binary_network(rng, 10, 3);
    auto ev = testsupport::random_evidence(rng, net, 0.4);
    int query = static_cast<int>(rng.next_u64() % 10);
    if (ev.count(query)) ev.erase(query);
    auto post = posterior_eliminate(net, ev, query);
    double sum = 0.0;
    for (int i = 0; i < post.size(); ++i) {
      CHECK(post[i] >= 0.0);
      sum += post[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}
