#ifndef DNMCAST_TESTS_FIXTURES_HPP
#define DNMCAST_TESTS_FIXTURES_HPP

#include "dnmcast/network.hpp"

namespace dnmcast::testsupport {

// The static one-slice car-market network with the contemporaneous table
// standing in for supply's conditional.
inline DiscreteNetwork carsales_slice_network() {
  NetworkStructure s;
  s.variables = {
      {"demand", {"H", "L"}},
      {"health", {"H", "L"}},
      {"price", {"H", "L"}},
      {"supply", {"H", "L"}},
  };
  s.parents = {{2}, {}, {1}, {0, 1}};

  std::vector<TabularCpd> cpds;
  cpds.push_back(TabularCpd(0, {2}, {2}, 2,
                            {0.25, 0.75,     // price = H
                             0.65, 0.35}));  // price = L
  cpds.push_back(TabularCpd(1, {}, {}, 2, {0.85, 0.15}));
  cpds.push_back(TabularCpd(2, {1}, {2}, 2,
                            {0.35, 0.65,     // health = H
                             0.80, 0.20}));  // health = L
  cpds.push_back(TabularCpd(3, {0, 1}, {2, 2}, 2,
                            {0.55, 0.45,     // d=H h=H
                             0.25, 0.75,     // d=H h=L
                             0.60, 0.40,     // d=L h=H
                             0.55, 0.45}));   // d=L h=L
  return DiscreteNetwork(std::move(s), std::move(cpds));
}

}  // namespace dnmcast::testsupport

#endif  // DNMCAST_TESTS_FIXTURES_HPP
