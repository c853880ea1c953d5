#include "dnmcast/carsales.hpp"

namespace dnmcast {

DnmSpec build_carsales() {
  DnmSpec spec;
  spec.slice.variables = {
      {"demand", {"H", "L"}},
      {"health", {"H", "L"}},
      {"price", {"H", "L"}},
      {"supply", {"H", "L"}},
  };
  spec.slice.contemporaneous_arcs = {
      {"health", "price"},
      {"price", "demand"},
      {"demand", "supply"},
      {"health", "supply"},
  };
  spec.lagged_arcs = {
      {"price", 1, "supply"},
      {"supply", 1, "supply"},
  };

  spec.cpds["health"] = TemplateTabularCpd{"health", {}, {0.85, 0.15}};
  spec.cpds["price"] = TemplateTabularCpd{"price",
                                          {"health"},
                                          {0.35, 0.65,    // health = H
                                           0.80, 0.20}};  // health = L
  spec.cpds["demand"] = TemplateTabularCpd{"demand",
                                           {"price"},
                                           {0.25, 0.75,    // price = H
                                            0.65, 0.35}};  // price = L

  TemplateMixtureCpd supply;
  supply.target = "supply";
  supply.q_parents = {"demand", "health"};
  supply.q_table = {0.55, 0.45,   // d=H h=H
                    0.25, 0.75,   // d=H h=L
                    0.60, 0.40,   // d=L h=H
                    0.55, 0.45};  // d=L h=L
  supply.r_parents = {{"price", 1}, {"supply", 1}};
  supply.r_table = {0.90, 0.10,   // p=H s=H
                    0.40, 0.60,   // p=H s=L
                    0.40, 0.60,   // p=L s=H
                    0.10, 0.90};  // p=L s=L
  supply.decomposition = MixtureKind::additive;
  supply.alpha_init = 0.5;
  spec.cpds["supply"] = std::move(supply);

  spec.initial_slices["supply"] = InitialProvision{true, std::nullopt};
  return spec;
}

std::vector<std::vector<std::string>> carsales_series() {
  // Columns: demand, health, price, supply; one row per period t = 0..11.
  return {
      {"H", "H", "H", "L"},  // t = 0
      {"H", "H", "H", "L"},  // t = 1
      {"H", "H", "H", "L"},  // t = 2
      {"L", "H", "H", "H"},  // t = 3
      {"L", "H", "H", "H"},  // t = 4
      {"L", "H", "H", "H"},  // t = 5
      {"L", "H", "L", "H"},  // t = 6
      {"L", "H", "L", "H"},  // t = 7
      {"L", "H", "L", "H"},  // t = 8
      {"L", "L", "L", "L"},  // t = 9
      {"L", "L", "L", "L"},  // t = 10
      {"L", "L", "L", "L"},  // t = 11
  };
}

}  // namespace dnmcast
