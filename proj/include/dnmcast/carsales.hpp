#ifndef DNMCAST_CARSALES_HPP
#define DNMCAST_CARSALES_HPP

#include "dnmcast/temporal.hpp"

namespace dnmcast {

// The bundled car-market example model: binary demand/health/price/supply,
// supply driven by an additive mixture of a contemporaneous table over
// (demand, health) and a lagged table over (price, supply) at lag 1.
DnmSpec build_carsales();

// The bundled twelve-period observation series for the model, as rows of
// state labels in variable order (demand, health, price, supply).
std::vector<std::vector<std::string>> carsales_series();

}  // namespace dnmcast

#endif  // DNMCAST_CARSALES_HPP
