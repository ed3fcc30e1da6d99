#ifndef PEVFLEET_PRICES_HPP
#define PEVFLEET_PRICES_HPP

#include <vector>

#include "pevfleet/errors.hpp"

namespace pevfleet {

/// Fare for one ordered node pair: the informational per-kWh figure and the
/// per-trip fare actually credited at departure.
struct TripPrice {
    double per_kwh = 0.0;
    double per_trip = 0.0;
};

struct PriceTable {
    std::vector<double> outage_price_per_kwh;  // per node, $/kWh served during outages
    std::vector<TripPrice> trip_prices;        // per ordered node pair
    double grid_price_per_kwh = 0.25;          // cost of charging from the grid

    const TripPrice& trip(int from, int to, int n_nodes) const {
        return trip_prices[static_cast<std::size_t>(from) * n_nodes + to];
    }

    void validate(int n_nodes) const {
        if (static_cast<int>(outage_price_per_kwh.size()) != n_nodes) {
            throw ScenarioError("prices: one outage price per node required");
        }
        if (static_cast<int>(trip_prices.size()) != n_nodes * n_nodes) {
            throw ScenarioError("prices: one trip fare per ordered node pair required");
        }
        for (double p : outage_price_per_kwh) {
            if (p < 0.0) throw ScenarioError("prices: negative outage price");
        }
        for (const TripPrice& t : trip_prices) {
            if (t.per_kwh < 0.0 || t.per_trip < 0.0) {
                throw ScenarioError("prices: negative trip fare");
            }
        }
        if (grid_price_per_kwh < 0.0) {
            throw ScenarioError("prices: negative grid energy price");
        }
    }
};

}  // namespace pevfleet

#endif
