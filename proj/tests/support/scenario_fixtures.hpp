#ifndef PEVFLEET_TESTS_SCENARIO_FIXTURES_HPP
#define PEVFLEET_TESTS_SCENARIO_FIXTURES_HPP

#include <string>
#include <vector>

#include "pevfleet/scenario.hpp"

namespace pevfleet::testing {

/// Small scenario skeleton with zero prices and zero demand; tests fill in
/// what they need and call requantize()/validate(). Trip table defaults to
/// one-bin, one-step trips. Mobility scale is 1 so trip demand reads raw.
inline ScenarioSpec tiny_scenario(std::vector<std::string> nodes, int n_bins,
                                  double dt_minutes, int horizon, int n_sim,
                                  double power_kw = 7.0, double e_max_kwh = 10.0,
                                  double eta = 0.86) {
    ScenarioSpec s;
    s.label = "tiny";
    s.nodes = std::move(nodes);
    s.grid = make_grid(n_bins, dt_minutes, horizon, n_sim);
    s.rates = make_rates(power_kw, e_max_kwh, eta, s.grid);
    const int n = s.n_nodes();
    s.od_raw.assign(static_cast<std::size_t>(n) * n,
                    OdRaw{0.9 * s.grid.dx * e_max_kwh, 0.9 * dt_minutes * 60.0});
    s.prices.outage_price_per_kwh.assign(n, 0.0);
    s.prices.trip_prices.assign(static_cast<std::size_t>(n) * n, TripPrice{0.0, 0.0});
    s.prices.grid_price_per_kwh = 0.25;
    s.fleet_size = 0.0;
    s.initial_weights.assign(n, 1.0 / n);
    s.demand = DemandProfile(n, n_sim + horizon, 1.0);
    s.requantize();
    return s;
}

inline void fill_power_demand(ScenarioSpec* s, int node, double kwh_per_step) {
    for (int t = 0; t < s->demand.n_steps(); ++t) s->demand.set_power_kwh(node, t, kwh_per_step);
}

inline void fill_trip_demand(ScenarioSpec* s, int from, int to, double trips_per_step) {
    for (int t = 0; t < s->demand.n_steps(); ++t) {
        s->demand.set_raw_trips(from, to, t, trips_per_step);
    }
}

}  // namespace pevfleet::testing

#endif
