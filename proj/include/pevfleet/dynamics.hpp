#ifndef PEVFLEET_DYNAMICS_HPP
#define PEVFLEET_DYNAMICS_HPP

#include <array>

#include "pevfleet/charge_rates.hpp"
#include "pevfleet/control.hpp"
#include "pevfleet/od_table.hpp"
#include "pevfleet/soe_grid.hpp"

namespace pevfleet {

/// Advances the fleet by one step of the upwind-discretized transport
/// equations under the given flow controls.
///
/// Charging density advects toward SOE 1, discharging toward SOE 0, each with
/// first-order upwind differences. The outflow at the top charging bin and
/// the bottom discharging bin is not lost: those vehicles return to idle
/// through the forced boundary flows, so the step conserves vehicles exactly.
/// Trip departures are removed from idle and booked into the transit ledger;
/// ledger entries whose arrival step matches `current_step` are released into
/// the new idle densities.
///
/// Throws InfeasibleControlError if any resulting density falls below the
/// -1e-9 floor, and ConfigError on CFL violation.
FleetState step(const FleetState& state, const ControlVector& ctrl, const ChargeRates& rates,
                const SoeGrid& grid, const OdTable& od, int current_step);

/// Vehicle counts by category: charging, idle, discharging, in transit with
/// passengers, in transit without passengers. Sums to total_vehicles.
struct StateCensus {
    double charging = 0.0;
    double idle = 0.0;
    double discharging = 0.0;
    double transit_pax = 0.0;
    double transit_empty = 0.0;

    double total() const { return charging + idle + discharging + transit_pax + transit_empty; }
    std::array<double, 5> as_array() const {
        return {charging, idle, discharging, transit_pax, transit_empty};
    }
};

StateCensus state_census(const FleetState& state, const SoeGrid& grid);

}  // namespace pevfleet

#endif
