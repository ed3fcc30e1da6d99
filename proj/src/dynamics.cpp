#include "pevfleet/dynamics.hpp"

#include <cmath>
#include <utility>

namespace pevfleet {

FleetState step(const FleetState& state, const ControlVector& ctrl, const ChargeRates& rates,
                const SoeGrid& grid, const OdTable& od, int current_step) {
    grid.validate();
    rates.validate(grid);
    const int n = state.n_nodes();
    const int nb = grid.n_bins;
    state.require_shape(n, nb);
    ctrl.require_shape(n, nb);
    ctrl.validate_trip_signs();
    if (od.n_nodes() != n) {
        throw DimensionError("step: od table node count does not match state");
    }

    const double dt = grid.dt_minutes;
    const double dx = grid.dx;
    const double lam_c = rates.charge_courant(grid);
    const double lam_d = rates.discharge_courant(grid);

    FleetState next(n, nb);

    for (int i = 0; i < n; ++i) {
        // Charging curve: upwind in +x. No flux leaves through x=1; the top
        // bin is emptied by the forced boundary flow instead.
        for (int k = 0; k < nb; ++k) {
            const double inflow = (k > 0) ? lam_c * state.charging(i, k - 1) : 0.0;
            const double kept = (k == nb - 1) ? state.charging(i, k)
                                              : (1.0 - lam_c) * state.charging(i, k);
            next.charging(i, k) = kept + inflow + dt * ctrl.idle_to_charge(i, k);
        }
        // Discharging curve: upwind in -x, mirrored at x=0.
        for (int k = 0; k < nb; ++k) {
            const double inflow = (k < nb - 1) ? lam_d * state.discharging(i, k + 1) : 0.0;
            const double kept = (k == 0) ? state.discharging(i, k)
                                         : (1.0 - lam_d) * state.discharging(i, k);
            next.discharging(i, k) = kept + inflow + dt * ctrl.idle_to_discharge(i, k);
        }
        // Idle curve: hub for every transition.
        for (int k = 0; k < nb; ++k) {
            double departures = 0.0;
            for (int j = 0; j < n; ++j) {
                departures += ctrl.trips_pax(i, j, k) + ctrl.trips_empty(i, j, k);
            }
            next.idle(i, k) = state.idle(i, k) +
                              dt * (-ctrl.idle_to_charge(i, k) - ctrl.idle_to_discharge(i, k) -
                                    departures);
        }
    }

    // Release ledger entries that arrive in this transition.
    for (const TransitEntry& e : state.in_transit()) {
        if (e.arrival_step == current_step) {
            next.idle(e.destination, e.arrival_bin) += e.vehicle_count / dx;
        } else {
            next.in_transit().push_back(e);
        }
    }

    // Book new departures. Departures below the energy floor for their OD
    // pair are infeasible; the density check below catches the idle side,
    // the bin check here catches the energy side.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const OdEntry& trip = od.at(i, j);
            for (int k = 0; k < nb; ++k) {
                const double rate = ctrl.trips_pax(i, j, k) + ctrl.trips_empty(i, j, k);
                if (rate <= 0.0) continue;
                if (k < trip.bins) {
                    throw InfeasibleControlError(
                        "step: trip departure below the energy-feasible SOE bin");
                }
                auto book = [&](double r, bool pax) {
                    const double count = r * dx * dt;
                    if (count <= 0.0) return;
                    TransitEntry entry;
                    entry.origin = i;
                    entry.destination = j;
                    entry.arrival_step = current_step + trip.steps;
                    entry.arrival_bin = k - trip.bins;
                    entry.vehicle_count = count;
                    entry.with_passengers = pax;
                    next.in_transit().push_back(entry);
                };
                book(ctrl.trips_pax(i, j, k), true);
                book(ctrl.trips_empty(i, j, k), false);
            }
        }
    }

    next.enforce_density_floor();
    return next;
}

StateCensus state_census(const FleetState& state, const SoeGrid& grid) {
    state.require_shape(state.n_nodes(), grid.n_bins);
    StateCensus census;
    for (int i = 0; i < state.n_nodes(); ++i) {
        for (int k = 0; k < state.n_bins(); ++k) {
            census.charging += state.charging(i, k) * grid.dx;
            census.idle += state.idle(i, k) * grid.dx;
            census.discharging += state.discharging(i, k) * grid.dx;
        }
    }
    for (const TransitEntry& e : state.in_transit()) {
        (e.with_passengers ? census.transit_pax : census.transit_empty) += e.vehicle_count;
    }
    return census;
}

}  // namespace pevfleet
