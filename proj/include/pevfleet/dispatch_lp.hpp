#ifndef PEVFLEET_DISPATCH_LP_HPP
#define PEVFLEET_DISPATCH_LP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "pevfleet/control.hpp"
#include "pevfleet/lp_problem.hpp"
#include "pevfleet/scenario.hpp"
#include "pevfleet/soe_grid.hpp"

namespace pevfleet {

enum class VarKind : unsigned char {
    Charging,       // density, states 1..H
    Idle,           // density
    Discharging,    // density
    FlowCharge,     // idle <-> charging flow, steps 0..H-1
    FlowDischarge,  // idle <-> discharging flow
    TripPax,        // departures with passengers, per OD pair
    TripEmpty,      // departures without passengers
    ArrivalPax,     // explicit-arrival debug columns
    ArrivalEmpty,
};

struct VarTag {
    VarKind kind;
    int from = 0;  // node (origin for trip kinds)
    int to = 0;    // destination for trip kinds, == from otherwise
    int bin = 0;
    int step = 0;  // state step 1..H for densities, flow step 0..H-1 otherwise
};

/// Bijection between LP columns and tagged dispatch variables. Density
/// variables cover window states 1..H; the window's initial state enters the
/// constraints as constants. Arrival flows are eliminated by substitution
/// through the trip-conservation equalities unless explicit_arrivals is set
/// (a debug mode used to cross-check that elimination).
class VariableIndex {
public:
    VariableIndex(int n_nodes, int n_bins, int horizon, bool explicit_arrivals = false);

    int n_cols() const { return n_cols_; }
    int n_nodes() const { return n_nodes_; }
    int n_bins() const { return n_bins_; }
    int horizon() const { return horizon_; }
    bool explicit_arrivals() const { return explicit_arrivals_; }

    int density(VarKind kind, int node, int bin, int state_step) const;
    int flow_charge(int node, int bin, int step) const;
    int flow_discharge(int node, int bin, int step) const;
    int trip_pax(int from, int to, int bin, int step) const;
    int trip_empty(int from, int to, int bin, int step) const;
    int arrival_pax(int from, int to, int arrival_bin, int step) const;
    int arrival_empty(int from, int to, int arrival_bin, int step) const;

    VarTag tag(int col) const;
    std::string name(int col, const std::vector<std::string>& node_labels) const;

private:
    int nk(int node, int bin, int step) const {
        return (node * n_bins_ + bin) * horizon_ + step;
    }
    int od(int from, int to, int bin, int step) const {
        return ((from * n_nodes_ + to) * n_bins_ + bin) * horizon_ + step;
    }

    int n_nodes_, n_bins_, horizon_;
    bool explicit_arrivals_;
    int per_class_, per_od_class_;
    int n_cols_;
};

struct BuildOptions {
    bool explicit_arrivals = false;
};

struct DispatchLp {
    LpProblem problem;
    VariableIndex index;
    std::vector<std::string> row_names;
};

/// Assembles the optimization window starting at `window_start`: upwind state
/// equations, boundary return-to-idle equalities, flow-size bounds, trip
/// coupling with in-window substitution (departures whose arrival would land
/// beyond the window are fixed to zero), demand caps, trip energy
/// feasibility, and the revenue-minus-charging-cost objective. Pending
/// ledger arrivals enter the idle equations as constants.
DispatchLp build_lp(const FleetState& state0, const ScenarioSpec& scenario, int window_start,
                    const SoeGrid& grid, const ChargeRates& rates,
                    const BuildOptions& options = {});

/// First-step flows of a window solution, with solver round-off below 1e-9
/// clamped to zero.
ControlVector extract_controls(const std::vector<double>& solution, const VariableIndex& index);

/// Plain-text export (LP file format) for cross-checking with other solvers.
void write_lp_format(const DispatchLp& lp, const std::vector<std::string>& node_labels,
                     std::ostream& out);

}  // namespace pevfleet

#endif
