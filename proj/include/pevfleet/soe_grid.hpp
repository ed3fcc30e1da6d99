#ifndef PEVFLEET_SOE_GRID_HPP
#define PEVFLEET_SOE_GRID_HPP

#include <string>
#include <vector>

#include "pevfleet/errors.hpp"

namespace pevfleet {

/// Discrete state-of-energy x time grid. Densities live on n_bins grid
/// points x_k = k*dx spanning [0, 1]; integrals use the rectangle rule
/// (sum of value*dx), which keeps the step conservation algebraically exact.
struct SoeGrid {
    int n_bins = 6;            // grid points on the SOE axis, endpoints included
    double dx = 0.2;           // SOE per bin
    double dt_minutes = 10.0;  // simulation step length
    int horizon_steps = 5;     // optimization window length, in steps
    int n_sim_steps = 144;     // one day at 10-minute resolution

    void validate() const;
    double soe_at(int bin) const { return bin * dx; }
};

SoeGrid make_grid(int n_bins, double dt_minutes, int horizon_steps, int n_sim_steps);

/// Node labels come from the scenario; the known transportation network uses
/// {I, II, IV}. Subsets are allowed so small test networks stay expressible.
bool is_known_node_label(const std::string& label);
void validate_node_labels(const std::vector<std::string>& labels);

/// One batch of vehicles travelling between nodes. Vehicles rejoin the idle
/// density of `destination` during the transition arrival_step -> arrival_step+1,
/// i.e. they are present again in the state at arrival_step + 1.
struct TransitEntry {
    int origin = 0;
    int destination = 0;
    int arrival_step = 0;
    int arrival_bin = 0;
    double vehicle_count = 0.0;
    bool with_passengers = false;
};

/// Aggregate fleet description at one time step: per node, densities of
/// charging / idle / discharging vehicles over the SOE bins (vehicles per
/// unit SOE), plus the ledger of vehicles currently in transit.
///
/// Treated as an immutable value once a step has produced it; stepping always
/// builds a fresh state.
class FleetState {
public:
    FleetState() = default;
    FleetState(int n_nodes, int n_bins);

    int n_nodes() const { return n_nodes_; }
    int n_bins() const { return n_bins_; }

    double charging(int node, int bin) const { return charging_[at(node, bin)]; }
    double idle(int node, int bin) const { return idle_[at(node, bin)]; }
    double discharging(int node, int bin) const { return discharging_[at(node, bin)]; }

    double& charging(int node, int bin) { return charging_[at(node, bin)]; }
    double& idle(int node, int bin) { return idle_[at(node, bin)]; }
    double& discharging(int node, int bin) { return discharging_[at(node, bin)]; }

    const std::vector<TransitEntry>& in_transit() const { return transit_; }
    std::vector<TransitEntry>& in_transit() { return transit_; }

    void require_shape(int n_nodes, int n_bins) const;

    /// Clamps round-off negatives in [-1e-9, 0) to zero; anything more
    /// negative is a hard error (the caller produced an invalid density).
    void enforce_density_floor();

    static constexpr double kDensityFloor = -1e-9;

private:
    std::size_t at(int node, int bin) const {
        return static_cast<std::size_t>(node) * n_bins_ + bin;
    }

    int n_nodes_ = 0;
    int n_bins_ = 0;
    std::vector<double> charging_;
    std::vector<double> idle_;
    std::vector<double> discharging_;
    std::vector<TransitEntry> transit_;
};

/// Discrete total: sum over nodes and bins of (u+v+w)*dx plus in-transit counts.
double total_vehicles(const FleetState& state, const SoeGrid& grid);

/// All vehicles idle, density uniform across bins within each node; node
/// shares given by `weights` (must sum to 1 within 1e-9).
FleetState init_uniform_idle(double fleet_size, const SoeGrid& grid, int n_nodes,
                             const std::vector<double>& weights);

}  // namespace pevfleet

#endif
