#ifndef PEVFLEET_CONTROL_HPP
#define PEVFLEET_CONTROL_HPP

#include <vector>

#include "pevfleet/errors.hpp"

namespace pevfleet {

/// One time step of flow decisions. All entries are rates in vehicles per
/// unit SOE per minute, held constant over the step.
///
///  - idle_to_charge / idle_to_discharge: per node per bin; negative values
///    move vehicles back to idle (bounded by the charging/discharging density).
///  - trips_pax / trips_empty: departures per ordered node pair per bin;
///    always nonnegative.
class ControlVector {
public:
    ControlVector() = default;
    ControlVector(int n_nodes, int n_bins)
        : n_nodes_(n_nodes),
          n_bins_(n_bins),
          idle_to_charge_(static_cast<std::size_t>(n_nodes) * n_bins, 0.0),
          idle_to_discharge_(static_cast<std::size_t>(n_nodes) * n_bins, 0.0),
          trips_pax_(static_cast<std::size_t>(n_nodes) * n_nodes * n_bins, 0.0),
          trips_empty_(static_cast<std::size_t>(n_nodes) * n_nodes * n_bins, 0.0) {}

    int n_nodes() const { return n_nodes_; }
    int n_bins() const { return n_bins_; }

    double idle_to_charge(int node, int bin) const { return idle_to_charge_[nk(node, bin)]; }
    double idle_to_discharge(int node, int bin) const { return idle_to_discharge_[nk(node, bin)]; }
    double trips_pax(int from, int to, int bin) const { return trips_pax_[od(from, to, bin)]; }
    double trips_empty(int from, int to, int bin) const { return trips_empty_[od(from, to, bin)]; }

    double& idle_to_charge(int node, int bin) { return idle_to_charge_[nk(node, bin)]; }
    double& idle_to_discharge(int node, int bin) { return idle_to_discharge_[nk(node, bin)]; }
    double& trips_pax(int from, int to, int bin) { return trips_pax_[od(from, to, bin)]; }
    double& trips_empty(int from, int to, int bin) { return trips_empty_[od(from, to, bin)]; }

    void require_shape(int n_nodes, int n_bins) const {
        if (n_nodes_ != n_nodes || n_bins_ != n_bins) {
            throw DimensionError("control shape does not match fleet state");
        }
    }

    void validate_trip_signs() const {
        for (double x : trips_pax_) {
            if (x < 0.0) throw ValidationError("trip departures must be nonnegative");
        }
        for (double x : trips_empty_) {
            if (x < 0.0) throw ValidationError("trip departures must be nonnegative");
        }
    }

private:
    std::size_t nk(int node, int bin) const {
        return static_cast<std::size_t>(node) * n_bins_ + bin;
    }
    std::size_t od(int from, int to, int bin) const {
        return (static_cast<std::size_t>(from) * n_nodes_ + to) * n_bins_ + bin;
    }

    int n_nodes_ = 0;
    int n_bins_ = 0;
    std::vector<double> idle_to_charge_;
    std::vector<double> idle_to_discharge_;
    std::vector<double> trips_pax_;
    std::vector<double> trips_empty_;
};

}  // namespace pevfleet

#endif
