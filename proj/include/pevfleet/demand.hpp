#ifndef PEVFLEET_DEMAND_HPP
#define PEVFLEET_DEMAND_HPP

#include <string>
#include <vector>

#include "pevfleet/soe_grid.hpp"

namespace pevfleet {

/// Exogenous demand: outage energy to serve per node per step (kWh) and
/// passenger trips requested per ordered node pair per step. Trip demand is
/// stored as loaded and multiplied by `mobility_scale` on read.
class DemandProfile {
public:
    DemandProfile() = default;
    DemandProfile(int n_nodes, int n_steps, double mobility_scale = 10.0);

    int n_nodes() const { return n_nodes_; }
    int n_steps() const { return n_steps_; }
    double mobility_scale() const { return mobility_scale_; }

    double power_kwh(int node, int step) const {
        return power_[static_cast<std::size_t>(node) * n_steps_ + step];
    }
    double trips(int from, int to, int step) const {
        return mobility_scale_ *
               trips_raw_[(static_cast<std::size_t>(from) * n_nodes_ + to) * n_steps_ + step];
    }

    double raw_trips(int from, int to, int step) const {
        return trips_raw_[(static_cast<std::size_t>(from) * n_nodes_ + to) * n_steps_ + step];
    }

    void set_power_kwh(int node, int step, double kwh) {
        power_[static_cast<std::size_t>(node) * n_steps_ + step] = kwh;
    }
    void set_raw_trips(int from, int to, int step, double count) {
        trips_raw_[(static_cast<std::size_t>(from) * n_nodes_ + to) * n_steps_ + step] = count;
    }

private:
    int n_nodes_ = 0;
    int n_steps_ = 0;
    double mobility_scale_ = 10.0;
    std::vector<double> power_;
    std::vector<double> trips_raw_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks nonnegativity and coverage: the profile must span the simulated
/// steps plus one full optimization horizon.
ValidationReport validate_demand(const DemandProfile& profile, const SoeGrid& grid);

}  // namespace pevfleet

#endif
