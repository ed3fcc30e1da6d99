#include "pevfleet/demand.hpp"

#include <sstream>

namespace pevfleet {

DemandProfile::DemandProfile(int n_nodes, int n_steps, double mobility_scale)
    : n_nodes_(n_nodes),
      n_steps_(n_steps),
      mobility_scale_(mobility_scale),
      power_(static_cast<std::size_t>(n_nodes) * n_steps, 0.0),
      trips_raw_(static_cast<std::size_t>(n_nodes) * n_nodes * n_steps, 0.0) {
    if (n_nodes < 1 || n_steps < 0) {
        throw DimensionError("demand: need at least one node and a nonnegative step count");
    }
    if (mobility_scale < 0.0) {
        throw ScenarioError("demand: mobility_scale must be nonnegative");
    }
}

ValidationReport validate_demand(const DemandProfile& profile, const SoeGrid& grid) {
    ValidationReport report;
    const int required = grid.n_sim_steps + grid.horizon_steps;
    if (profile.n_steps() < required) {
        std::ostringstream os;
        os << "demand covers " << profile.n_steps() << " steps; " << required
           << " required (n_sim_steps + horizon_steps)";
        report.violations.push_back(os.str());
    }
    for (int i = 0; i < profile.n_nodes(); ++i) {
        for (int t = 0; t < profile.n_steps(); ++t) {
            if (profile.power_kwh(i, t) < 0.0) {
                std::ostringstream os;
                os << "negative power demand at node " << i << ", step " << t;
                report.violations.push_back(os.str());
            }
        }
    }
    for (int i = 0; i < profile.n_nodes(); ++i) {
        for (int j = 0; j < profile.n_nodes(); ++j) {
            for (int t = 0; t < profile.n_steps(); ++t) {
                if (profile.raw_trips(i, j, t) < 0.0) {
                    std::ostringstream os;
                    os << "negative trip demand for pair (" << i << "," << j << "), step " << t;
                    report.violations.push_back(os.str());
                }
            }
        }
    }
    return report;
}

}  // namespace pevfleet
