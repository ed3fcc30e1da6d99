#include "pevfleet/soe_grid.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace pevfleet {

void SoeGrid::validate() const {
    if (n_bins < 2) {
        throw ConfigError("grid: n_bins must be at least 2, got " + std::to_string(n_bins));
    }
    if (!(dt_minutes > 0.0)) {
        throw ConfigError("grid: dt_minutes must be positive");
    }
    if (horizon_steps < 1) {
        throw ConfigError("grid: horizon_steps must be at least 1");
    }
    if (n_sim_steps < 0) {
        throw ConfigError("grid: n_sim_steps must be nonnegative");
    }
    const double span = dx * (n_bins - 1);
    if (std::abs(span - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "grid: dx*(n_bins-1) must equal 1.0, got " << span;
        throw ConfigError(os.str());
    }
}

SoeGrid make_grid(int n_bins, double dt_minutes, int horizon_steps, int n_sim_steps) {
    SoeGrid g;
    g.n_bins = n_bins;
    g.dx = 1.0 / (n_bins - 1);
    g.dt_minutes = dt_minutes;
    g.horizon_steps = horizon_steps;
    g.n_sim_steps = n_sim_steps;
    g.validate();
    return g;
}

bool is_known_node_label(const std::string& label) {
    static const std::array<const char*, 3> known = {"I", "II", "IV"};
    for (const char* k : known) {
        if (label == k) return true;
    }
    return false;
}

void validate_node_labels(const std::vector<std::string>& labels) {
    if (labels.empty()) {
        throw ScenarioError("nodes: at least one node label required");
    }
    for (std::size_t a = 0; a < labels.size(); ++a) {
        if (!is_known_node_label(labels[a])) {
            throw ScenarioError("nodes: unknown node label '" + labels[a] + "'");
        }
        for (std::size_t b = a + 1; b < labels.size(); ++b) {
            if (labels[a] == labels[b]) {
                throw ScenarioError("nodes: duplicate node label '" + labels[a] + "'");
            }
        }
    }
}

FleetState::FleetState(int n_nodes, int n_bins)
    : n_nodes_(n_nodes),
      n_bins_(n_bins),
      charging_(static_cast<std::size_t>(n_nodes) * n_bins, 0.0),
      idle_(static_cast<std::size_t>(n_nodes) * n_bins, 0.0),
      discharging_(static_cast<std::size_t>(n_nodes) * n_bins, 0.0) {
    if (n_nodes < 1 || n_bins < 2) {
        throw DimensionError("FleetState: need n_nodes >= 1 and n_bins >= 2");
    }
}

void FleetState::require_shape(int n_nodes, int n_bins) const {
    if (n_nodes_ != n_nodes || n_bins_ != n_bins) {
        std::ostringstream os;
        os << "state shape (" << n_nodes_ << "x" << n_bins_ << ") does not match expected ("
           << n_nodes << "x" << n_bins << ")";
        throw DimensionError(os.str());
    }
}

void FleetState::enforce_density_floor() {
    auto fix = [](std::vector<double>& values, const char* name) {
        for (double& v : values) {
            if (v < 0.0) {
                if (v < kDensityFloor) {
                    std::ostringstream os;
                    os << name << " density " << v << " below the " << kDensityFloor
                       << " floor";
                    throw InfeasibleControlError(os.str());
                }
                v = 0.0;
            }
        }
    };
    fix(charging_, "charging");
    fix(idle_, "idle");
    fix(discharging_, "discharging");
}

double total_vehicles(const FleetState& state, const SoeGrid& grid) {
    state.require_shape(state.n_nodes(), grid.n_bins);
    double sum = 0.0;
    for (int i = 0; i < state.n_nodes(); ++i) {
        for (int k = 0; k < state.n_bins(); ++k) {
            sum += (state.charging(i, k) + state.idle(i, k) + state.discharging(i, k)) * grid.dx;
        }
    }
    for (const TransitEntry& e : state.in_transit()) {
        sum += e.vehicle_count;
    }
    return sum;
}

FleetState init_uniform_idle(double fleet_size, const SoeGrid& grid, int n_nodes,
                             const std::vector<double>& weights) {
    grid.validate();
    if (fleet_size < 0.0) {
        throw ValidationError("init_uniform_idle: fleet_size must be nonnegative");
    }
    if (static_cast<int>(weights.size()) != n_nodes) {
        throw DimensionError("init_uniform_idle: one weight per node required");
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("init_uniform_idle: weights must be nonnegative");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "init_uniform_idle: weights sum to " << wsum << ", expected 1";
        throw ValidationError(os.str());
    }

    FleetState state(n_nodes, grid.n_bins);
    // fleet share / (n_bins * dx) makes total_vehicles invert this exactly.
    const double denom = grid.n_bins * grid.dx;
    for (int i = 0; i < n_nodes; ++i) {
        const double density = fleet_size * weights[i] / denom;
        for (int k = 0; k < grid.n_bins; ++k) {
            state.idle(i, k) = density;
        }
    }
    return state;
}

}  // namespace pevfleet
