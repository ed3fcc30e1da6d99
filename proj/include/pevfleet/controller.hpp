#ifndef PEVFLEET_CONTROLLER_HPP
#define PEVFLEET_CONTROLLER_HPP

#include <functional>
#include <string>
#include <vector>

#include "pevfleet/dynamics.hpp"
#include "pevfleet/scenario.hpp"

namespace pevfleet {

/// Everything recorded about one applied step: the census after the step,
/// what was served, and the step's revenue decomposition.
struct StepRecord {
    int step = 0;
    StateCensus census;                    // state after applying this step
    std::vector<double> served_power_kwh;  // per node
    std::vector<double> charging_kwh;      // per node
    std::vector<double> served_trips;      // per ordered node pair
    double revenue_trips = 0.0;
    double revenue_v2b = 0.0;
    double cost_g2v = 0.0;
    double lp_objective = 0.0;
    int lp_iterations = 0;

    double step_total() const { return revenue_trips + revenue_v2b - cost_g2v; }
};

struct RunLog {
    std::string scenario_label;
    std::vector<std::string> nodes;
    double fleet_size = 0.0;
    StateCensus initial_census;
    std::vector<StepRecord> steps;
    double total_trips_revenue = 0.0;
    double total_v2b_revenue = 0.0;
    double total_g2v_cost = 0.0;
    double initial_vehicles = 0.0;
    double final_vehicles = 0.0;
    double wall_seconds = 0.0;

    double total_revenue() const {
        return total_trips_revenue + total_v2b_revenue - total_g2v_cost;
    }
};

struct RunOptions {
    // Replaying the optimizer's first-step flows through the forward
    // simulator must land on the optimizer's own next-step densities; the
    // check is cheap and on by default.
    bool check_lp_consistency = true;
    std::function<void(int step, int n_steps)> progress;
};

/// Receding-horizon loop: build the window, solve, apply the first step,
/// advance, log. Aborts with SolverError (step number plus diagnostics) if
/// any window fails to solve to optimality.
RunLog run(const ScenarioSpec& scenario, const RunOptions& options = {});

/// Independent runs over fleet sizes; everything else identical. `jobs`
/// bounds how many run concurrently.
std::vector<RunLog> sweep(const ScenarioSpec& scenario, const std::vector<double>& fleet_sizes,
                          int jobs = 1, const RunOptions& options = {});

}  // namespace pevfleet

#endif
