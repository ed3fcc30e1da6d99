#include "pevfleet/controller.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include "pevfleet/dispatch_lp.hpp"
#include "pevfleet/simplex.hpp"

namespace pevfleet {

namespace {

void check_consistency(const FleetState& next, const std::vector<double>& x,
                       const VariableIndex& ix, int step) {
    double worst = 0.0;
    for (int i = 0; i < ix.n_nodes(); ++i) {
        for (int k = 0; k < ix.n_bins(); ++k) {
            const double du =
                std::abs(next.charging(i, k) - x[ix.density(VarKind::Charging, i, k, 1)]);
            const double dv = std::abs(next.idle(i, k) - x[ix.density(VarKind::Idle, i, k, 1)]);
            const double dw =
                std::abs(next.discharging(i, k) - x[ix.density(VarKind::Discharging, i, k, 1)]);
            worst = std::max({worst, du, dv, dw});
        }
    }
    if (worst > 1e-6) {
        std::ostringstream os;
        os << "step " << step << ": forward simulation deviates from the window solution by "
           << worst;
        throw SolverError(os.str());
    }
}

}  // namespace

RunLog run(const ScenarioSpec& scenario, const RunOptions& options) {
    scenario.validate();
    const auto start_time = std::chrono::steady_clock::now();

    const SoeGrid& grid = scenario.grid;
    const int n = scenario.n_nodes();
    const double dt = grid.dt_minutes;
    const double dx = grid.dx;
    const double kwh_per_density = scenario.rates.power_kw * dx * dt / 60.0;

    FleetState state =
        init_uniform_idle(scenario.fleet_size, grid, n, scenario.initial_weights);

    RunLog log;
    log.scenario_label = scenario.label;
    log.nodes = scenario.nodes;
    log.fleet_size = scenario.fleet_size;
    log.initial_census = state_census(state, grid);
    log.initial_vehicles = total_vehicles(state, grid);
    log.steps.reserve(grid.n_sim_steps);

    SimplexEngine engine;
    SolverOptions solver_options;

    for (int t = 0; t < grid.n_sim_steps; ++t) {
        DispatchLp window = build_lp(state, scenario, t, grid, scenario.rates);
        LpSolution sol = engine.solve(window.problem, solver_options);
        if (!sol.optimal()) {
            std::ostringstream os;
            os << "window solve failed at step " << t << ": " << sol.diagnostics;
            throw SolverError(os.str());
        }

        const ControlVector ctrl = extract_controls(sol.x, window.index);
        FleetState next = step(state, ctrl, scenario.rates, grid, scenario.od, t);
        if (options.check_lp_consistency) {
            check_consistency(next, sol.x, window.index, t);
        }

        StepRecord rec;
        rec.step = t;
        rec.census = state_census(next, grid);
        rec.served_power_kwh.resize(n);
        rec.charging_kwh.resize(n);
        rec.served_trips.assign(static_cast<std::size_t>(n) * n, 0.0);
        rec.lp_objective = sol.objective;
        rec.lp_iterations = sol.iterations;
        for (int i = 0; i < n; ++i) {
            double w_sum = 0.0, u_sum = 0.0;
            for (int k = 0; k < grid.n_bins; ++k) {
                w_sum += next.discharging(i, k);
                u_sum += next.charging(i, k);
            }
            rec.served_power_kwh[i] = kwh_per_density * w_sum;
            rec.charging_kwh[i] = kwh_per_density * u_sum;
            rec.revenue_v2b +=
                scenario.prices.outage_price_per_kwh[i] * rec.served_power_kwh[i];
            rec.cost_g2v += scenario.prices.grid_price_per_kwh * rec.charging_kwh[i];
            for (int j = 0; j < n; ++j) {
                double trips = 0.0;
                for (int k = 0; k < grid.n_bins; ++k) trips += ctrl.trips_pax(i, j, k);
                trips *= dx * dt;
                rec.served_trips[static_cast<std::size_t>(i) * n + j] = trips;
                rec.revenue_trips += scenario.effective_fare(i, j) * trips;
            }
        }
        log.total_trips_revenue += rec.revenue_trips;
        log.total_v2b_revenue += rec.revenue_v2b;
        log.total_g2v_cost += rec.cost_g2v;
        log.steps.push_back(std::move(rec));

        const double now_total = total_vehicles(next, grid);
        if (std::abs(now_total - log.initial_vehicles) >
            1e-6 * std::max(1.0, log.initial_vehicles)) {
            std::ostringstream os;
            os << "vehicle conservation broken at step " << t << ": " << log.initial_vehicles
               << " -> " << now_total;
            throw SolverError(os.str());
        }

        state = std::move(next);
        if (options.progress) options.progress(t + 1, grid.n_sim_steps);
    }

    log.final_vehicles = total_vehicles(state, grid);
    log.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return log;
}

std::vector<RunLog> sweep(const ScenarioSpec& scenario, const std::vector<double>& fleet_sizes,
                          int jobs, const RunOptions& options) {
    if (fleet_sizes.empty()) {
        throw ValidationError("sweep: at least one fleet size required");
    }
    std::vector<RunLog> logs(fleet_sizes.size());
    if (jobs <= 1) {
        for (std::size_t idx = 0; idx < fleet_sizes.size(); ++idx) {
            ScenarioSpec variant = scenario;
            variant.fleet_size = fleet_sizes[idx];
            logs[idx] = run(variant, options);
        }
        return logs;
    }
    std::size_t next_job = 0;
    while (next_job < fleet_sizes.size()) {
        const std::size_t batch =
            std::min<std::size_t>(jobs, fleet_sizes.size() - next_job);
        std::vector<std::future<RunLog>> futures;
        futures.reserve(batch);
        for (std::size_t b = 0; b < batch; ++b) {
            ScenarioSpec variant = scenario;
            variant.fleet_size = fleet_sizes[next_job + b];
            futures.push_back(std::async(std::launch::async,
                                         [variant, options]() { return run(variant, options); }));
        }
        for (std::size_t b = 0; b < batch; ++b) {
            logs[next_job + b] = futures[b].get();
        }
        next_job += batch;
    }
    return logs;
}

}  // namespace pevfleet
