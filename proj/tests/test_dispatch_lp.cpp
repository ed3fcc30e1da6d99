#include <cmath>
#include <sstream>

#include "doctest.h"
#include "pevfleet/dispatch_lp.hpp"
#include "pevfleet/dynamics.hpp"
#include "pevfleet/simplex.hpp"
#include "support/scenario_fixtures.hpp"

using namespace pevfleet;
using pevfleet::testing::fill_power_demand;
using pevfleet::testing::fill_trip_demand;
using pevfleet::testing::tiny_scenario;

TEST_CASE("variable index is a bijection with the documented column count") {
    for (const bool explicit_mode : {false, true}) {
        const VariableIndex ix(3, 6, 5, explicit_mode);
        const int nbh = 3 * 6 * 5;
        const int expected = 3 * nbh + 2 * nbh + 2 * 3 * nbh * (explicit_mode ? 2 : 1);
        CHECK(ix.n_cols() == expected);
        for (int col = 0; col < ix.n_cols(); ++col) {
            const VarTag t = ix.tag(col);
            int back = -1;
            switch (t.kind) {
                case VarKind::Charging:
                case VarKind::Idle:
                case VarKind::Discharging:
                    back = ix.density(t.kind, t.from, t.bin, t.step);
                    break;
                case VarKind::FlowCharge: back = ix.flow_charge(t.from, t.bin, t.step); break;
                case VarKind::FlowDischarge:
                    back = ix.flow_discharge(t.from, t.bin, t.step);
                    break;
                case VarKind::TripPax: back = ix.trip_pax(t.from, t.to, t.bin, t.step); break;
                case VarKind::TripEmpty:
                    back = ix.trip_empty(t.from, t.to, t.bin, t.step);
                    break;
                case VarKind::ArrivalPax:
                    back = ix.arrival_pax(t.from, t.to, t.bin, t.step);
                    break;
                case VarKind::ArrivalEmpty:
                    back = ix.arrival_empty(t.from, t.to, t.bin, t.step);
                    break;
            }
            REQUIRE(back == col);
        }
    }
}

TEST_CASE("zero demand: doing nothing is optimal") {
    ScenarioSpec spec = tiny_scenario({"I", "II"}, 6, 10.0, 3, 2);
    spec.prices.outage_price_per_kwh = {15.0, 9.0};
    spec.fleet_size = 120.0;
    spec.validate();
    const FleetState s0 = init_uniform_idle(120.0, spec.grid, 2, {0.5, 0.5});
    const DispatchLp lp = build_lp(s0, spec, 0, spec.grid, spec.rates);
    const LpSolution sol = solve(lp.problem);
    REQUIRE(sol.optimal());
    CHECK(std::abs(sol.objective) < 1e-9);
    const ControlVector ctrl = extract_controls(sol.x, lp.index);
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 6; ++k) {
            CHECK(ctrl.idle_to_charge(i, k) == 0.0);
            CHECK(ctrl.idle_to_discharge(i, k) == 0.0);
        }
    }
}

TEST_CASE("single-node discharge window prices out exactly") {
    // 100 vehicles idle at full charge, one step, unconstrained power demand
    // at 20 $/kWh: everything discharges at 7 kW for 10 minutes.
    ScenarioSpec spec = tiny_scenario({"I"}, 6, 10.0, 1, 1);
    spec.prices.outage_price_per_kwh = {20.0};
    fill_power_demand(&spec, 0, 1e9);
    spec.fleet_size = 100.0;
    spec.validate();

    FleetState s0(1, 6);
    s0.idle(0, 5) = 100.0 / spec.grid.dx;

    const DispatchLp lp = build_lp(s0, spec, 0, spec.grid, spec.rates);
    const LpSolution sol = solve(lp.problem);
    REQUIRE(sol.optimal());
    CHECK(sol.objective == doctest::Approx(20.0 / 60.0 * 700.0 * 10.0).epsilon(1e-6));

    const ControlVector ctrl = extract_controls(sol.x, lp.index);
    CHECK(ctrl.idle_to_discharge(0, 5) ==
          doctest::Approx(s0.idle(0, 5) / spec.grid.dt_minutes).epsilon(1e-6));
    // Flow-size bound holds by construction.
    CHECK(ctrl.idle_to_discharge(0, 5) * spec.grid.dt_minutes <= s0.idle(0, 5) + 1e-6);

    const FleetState next =
        step(s0, ctrl, spec.rates, spec.grid, spec.od, 0);
    CHECK(state_census(next, spec.grid).discharging == doctest::Approx(100.0).epsilon(1e-6));
}

TEST_CASE("objective coefficients follow the price tables") {
    ScenarioSpec spec = tiny_scenario({"I", "II", "IV"}, 6, 10.0, 2, 2);
    spec.prices.outage_price_per_kwh = {20.0, 9.0, 15.0};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            spec.prices.trip_prices[i * 3 + j] = TripPrice{0.0, double(3 + i + j)};
        }
    }
    spec.prices.trip_prices[0] = TripPrice{25.0, 11.0};
    spec.fleet_size = 30.0;
    spec.validate();
    const FleetState s0 = init_uniform_idle(30.0, spec.grid, 3, {0.4, 0.3, 0.3});
    const DispatchLp lp = build_lp(s0, spec, 0, spec.grid, spec.rates);

    const double coef_unit = 7.0 * 0.2 * 10.0 / 60.0;  // power * dx * dt / 60
    for (int i = 0; i < 3; ++i) {
        const int col = lp.index.density(VarKind::Discharging, i, 2, 1);
        CHECK(lp.problem.objective(col) ==
              doctest::Approx(spec.prices.outage_price_per_kwh[i] * coef_unit).epsilon(1e-12));
        const int ucol = lp.index.density(VarKind::Charging, i, 2, 1);
        CHECK(lp.problem.objective(ucol) == doctest::Approx(-0.25 * coef_unit).epsilon(1e-12));
    }
    // Fare I->I of 11 $/trip at dx*dt trips per unit flow.
    const int dp = lp.index.trip_pax(0, 0, 3, 0);
    CHECK(lp.problem.objective(dp) == doctest::Approx(11.0 * 0.2 * 10.0).epsilon(1e-12));

    // Per-minute fare interpretation divides by the step length.
    spec.fare_mode = FareMode::PerMinute;
    const DispatchLp lp2 = build_lp(s0, spec, 0, spec.grid, spec.rates);
    CHECK(lp2.problem.objective(dp) == doctest::Approx(11.0 * 0.2).epsilon(1e-12));
}

TEST_CASE("departures are banned below the energy floor and at the window edge") {
    ScenarioSpec spec = tiny_scenario({"I", "II"}, 6, 10.0, 2, 2);
    // I->II takes 2 steps and 2 bins; II->I stays at 1 step, 1 bin.
    spec.od_raw[1] = OdRaw{2.2, 700.0};
    spec.requantize();
    spec.fleet_size = 40.0;
    spec.validate();
    REQUIRE(spec.od.at(0, 1).bins == 2);
    REQUIRE(spec.od.at(0, 1).steps == 2);

    const FleetState s0 = init_uniform_idle(40.0, spec.grid, 2, {0.5, 0.5});
    const DispatchLp lp = build_lp(s0, spec, 0, spec.grid, spec.rates);

    // Energy floor: bins below 2 are fixed to zero for I->II.
    CHECK(lp.problem.upper(lp.index.trip_pax(0, 1, 1, 0)) == 0.0);
    CHECK(lp.problem.upper(lp.index.trip_pax(0, 1, 2, 0)) == 0.0);  // 0+2 > H-1: edge ban
    // II->I at step 0 lands at step 1 <= H-1: allowed from bin 1 up.
    CHECK(lp.problem.upper(lp.index.trip_pax(1, 0, 0, 0)) == 0.0);
    CHECK(lp.problem.upper(lp.index.trip_pax(1, 0, 1, 0)) == kInf);
    // Any departure at the last window step would land beyond the window.
    CHECK(lp.problem.upper(lp.index.trip_pax(1, 0, 3, 1)) == 0.0);
}

TEST_CASE("pending ledger arrivals enter the idle equations as constants") {
    ScenarioSpec spec = tiny_scenario({"I"}, 3, 10.0, 4, 4);
    spec.fleet_size = 10.0;
    spec.validate();
    FleetState s0 = init_uniform_idle(10.0, spec.grid, 1, {1.0});
    s0.in_transit().push_back({0, 0, 2, 1, 7.0, true});

    const DispatchLp lp = build_lp(s0, spec, 0, spec.grid, spec.rates);
    int row = -1;
    for (std::size_t r = 0; r < lp.row_names.size(); ++r) {
        if (lp.row_names[r] == "stv_I_k1_s2") row = static_cast<int>(r);
    }
    REQUIRE(row >= 0);
    CHECK(lp.problem.rhs(row) == doctest::Approx(7.0 / spec.grid.dx).epsilon(1e-12));

    // A stale entry (arrival before the window) is rejected.
    s0.in_transit().front().arrival_step = -1;
    CHECK_THROWS_AS(build_lp(s0, spec, 0, spec.grid, spec.rates), ScenarioError);
}

TEST_CASE("explicit-arrival build matches the substituted form") {
    ScenarioSpec spec = tiny_scenario({"I", "II"}, 3, 10.0, 3, 3);
    spec.prices.outage_price_per_kwh = {8.0, 12.0};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            spec.prices.trip_prices[i * 2 + j] = TripPrice{10.0, 4.0 + i + 2 * j};
            fill_trip_demand(&spec, i, j, 2.0);
        }
        fill_power_demand(&spec, i, 25.0 + 10.0 * i);
    }
    spec.fleet_size = 80.0;
    spec.validate();

    FleetState s0 = init_uniform_idle(80.0, spec.grid, 2, {0.5, 0.5});
    s0.charging(0, 1) = 5.0;
    s0.discharging(1, 2) = 4.0;

    const DispatchLp sub = build_lp(s0, spec, 0, spec.grid, spec.rates);
    BuildOptions opts;
    opts.explicit_arrivals = true;
    const DispatchLp exp = build_lp(s0, spec, 0, spec.grid, spec.rates, opts);
    CHECK(exp.problem.n_cols() > sub.problem.n_cols());

    const LpSolution sub_sol = solve(sub.problem);
    const LpSolution exp_sol = solve(exp.problem);
    REQUIRE(sub_sol.optimal());
    REQUIRE(exp_sol.optimal());
    CHECK(sub_sol.objective ==
          doctest::Approx(exp_sol.objective).epsilon(1e-8));
    CHECK(sub_sol.objective > 0.0);
}

TEST_CASE("solutions respect demand caps and audit against the objective") {
    ScenarioSpec spec = tiny_scenario({"I", "II"}, 6, 10.0, 4, 4);
    spec.prices.outage_price_per_kwh = {18.0, 11.0};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            spec.prices.trip_prices[i * 2 + j] = TripPrice{12.0, 6.0};
            fill_trip_demand(&spec, i, j, 1.5);
        }
        fill_power_demand(&spec, i, 40.0);
    }
    spec.fleet_size = 200.0;
    spec.validate();
    const FleetState s0 = init_uniform_idle(200.0, spec.grid, 2, {0.5, 0.5});

    const DispatchLp lp = build_lp(s0, spec, 0, spec.grid, spec.rates);
    const LpSolution sol = solve(lp.problem);
    REQUIRE(sol.optimal());
    CHECK(sol.objective > 0.0);

    // Every <= row, demand caps included, holds at the solution.
    for (int r = 0; r < lp.problem.n_rows(); ++r) {
        if (lp.problem.sense(r) != RowSense::LessEq) continue;
        CHECK(lp.problem.row_activity(r, sol.x) <= lp.problem.rhs(r) + 1e-6);
    }

    // Recompute the objective from served power, trips, and charging.
    const int h = spec.grid.horizon_steps;
    const double coef = 7.0 * spec.grid.dx * spec.grid.dt_minutes / 60.0;
    double audit = 0.0;
    for (int s = 1; s <= h; ++s) {
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < 6; ++k) {
                audit += spec.prices.outage_price_per_kwh[i] * coef *
                         sol.x[lp.index.density(VarKind::Discharging, i, k, s)];
                audit -= spec.prices.grid_price_per_kwh * coef *
                         sol.x[lp.index.density(VarKind::Charging, i, k, s)];
            }
        }
    }
    for (int s = 0; s < h; ++s) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 6; ++k) {
                    audit += spec.effective_fare(i, j) * spec.grid.dx * spec.grid.dt_minutes *
                             sol.x[lp.index.trip_pax(i, j, k, s)];
                }
            }
        }
    }
    CHECK(audit == doctest::Approx(sol.objective).epsilon(1e-6));
}

TEST_CASE("missing demand coverage fails with a scenario error") {
    ScenarioSpec spec = tiny_scenario({"I"}, 6, 10.0, 5, 3);
    spec.fleet_size = 10.0;
    spec.validate();
    const FleetState s0 = init_uniform_idle(10.0, spec.grid, 1, {1.0});
    // Profile covers n_sim + horizon = 8 steps; a window at 7 would need 12.
    CHECK_THROWS_AS(build_lp(s0, spec, 7, spec.grid, spec.rates), ScenarioError);
}

TEST_CASE("lp text export is stable and well formed") {
    ScenarioSpec spec = tiny_scenario({"I"}, 3, 10.0, 2, 2);
    spec.prices.outage_price_per_kwh = {5.0};
    fill_power_demand(&spec, 0, 10.0);
    spec.fleet_size = 6.0;
    spec.validate();
    const FleetState s0 = init_uniform_idle(6.0, spec.grid, 1, {1.0});
    const DispatchLp lp = build_lp(s0, spec, 0, spec.grid, spec.rates);

    std::ostringstream a, b;
    write_lp_format(lp, spec.nodes, a);
    write_lp_format(lp, spec.nodes, b);
    const std::string text = a.str();
    CHECK(text == b.str());
    CHECK(text.find("Maximize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find("w_I_k1_s1") != std::string::npos);
    CHECK(text.find("fic_I_k0_s0 free") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}
