#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pevfleet/reporting.hpp"
#include "support/scenario_fixtures.hpp"

using namespace pevfleet;
using pevfleet::testing::fill_power_demand;
using pevfleet::testing::fill_trip_demand;
using pevfleet::testing::tiny_scenario;
namespace fs = std::filesystem;

namespace {

RevenueReport synthetic_report(double fleet, double trips, double v2b, double g2v) {
    RevenueReport r;
    r.fleet_size = fleet;
    r.trips_revenue = trips;
    r.v2b_revenue = v2b;
    r.g2v_cost = g2v;
    r.total = trips + v2b - g2v;
    return r;
}

}  // namespace

TEST_CASE("zero-demand report is all zeros") {
    ScenarioSpec spec = tiny_scenario({"I"}, 6, 10.0, 2, 4);
    spec.fleet_size = 25.0;
    spec.validate();
    const RunLog log = run(spec);
    const RevenueReport r = revenue_report(log, spec);
    CHECK(r.total == 0.0);
    CHECK(r.max_possible == 0.0);
    CHECK(r.unserved_kwh[0] == 0.0);
    CHECK(r.unserved_trips[0] == 0.0);
}

TEST_CASE("decomposition identities hold on a live run") {
    ScenarioSpec spec = tiny_scenario({"I", "II"}, 6, 10.0, 3, 10);
    spec.prices.outage_price_per_kwh = {18.0, 11.0};
    spec.prices.trip_prices.assign(4, TripPrice{20.0, 8.0});
    fill_power_demand(&spec, 0, 9.0);
    fill_power_demand(&spec, 1, 14.0);
    fill_trip_demand(&spec, 0, 1, 2.0);
    fill_trip_demand(&spec, 1, 1, 1.0);
    spec.fleet_size = 80.0;
    spec.validate();

    const RunLog log = run(spec);
    const RevenueReport r = revenue_report(log, spec);
    CHECK(r.total ==
          doctest::Approx(r.trips_revenue + r.v2b_revenue - r.g2v_cost).epsilon(1e-12));
    CHECK(r.total <= r.max_possible + 1e-6);
    for (int i = 0; i < 2; ++i) {
        CHECK(r.served_kwh[i] + r.unserved_kwh[i] ==
              doctest::Approx(r.demanded_kwh[i]).epsilon(1e-9));
        CHECK(r.served_trips[i] + r.unserved_trips[i] ==
              doctest::Approx(r.demanded_trips[i]).epsilon(1e-9));
        CHECK(r.unserved_kwh[i] >= -1e-9);
        CHECK(r.unserved_trips[i] >= -1e-9);
    }
    CHECK(r.total_per_vehicle == doctest::Approx(r.total / 80.0));
}

TEST_CASE("serving everything with no charging reaches the maximum") {
    // Plenty of well-charged vehicles, a little trip demand, no power demand:
    // every request is served and nothing needs to charge.
    ScenarioSpec spec = tiny_scenario({"I"}, 6, 10.0, 3, 6);
    spec.prices.trip_prices[0] = TripPrice{24.0, 9.0};
    fill_trip_demand(&spec, 0, 0, 1.5);
    spec.fleet_size = 120.0;
    spec.validate();

    const RunLog log = run(spec);
    const RevenueReport r = revenue_report(log, spec);
    CHECK(r.max_possible == doctest::Approx(9.0 * 1.5 * 6).epsilon(1e-9));
    CHECK(r.total == doctest::Approx(r.max_possible).epsilon(1e-9));
    CHECK(r.g2v_cost == 0.0);
    CHECK(r.unserved_trips[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("annualization structure") {
    SUBCASE("no extreme days and no extreme outage revenue means no change") {
        const RevenueReport ext = synthetic_report(100.0, 5000.0, 0.0, 40.0);
        const RevenueReport mod = synthetic_report(100.0, 5000.0, 0.0, 40.0);
        const AnnualizationTable t = annualize(ext, mod, {0, 10}, 100.0);
        CHECK(t.rows[0].new_revenue_per_vehicle == doctest::Approx(0.0));
        CHECK(t.rows[1].new_revenue_per_vehicle == doctest::Approx(0.0));
    }
    SUBCASE("hand-computed slope") {
        // Extreme day is worth $150 more per vehicle than a moderate day.
        const RevenueReport ext = synthetic_report(10.0, 2000.0, 1500.0, 0.0);
        const RevenueReport mod = synthetic_report(10.0, 2000.0, 0.0, 0.0);
        const AnnualizationTable t = annualize(ext, mod, {16}, 10.0);
        CHECK(t.slope_per_vehicle_per_day == doctest::Approx(150.0));
        CHECK(t.rows[0].new_revenue_per_vehicle == doctest::Approx(2400.0));
        const double baseline = 365.0 * 2000.0;
        CHECK(t.rows[0].percent_increase ==
              doctest::Approx(100.0 * 16.0 * 1500.0 / baseline));
    }
    SUBCASE("rows are affine in the day count") {
        const RevenueReport ext = synthetic_report(50.0, 900.0, 700.0, 25.0);
        const RevenueReport mod = synthetic_report(50.0, 880.0, 3.0, 20.0);
        const AnnualizationTable t = annualize(ext, mod, {10, 12, 14, 16, 18, 20}, 50.0);
        for (std::size_t r = 1; r < t.rows.size(); ++r) {
            const double diff = t.rows[r].new_revenue_per_vehicle -
                                t.rows[r - 1].new_revenue_per_vehicle;
            CHECK(diff == doctest::Approx(2.0 * t.slope_per_vehicle_per_day).epsilon(1e-9));
        }
    }
    SUBCASE("mismatched fleet sizes are rejected") {
        const RevenueReport ext = synthetic_report(10.0, 1.0, 1.0, 0.0);
        const RevenueReport mod = synthetic_report(20.0, 1.0, 0.0, 0.0);
        CHECK_THROWS_AS(annualize(ext, mod, {10}, 10.0), ValidationError);
    }
}

TEST_CASE("two-significant-figure rounding") {
    CHECK(round_to_two_significant(1432.0) == doctest::Approx(1400.0));
    CHECK(round_to_two_significant(2567.0) == doctest::Approx(2600.0));
    CHECK(round_to_two_significant(0.0) == 0.0);
    CHECK(round_to_two_significant(-0.0734) == doctest::Approx(-0.073));
}

TEST_CASE("emitted files") {
    const fs::path dir = fs::temp_directory_path() / "pevfleet_tests" / "emit";
    fs::remove_all(dir);

    ScenarioSpec spec = tiny_scenario({"I"}, 6, 10.0, 2, 5);
    spec.prices.outage_price_per_kwh = {10.0};
    fill_power_demand(&spec, 0, 6.0);
    spec.fleet_size = 30.0;
    spec.validate();

    SUBCASE("empty log emits headers only") {
        RunLog empty;
        empty.scenario_label = spec.label;
        empty.nodes = spec.nodes;
        empty.fleet_size = spec.fleet_size;
        const RevenueReport r = revenue_report(empty, spec);
        emit_outputs(r, empty, spec, dir.string());
        std::ifstream ts(dir / "state_timeseries.csv");
        std::string line;
        REQUIRE(std::getline(ts, line));
        CHECK(line == "step,charging,idle,discharging,transit_pax,transit_empty");
        CHECK_FALSE(std::getline(ts, line));
    }

    SUBCASE("live run emits consistent tables") {
        const RunLog log = run(spec);
        const RevenueReport r = revenue_report(log, spec);
        const AnnualizationTable t = annualize(r, r, {10, 12}, spec.fleet_size);
        const auto written = emit_outputs(r, log, spec, dir.string(), t);
        CHECK(written.size() == 6);

        // Census rows sum to the fleet size each step.
        std::ifstream ts(dir / "state_timeseries.csv");
        std::string line;
        REQUIRE(std::getline(ts, line));
        int rows = 0;
        while (std::getline(ts, line)) {
            std::istringstream is(line);
            std::string field;
            std::getline(is, field, ',');
            double sum = 0.0;
            while (std::getline(is, field, ',')) sum += std::stod(field);
            CHECK(sum == doctest::Approx(30.0).epsilon(1e-9));
            ++rows;
        }
        CHECK(rows == 5);
        CHECK(fs::exists(dir / "annualization.csv"));
        CHECK(fs::exists(dir / "plot_manifest.json"));
        CHECK(fs::exists(dir / "report.json"));
    }
}
