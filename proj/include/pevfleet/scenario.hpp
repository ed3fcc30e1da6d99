#ifndef PEVFLEET_SCENARIO_HPP
#define PEVFLEET_SCENARIO_HPP

#include <string>
#include <vector>

#include "pevfleet/charge_rates.hpp"
#include "pevfleet/demand.hpp"
#include "pevfleet/od_table.hpp"
#include "pevfleet/prices.hpp"
#include "pevfleet/soe_grid.hpp"

namespace pevfleet {

enum class FareMode {
    PerTrip,    // fare column is a lump sum credited at departure (default)
    PerMinute,  // fare column read as $/minute of the dispatch step
};

enum class DemandVisibility {
    Window,    // demand readable only inside the active optimization window
    WholeRun,  // unrestricted reads (identical dispatch under roll-by-one)
};

/// Full description of one simulation case: network, grid, vehicle
/// parameters, trip table, prices, demand, fleet, and options.
struct ScenarioSpec {
    std::string label;
    std::vector<std::string> nodes;
    SoeGrid grid;
    ChargeRates rates;
    std::vector<OdRaw> od_raw;  // per ordered node pair, row-major
    OdTable od;                 // quantized against grid/rates (recorded here)
    PriceTable prices;
    DemandProfile demand;
    double fleet_size = 7500.0;
    std::vector<double> initial_weights;
    FareMode fare_mode = FareMode::PerTrip;
    DemandVisibility visibility = DemandVisibility::Window;
    QuantizationMode quantization = QuantizationMode::Conservative;
    unsigned long long seed = 0;  // used only when synthesizing profiles
    std::string power_csv_name = "demand_power.csv";
    std::string trips_csv_name = "demand_trips.csv";

    int n_nodes() const { return static_cast<int>(nodes.size()); }
    int node_index(const std::string& label) const;

    /// Fare actually credited per served trip under the configured mode.
    double effective_fare(int from, int to) const {
        const double f = prices.trip(from, to, n_nodes()).per_trip;
        return fare_mode == FareMode::PerTrip ? f : f / grid.dt_minutes;
    }

    /// Demand reads for the optimizer. Under Window visibility, offsets
    /// outside [0, horizon_steps) are a contract violation.
    double window_power_demand(int node, int window_start, int offset) const;
    double window_trip_demand(int from, int to, int window_start, int offset) const;

    void requantize() { od = OdTable::quantize(n_nodes(), od_raw, grid, rates, quantization); }
    void validate() const;
};

/// Parses a scenario document and its demand CSVs (paths relative to the
/// document). Returns a fully validated spec with quantization performed.
ScenarioSpec load_scenario(const std::string& path);

/// Canonical serialization: scenario.json plus the two demand CSVs under
/// `dir`. load_scenario(serialize_scenario(s)) reproduces s byte-for-byte.
std::string serialize_scenario(const ScenarioSpec& spec, const std::string& dir);

std::string scenario_to_json(const ScenarioSpec& spec);

/// Bundled scenarios: "paper-tables" (published tables, zero demand),
/// "extreme-2014-12-31" and "moderate-2014-09-29" (published tables plus
/// synthetic demand profiles shaped like the two outage days; the raw feeds
/// are not redistributable). `seed` perturbs only the synthetic profiles.
ScenarioSpec builtin_scenario(const std::string& name, unsigned long long seed = 0);

std::vector<std::string> builtin_scenario_names();

}  // namespace pevfleet

#endif
