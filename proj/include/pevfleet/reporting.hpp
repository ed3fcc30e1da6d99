#ifndef PEVFLEET_REPORTING_HPP
#define PEVFLEET_REPORTING_HPP

#include <optional>
#include <string>
#include <vector>

#include "pevfleet/controller.hpp"
#include "pevfleet/scenario.hpp"

namespace pevfleet {

/// Revenue decomposition of one run: charging cost (G2V), passenger revenue
/// (Trips), outage-power revenue (V2B), their total, and the ceiling given by
/// serving every request with free charging (Max).
struct RevenueReport {
    std::string scenario_label;
    double fleet_size = 0.0;
    double g2v_cost = 0.0;
    double trips_revenue = 0.0;
    double v2b_revenue = 0.0;
    double total = 0.0;
    double max_possible = 0.0;
    double g2v_cost_per_vehicle = 0.0;
    double trips_revenue_per_vehicle = 0.0;
    double v2b_revenue_per_vehicle = 0.0;
    double total_per_vehicle = 0.0;
    double max_possible_per_vehicle = 0.0;
    std::vector<double> demanded_kwh;    // per node, simulated steps only
    std::vector<double> served_kwh;      // per node
    std::vector<double> unserved_kwh;    // per node
    std::vector<double> demanded_trips;  // per origin node
    std::vector<double> served_trips;    // per origin node
    std::vector<double> unserved_trips;  // per origin node
};

RevenueReport revenue_report(const RunLog& log, const ScenarioSpec& scenario);

struct AnnualizationRow {
    int extreme_days = 0;
    double annual_revenue = 0.0;           // fleet-wide, $/year
    double new_revenue_per_vehicle = 0.0;  // vs. the mobility-only baseline
    double percent_increase = 0.0;
};

/// Yearly value of outage service: N extreme days plus (365-N) moderate days
/// against a baseline of 365 moderate (mobility-only) days. Rows are affine
/// in N with slope (extreme total - moderate total) per vehicle.
struct AnnualizationTable {
    double fleet_size = 0.0;
    double slope_per_vehicle_per_day = 0.0;
    std::vector<AnnualizationRow> rows;
};

AnnualizationTable annualize(const RevenueReport& extreme_report,
                             const RevenueReport& moderate_report,
                             const std::vector<int>& extreme_days_list, double fleet_size);

std::string annualization_to_csv(const AnnualizationTable& table);

/// Materializes the run outputs under `out_dir`: revenue_decomposition.csv,
/// state_timeseries.csv, unserved.csv, report.json, a plot-data manifest,
/// and annualization.csv when a table is supplied. Returns written paths.
std::vector<std::string> emit_outputs(const RevenueReport& report, const RunLog& log,
                                      const ScenarioSpec& scenario, const std::string& out_dir,
                                      const std::optional<AnnualizationTable>& annualization =
                                          std::nullopt);

/// Dollars rounded to two significant figures, the granularity used for the
/// per-vehicle columns in emitted tables (full precision is kept alongside).
double round_to_two_significant(double value);

}  // namespace pevfleet

#endif
