#include "pevfleet/reporting.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pevfleet/text.hpp"

namespace pevfleet {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

double round_to_two_significant(double value) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    const double mag = std::pow(10.0, std::floor(std::log10(std::abs(value))) - 1.0);
    return std::round(value / mag) * mag;
}

RevenueReport revenue_report(const RunLog& log, const ScenarioSpec& scenario) {
    const int n = scenario.n_nodes();
    RevenueReport report;
    report.scenario_label = log.scenario_label;
    report.fleet_size = log.fleet_size;
    report.g2v_cost = log.total_g2v_cost;
    report.trips_revenue = log.total_trips_revenue;
    report.v2b_revenue = log.total_v2b_revenue;
    report.total = log.total_revenue();

    report.demanded_kwh.assign(n, 0.0);
    report.served_kwh.assign(n, 0.0);
    report.unserved_kwh.assign(n, 0.0);
    report.demanded_trips.assign(n, 0.0);
    report.served_trips.assign(n, 0.0);
    report.unserved_trips.assign(n, 0.0);

    const int n_steps = static_cast<int>(log.steps.size());
    for (int t = 0; t < n_steps; ++t) {
        const StepRecord& rec = log.steps[t];
        for (int i = 0; i < n; ++i) {
            const double d_kwh = scenario.demand.power_kwh(i, t);
            report.demanded_kwh[i] += d_kwh;
            report.served_kwh[i] += rec.served_power_kwh[i];
            report.max_possible += d_kwh * scenario.prices.outage_price_per_kwh[i];
            for (int j = 0; j < n; ++j) {
                const double d_trips = scenario.demand.trips(i, j, t);
                report.demanded_trips[i] += d_trips;
                report.served_trips[i] += rec.served_trips[static_cast<std::size_t>(i) * n + j];
                report.max_possible += d_trips * scenario.effective_fare(i, j);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        report.unserved_kwh[i] = report.demanded_kwh[i] - report.served_kwh[i];
        report.unserved_trips[i] = report.demanded_trips[i] - report.served_trips[i];
    }

    if (log.fleet_size > 0.0) {
        report.g2v_cost_per_vehicle = report.g2v_cost / log.fleet_size;
        report.trips_revenue_per_vehicle = report.trips_revenue / log.fleet_size;
        report.v2b_revenue_per_vehicle = report.v2b_revenue / log.fleet_size;
        report.total_per_vehicle = report.total / log.fleet_size;
        report.max_possible_per_vehicle = report.max_possible / log.fleet_size;
    }
    return report;
}

AnnualizationTable annualize(const RevenueReport& extreme_report,
                             const RevenueReport& moderate_report,
                             const std::vector<int>& extreme_days_list, double fleet_size) {
    if (extreme_report.fleet_size != fleet_size || moderate_report.fleet_size != fleet_size) {
        std::ostringstream os;
        os << "annualize: reports are for fleet sizes " << extreme_report.fleet_size << " and "
           << moderate_report.fleet_size << ", expected " << fleet_size;
        throw ValidationError(os.str());
    }
    AnnualizationTable table;
    table.fleet_size = fleet_size;
    // Moderate days stand in for mobility-only operation; the baseline year
    // is 365 of them.
    const double baseline = 365.0 * moderate_report.total;
    table.slope_per_vehicle_per_day =
        fleet_size > 0.0 ? (extreme_report.total - moderate_report.total) / fleet_size : 0.0;
    for (int days : extreme_days_list) {
        if (days < 0 || days > 365) {
            throw ValidationError("annualize: extreme-day count must be within [0, 365]");
        }
        AnnualizationRow row;
        row.extreme_days = days;
        row.annual_revenue =
            days * extreme_report.total + (365.0 - days) * moderate_report.total;
        row.new_revenue_per_vehicle =
            fleet_size > 0.0 ? (row.annual_revenue - baseline) / fleet_size : 0.0;
        row.percent_increase =
            baseline != 0.0 ? 100.0 * (row.annual_revenue - baseline) / baseline : 0.0;
        table.rows.push_back(row);
    }
    return table;
}

namespace {

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string revenue_csv(const RevenueReport& r) {
    std::ostringstream os;
    os << "component,dollars,dollars_per_vehicle,dollars_per_vehicle_2sf\n";
    auto row = [&](const char* name, double fleet_total, double per_vehicle) {
        os << name << ',' << format_double(fleet_total) << ',' << format_double(per_vehicle)
           << ',' << format_double(round_to_two_significant(per_vehicle)) << '\n';
    };
    row("G2V", r.g2v_cost, r.g2v_cost_per_vehicle);
    row("Trips", r.trips_revenue, r.trips_revenue_per_vehicle);
    row("V2B", r.v2b_revenue, r.v2b_revenue_per_vehicle);
    row("Total", r.total, r.total_per_vehicle);
    row("Max", r.max_possible, r.max_possible_per_vehicle);
    return os.str();
}

std::string timeseries_csv(const RunLog& log) {
    std::ostringstream os;
    os << "step,charging,idle,discharging,transit_pax,transit_empty\n";
    for (const StepRecord& rec : log.steps) {
        os << rec.step << ',' << format_double(rec.census.charging) << ','
           << format_double(rec.census.idle) << ',' << format_double(rec.census.discharging)
           << ',' << format_double(rec.census.transit_pax) << ','
           << format_double(rec.census.transit_empty) << '\n';
    }
    return os.str();
}

std::string unserved_csv(const RunLog& log, const ScenarioSpec& scenario) {
    const int n = scenario.n_nodes();
    std::ostringstream os;
    os << "node,step,demand_kwh,served_kwh,unserved_kwh,demand_trips,served_trips,"
          "unserved_trips\n";
    for (const StepRecord& rec : log.steps) {
        for (int i = 0; i < n; ++i) {
            const double d_kwh = scenario.demand.power_kwh(i, rec.step);
            double d_trips = 0.0, s_trips = 0.0;
            for (int j = 0; j < n; ++j) {
                d_trips += scenario.demand.trips(i, j, rec.step);
                s_trips += rec.served_trips[static_cast<std::size_t>(i) * n + j];
            }
            os << scenario.nodes[i] << ',' << rec.step << ',' << format_double(d_kwh) << ','
               << format_double(rec.served_power_kwh[i]) << ','
               << format_double(d_kwh - rec.served_power_kwh[i]) << ','
               << format_double(d_trips) << ',' << format_double(s_trips) << ','
               << format_double(d_trips - s_trips) << '\n';
        }
    }
    return os.str();
}

}  // namespace

std::string annualization_to_csv(const AnnualizationTable& table) {
    std::ostringstream os;
    os << "extreme_days,annual_revenue,new_revenue_per_vehicle,new_revenue_per_vehicle_2sf,"
          "percent_increase,percent_increase_2sf\n";
    for (const AnnualizationRow& row : table.rows) {
        os << row.extreme_days << ',' << format_double(row.annual_revenue) << ','
           << format_double(row.new_revenue_per_vehicle) << ','
           << format_double(round_to_two_significant(row.new_revenue_per_vehicle)) << ','
           << format_double(row.percent_increase) << ','
           << format_double(round_to_two_significant(row.percent_increase)) << '\n';
    }
    return os.str();
}

namespace {

std::string report_json(const RevenueReport& r, const RunLog& log) {
    ordered_json j;
    j["scenario"] = r.scenario_label;
    j["fleet_size"] = r.fleet_size;
    j["steps"] = log.steps.size();
    j["totals"] = {{"g2v_cost", r.g2v_cost},
                   {"trips_revenue", r.trips_revenue},
                   {"v2b_revenue", r.v2b_revenue},
                   {"total", r.total},
                   {"max_possible", r.max_possible}};
    j["per_vehicle"] = {{"g2v_cost", r.g2v_cost_per_vehicle},
                        {"trips_revenue", r.trips_revenue_per_vehicle},
                        {"v2b_revenue", r.v2b_revenue_per_vehicle},
                        {"total", r.total_per_vehicle},
                        {"max_possible", r.max_possible_per_vehicle}};
    j["unserved"] = {{"kwh", r.unserved_kwh}, {"trips", r.unserved_trips}};
    j["wall_seconds"] = log.wall_seconds;
    return j.dump(2) + "\n";
}

std::string plot_manifest_json(const ScenarioSpec& scenario, bool with_annualization) {
    ordered_json series = ordered_json::array();
    series.push_back({{"file", "state_timeseries.csv"},
                      {"x", "step"},
                      {"x_unit", "step of " + format_double(scenario.grid.dt_minutes) + " min"},
                      {"y", {"charging", "idle", "discharging", "transit_pax", "transit_empty"}},
                      {"y_unit", "vehicles"},
                      {"description", "fleet composition by state over the day"}});
    series.push_back({{"file", "revenue_decomposition.csv"},
                      {"x", "component"},
                      {"y", {"dollars", "dollars_per_vehicle"}},
                      {"y_unit", "USD"},
                      {"description",
                       "revenue decomposition; G2V is a cost, Total = Trips + V2B - G2V"}});
    series.push_back({{"file", "unserved.csv"},
                      {"x", "step"},
                      {"group_by", "node"},
                      {"y", {"demand_kwh", "served_kwh", "unserved_kwh", "demand_trips",
                             "served_trips", "unserved_trips"}},
                      {"y_unit", "kWh / trips"},
                      {"description", "served vs. demanded power and trips, per node"}});
    if (with_annualization) {
        series.push_back({{"file", "annualization.csv"},
                          {"x", "extreme_days"},
                          {"y", {"new_revenue_per_vehicle", "percent_increase"}},
                          {"y_unit", "USD/vehicle/year and percent"},
                          {"description",
                           "yearly value of outage service vs. count of extreme days"}});
    }
    ordered_json j;
    j["scenario"] = scenario.label;
    j["series"] = series;
    return j.dump(2) + "\n";
}

}  // namespace

std::vector<std::string> emit_outputs(const RevenueReport& report, const RunLog& log,
                                      const ScenarioSpec& scenario, const std::string& out_dir,
                                      const std::optional<AnnualizationTable>& annualization) {
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    std::vector<std::string> written;
    auto emit = [&](const char* name, const std::string& content) {
        const fs::path p = dir / name;
        write_text(p, content);
        written.push_back(p.string());
    };
    emit("revenue_decomposition.csv", revenue_csv(report));
    emit("state_timeseries.csv", timeseries_csv(log));
    emit("unserved.csv", unserved_csv(log, scenario));
    emit("report.json", report_json(report, log));
    if (annualization) {
        emit("annualization.csv", annualization_to_csv(*annualization));
    }
    emit("plot_manifest.json", plot_manifest_json(scenario, annualization.has_value()));
    return written;
}

}  // namespace pevfleet
