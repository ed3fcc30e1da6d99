#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pevfleet/controller.hpp"
#include "pevfleet/dispatch_lp.hpp"
#include "pevfleet/reporting.hpp"
#include "pevfleet/scenario.hpp"
#include "pevfleet/simplex.hpp"
#include "pevfleet/text.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace pevfleet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitScenario = 3;
constexpr int kExitSolver = 4;
constexpr int kExitIo = 5;

struct CliConfig {
    std::string scenario;
    std::string out_dir;
    std::vector<double> fleet_sizes;
    int jobs = 1;
    unsigned long long seed = 0;
    int export_step = 0;
    bool explicit_arrivals = false;
    std::vector<int> extreme_days = {10, 12, 14, 16, 18, 20};
    std::string extreme_dir, moderate_dir;
    bool quiet = false;

    // Overrides; negative/empty means "keep the scenario's value".
    double dt_minutes = -1.0;
    double dx = -1.0;
    int horizon = -1;
    int sim_steps = -1;
    double fleet_size = -1.0;
    std::string visibility, fare_mode, quantization;
};

ScenarioSpec resolve_scenario(const CliConfig& cfg) {
    ScenarioSpec spec;
    if (cfg.scenario.rfind("builtin:", 0) == 0) {
        spec = builtin_scenario(cfg.scenario.substr(8), cfg.seed);
    } else {
        spec = load_scenario(cfg.scenario);
    }
    bool regrid = false;
    SoeGrid grid = spec.grid;
    if (cfg.dx > 0.0) {
        const double bins = 1.0 / cfg.dx + 1.0;
        grid.n_bins = static_cast<int>(bins + 0.5);
        grid.dx = 1.0 / (grid.n_bins - 1);
        if (std::abs(grid.dx - cfg.dx) > 1e-9) {
            throw ConfigError("--dx must divide the SOE axis exactly");
        }
        regrid = true;
    }
    if (cfg.dt_minutes > 0.0) { grid.dt_minutes = cfg.dt_minutes; regrid = true; }
    if (cfg.horizon > 0) { grid.horizon_steps = cfg.horizon; regrid = true; }
    if (cfg.sim_steps >= 0) { grid.n_sim_steps = cfg.sim_steps; regrid = true; }
    if (regrid) {
        grid.validate();
        spec.grid = grid;
    }
    if (cfg.fleet_size >= 0.0) spec.fleet_size = cfg.fleet_size;
    if (!cfg.visibility.empty()) {
        spec.visibility = cfg.visibility == "whole_run" ? DemandVisibility::WholeRun
                                                        : DemandVisibility::Window;
    }
    if (!cfg.fare_mode.empty()) {
        spec.fare_mode =
            cfg.fare_mode == "per_minute" ? FareMode::PerMinute : FareMode::PerTrip;
    }
    if (!cfg.quantization.empty()) {
        spec.quantization = cfg.quantization == "nearest" ? QuantizationMode::Nearest
                                                          : QuantizationMode::Conservative;
    }
    spec.rates.validate(spec.grid);
    spec.requantize();
    spec.validate();
    return spec;
}

fs::path output_root(const CliConfig& cfg, const std::string& label) {
    if (!cfg.out_dir.empty()) return fs::path(cfg.out_dir);
    const char* root = std::getenv("PEVFLEET_OUT_ROOT");
    return fs::path(root ? root : "pevfleet-out") / label;
}

void write_manifest(const fs::path& dir, const CliConfig& cfg, const ScenarioSpec& spec,
                    const std::string& command) {
    ordered_json j;
    j["command"] = command;
    j["scenario_source"] = cfg.scenario;
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    j["timestamp_utc"] = stamp;  // only nondeterministic field in any output
    j["jobs"] = cfg.jobs;
    j["fleet_sizes"] = cfg.fleet_sizes;
    j["resolved_scenario"] = ordered_json::parse(scenario_to_json(spec));
    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    if (!out) throw IoError("cannot write manifest under " + dir.string());
    out << j.dump(2) << "\n";
}

void print_summary(const RunLog& log, const RevenueReport& report) {
    std::cout << "scenario " << log.scenario_label << ", fleet "
              << format_double(log.fleet_size) << ": total $" << format_double(report.total)
              << " (trips $" << format_double(report.trips_revenue) << ", V2B $"
              << format_double(report.v2b_revenue) << ", G2V -$"
              << format_double(report.g2v_cost) << ", max $"
              << format_double(report.max_possible) << ") in "
              << format_double(log.wall_seconds) << "s\n";
}

int cmd_validate(const CliConfig& cfg) {
    resolve_scenario(cfg);
    std::cout << "OK\n";
    return kExitOk;
}

int cmd_run(const CliConfig& cfg) {
    const ScenarioSpec spec = resolve_scenario(cfg);
    const fs::path dir = output_root(cfg, spec.label);
    fs::create_directories(dir);
    RunOptions options;
    if (!cfg.quiet) {
        options.progress = [](int done, int total) {
            if (done == total || done % 24 == 0) {
                std::cerr << "step " << done << "/" << total << "\n";
            }
        };
    }
    const RunLog log = run(spec, options);
    const RevenueReport report = revenue_report(log, spec);
    emit_outputs(report, log, spec, dir.string());
    write_manifest(dir, cfg, spec, "run");
    print_summary(log, report);
    return kExitOk;
}

int cmd_sweep(const CliConfig& cfg) {
    const ScenarioSpec spec = resolve_scenario(cfg);
    if (cfg.fleet_sizes.empty()) {
        throw ValidationError("sweep: --fleet-sizes must list at least one size");
    }
    const fs::path dir = output_root(cfg, spec.label + "-sweep");
    fs::create_directories(dir);
    const std::vector<RunLog> logs = sweep(spec, cfg.fleet_sizes, cfg.jobs);
    for (std::size_t idx = 0; idx < logs.size(); ++idx) {
        ScenarioSpec variant = spec;
        variant.fleet_size = cfg.fleet_sizes[idx];
        const RevenueReport report = revenue_report(logs[idx], variant);
        std::ostringstream sub;
        sub << "fleet-" << format_double(cfg.fleet_sizes[idx]);
        emit_outputs(report, logs[idx], variant, (dir / sub.str()).string());
        print_summary(logs[idx], report);
    }
    write_manifest(dir, cfg, spec, "sweep");
    return kExitOk;
}

RevenueReport load_report(const fs::path& dir) {
    std::ifstream in(dir / "report.json");
    if (!in) throw IoError("cannot open " + (dir / "report.json").string());
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cannot parse " + (dir / "report.json").string() + ": " + e.what());
    }
    RevenueReport r;
    r.scenario_label = j.value("scenario", "");
    r.fleet_size = j.at("fleet_size").get<double>();
    const auto& totals = j.at("totals");
    r.g2v_cost = totals.at("g2v_cost").get<double>();
    r.trips_revenue = totals.at("trips_revenue").get<double>();
    r.v2b_revenue = totals.at("v2b_revenue").get<double>();
    r.total = totals.at("total").get<double>();
    r.max_possible = totals.at("max_possible").get<double>();
    return r;
}

int cmd_report(const CliConfig& cfg) {
    const RevenueReport extreme = load_report(cfg.extreme_dir);
    const RevenueReport moderate = load_report(cfg.moderate_dir);
    const AnnualizationTable table =
        annualize(extreme, moderate, cfg.extreme_days, extreme.fleet_size);
    const fs::path dir =
        cfg.out_dir.empty() ? fs::path(cfg.extreme_dir) : fs::path(cfg.out_dir);
    fs::create_directories(dir);
    std::ofstream out(dir / "annualization.csv", std::ios::trunc);
    if (!out) throw IoError("cannot write " + (dir / "annualization.csv").string());
    out << annualization_to_csv(table);
    std::cout << "annualized " << table.rows.size() << " scenarios, slope $"
              << format_double(table.slope_per_vehicle_per_day)
              << " per vehicle per extreme day\n";
    return kExitOk;
}

int cmd_export_lp(const CliConfig& cfg) {
    const ScenarioSpec spec = resolve_scenario(cfg);
    if (cfg.export_step < 0 || cfg.export_step >= spec.grid.n_sim_steps) {
        throw ValidationError("export-lp: --step must lie inside the simulation");
    }
    // Roll the controller forward to the requested step, then export.
    FleetState state = init_uniform_idle(spec.fleet_size, spec.grid, spec.n_nodes(),
                                         spec.initial_weights);
    SimplexEngine engine;
    for (int t = 0; t < cfg.export_step; ++t) {
        DispatchLp window = build_lp(state, spec, t, spec.grid, spec.rates);
        const LpSolution sol = engine.solve(window.problem);
        if (!sol.optimal()) {
            throw SolverError("window solve failed at step " + std::to_string(t) + ": " +
                              sol.diagnostics);
        }
        state = step(state, extract_controls(sol.x, window.index), spec.rates, spec.grid,
                     spec.od, t);
    }
    BuildOptions options;
    options.explicit_arrivals = cfg.explicit_arrivals;
    const DispatchLp window =
        build_lp(state, spec, cfg.export_step, spec.grid, spec.rates, options);

    const fs::path out_path = cfg.out_dir.empty()
                                  ? fs::path(spec.label + "-step" +
                                             std::to_string(cfg.export_step) + ".lp")
                                  : fs::path(cfg.out_dir);
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + out_path.string());
    write_lp_format(window, spec.nodes, out);
    std::cout << "wrote " << out_path.string() << " (" << window.problem.n_rows()
              << " rows, " << window.problem.n_cols() << " columns)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fleet dispatch simulator: autonomous electric vehicles serving trips and"
                 " backup power"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_scenario_opts = [&](CLI::App* sub, bool with_overrides) {
        sub->add_option("--scenario", cfg.scenario,
                        "scenario document path or builtin:<name>; builtins: paper-tables, "
                        "extreme-2014-12-31, moderate-2014-09-29")
            ->required();
        sub->add_option("--seed", cfg.seed, "seed for synthetic builtin demand profiles");
        if (with_overrides) {
            sub->add_option("--dt", cfg.dt_minutes, "override step length (minutes)");
            sub->add_option("--dx", cfg.dx, "override SOE bin width (must divide 1)");
            sub->add_option("--horizon", cfg.horizon, "override window length (steps)");
            sub->add_option("--steps", cfg.sim_steps, "override simulated steps");
            sub->add_option("--fleet-size", cfg.fleet_size, "override fleet size");
            sub->add_option("--visibility", cfg.visibility,
                            "demand visibility: window|whole_run")
                ->check(CLI::IsMember({"window", "whole_run"}));
            sub->add_option("--fare-mode", cfg.fare_mode, "fare accrual: per_trip|per_minute")
                ->check(CLI::IsMember({"per_trip", "per_minute"}));
            sub->add_option("--quantization", cfg.quantization,
                            "trip quantization: conservative|nearest")
                ->check(CLI::IsMember({"conservative", "nearest"}));
        }
    };

    CLI::App* validate = app.add_subcommand("validate", "check a scenario and exit");
    add_scenario_opts(validate, true);

    CLI::App* run_cmd = app.add_subcommand("run", "simulate one scenario");
    add_scenario_opts(run_cmd, true);
    run_cmd->add_option("--out", cfg.out_dir, "output directory (default $PEVFLEET_OUT_ROOT)");
    run_cmd->add_flag("--quiet", cfg.quiet, "suppress progress lines");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "simulate several fleet sizes");
    add_scenario_opts(sweep_cmd, true);
    sweep_cmd->add_option("--fleet-sizes", cfg.fleet_sizes, "comma-separated sizes")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--out", cfg.out_dir, "output directory");
    sweep_cmd->add_option("--jobs", cfg.jobs, "parallel runs")->check(CLI::PositiveNumber);
    sweep_cmd->add_flag("--quiet", cfg.quiet, "suppress progress lines");

    CLI::App* report_cmd =
        app.add_subcommand("report", "annualize an extreme/moderate pair of runs");
    report_cmd->add_option("--extreme", cfg.extreme_dir, "run directory (extreme day)")
        ->required();
    report_cmd->add_option("--moderate", cfg.moderate_dir, "run directory (moderate day)")
        ->required();
    report_cmd->add_option("--extreme-days", cfg.extreme_days, "extreme-day counts")
        ->delimiter(',');
    report_cmd->add_option("--out", cfg.out_dir, "output directory (default: extreme dir)");

    CLI::App* export_cmd = app.add_subcommand("export-lp", "write one window as an LP file");
    add_scenario_opts(export_cmd, true);
    export_cmd->add_option("--step", cfg.export_step, "window start step (default 0)");
    export_cmd->add_flag("--explicit-arrivals", cfg.explicit_arrivals,
                         "keep arrival flows as explicit columns");
    export_cmd->add_option("--out", cfg.out_dir, "output file path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(cfg);
        if (app.got_subcommand(run_cmd)) return cmd_run(cfg);
        if (app.got_subcommand(sweep_cmd)) return cmd_sweep(cfg);
        if (app.got_subcommand(report_cmd)) return cmd_report(cfg);
        if (app.got_subcommand(export_cmd)) return cmd_export_lp(cfg);
    } catch (const SolverError& e) {
        std::cerr << "solver-error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const IoError& e) {
        std::cerr << "io-error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "scenario-error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const InfeasibleControlError& e) {
        std::cerr << "solver-error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "internal-error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitUsage;
}
