#include "pevfleet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "pevfleet/text.hpp"

namespace pevfleet {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

int ScenarioSpec::node_index(const std::string& node_label) const {
    for (int i = 0; i < n_nodes(); ++i) {
        if (nodes[i] == node_label) return i;
    }
    throw ScenarioError("unknown node label '" + node_label + "' in scenario '" + label + "'");
}

double ScenarioSpec::window_power_demand(int node, int window_start, int offset) const {
    if (visibility == DemandVisibility::Window &&
        (offset < 0 || offset >= grid.horizon_steps)) {
        throw ScenarioError("power demand read outside the active window");
    }
    const int step = window_start + offset;
    if (step < 0 || step >= demand.n_steps()) {
        std::ostringstream os;
        os << "scenario '" << label << "': no power demand for step " << step;
        throw ScenarioError(os.str());
    }
    return demand.power_kwh(node, step);
}

double ScenarioSpec::window_trip_demand(int from, int to, int window_start, int offset) const {
    if (visibility == DemandVisibility::Window &&
        (offset < 0 || offset >= grid.horizon_steps)) {
        throw ScenarioError("trip demand read outside the active window");
    }
    const int step = window_start + offset;
    if (step < 0 || step >= demand.n_steps()) {
        std::ostringstream os;
        os << "scenario '" << label << "': no trip demand for step " << step;
        throw ScenarioError(os.str());
    }
    return demand.trips(from, to, step);
}

void ScenarioSpec::validate() const {
    validate_node_labels(nodes);
    grid.validate();
    rates.validate(grid);
    const int n = n_nodes();
    if (static_cast<int>(od_raw.size()) != n * n) {
        throw ScenarioError("scenario '" + label + "': od table must cover every ordered pair");
    }
    if (od.n_nodes() != n) {
        throw ScenarioError("scenario '" + label + "': od table not quantized for this network");
    }
    prices.validate(n);
    if (demand.n_nodes() != n) {
        throw ScenarioError("scenario '" + label + "': demand node count mismatch");
    }
    if (fleet_size < 0.0) {
        throw ScenarioError("scenario '" + label + "': fleet_size must be nonnegative");
    }
    if (static_cast<int>(initial_weights.size()) != n) {
        throw ScenarioError("scenario '" + label + "': one initial weight per node required");
    }
    double wsum = 0.0;
    for (double w : initial_weights) {
        if (w < 0.0) throw ScenarioError("scenario '" + label + "': negative initial weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
        throw ScenarioError("scenario '" + label + "': initial weights must sum to 1");
    }
    const ValidationReport report = validate_demand(demand, grid);
    if (!report.ok()) {
        std::ostringstream os;
        os << "scenario '" << label << "': demand profile invalid:";
        for (const std::string& v : report.violations) os << "\n  - " << v;
        throw ScenarioError(os.str());
    }
}

// --- JSON + CSV --------------------------------------------------------------

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed writing " + path.string());
}

const ordered_json& need(const ordered_json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ScenarioError("scenario document: missing '" + std::string(key) + "' in " + where);
    }
    return *it;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

void load_power_csv(const fs::path& path, const ScenarioSpec& spec, DemandProfile* demand) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open demand file " + path.string());
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"node", "step", "value"}) {
        throw ScenarioError(path.string() + ": expected header 'node,step,value'");
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3) {
            throw ScenarioError(path.string() + ":" + std::to_string(lineno) + ": expected 3 fields");
        }
        const int node = spec.node_index(f[0]);
        double step_d = 0.0, value = 0.0;
        if (!parse_double(f[1], &step_d) || !parse_double(f[2], &value)) {
            throw ScenarioError(path.string() + ":" + std::to_string(lineno) + ": bad number");
        }
        const int step = static_cast<int>(step_d);
        if (step < 0 || step >= demand->n_steps()) {
            throw ScenarioError(path.string() + ":" + std::to_string(lineno) + ": step out of range");
        }
        demand->set_power_kwh(node, step, value);
    }
}

void load_trips_csv(const fs::path& path, const ScenarioSpec& spec, DemandProfile* demand) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open demand file " + path.string());
    std::string line;
    if (!std::getline(in, line) ||
        split_csv_line(line) != std::vector<std::string>{"node", "dest", "step", "value"}) {
        throw ScenarioError(path.string() + ": expected header 'node,dest,step,value'");
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4) {
            throw ScenarioError(path.string() + ":" + std::to_string(lineno) + ": expected 4 fields");
        }
        const int from = spec.node_index(f[0]);
        const int to = spec.node_index(f[1]);
        double step_d = 0.0, value = 0.0;
        if (!parse_double(f[2], &step_d) || !parse_double(f[3], &value)) {
            throw ScenarioError(path.string() + ":" + std::to_string(lineno) + ": bad number");
        }
        const int step = static_cast<int>(step_d);
        if (step < 0 || step >= demand->n_steps()) {
            throw ScenarioError(path.string() + ":" + std::to_string(lineno) + ": step out of range");
        }
        demand->set_raw_trips(from, to, step, value);
    }
}

std::string power_csv(const ScenarioSpec& spec) {
    std::ostringstream os;
    os << "node,step,value\n";
    for (int i = 0; i < spec.n_nodes(); ++i) {
        for (int t = 0; t < spec.demand.n_steps(); ++t) {
            os << spec.nodes[i] << ',' << t << ',' << format_double(spec.demand.power_kwh(i, t))
               << '\n';
        }
    }
    return os.str();
}

std::string trips_csv(const ScenarioSpec& spec) {
    std::ostringstream os;
    os << "node,dest,step,value\n";
    for (int i = 0; i < spec.n_nodes(); ++i) {
        for (int j = 0; j < spec.n_nodes(); ++j) {
            for (int t = 0; t < spec.demand.n_steps(); ++t) {
                os << spec.nodes[i] << ',' << spec.nodes[j] << ',' << t << ','
                   << format_double(spec.demand.raw_trips(i, j, t)) << '\n';
            }
        }
    }
    return os.str();
}

const char* fare_mode_name(FareMode m) {
    return m == FareMode::PerTrip ? "per_trip" : "per_minute";
}
const char* visibility_name(DemandVisibility v) {
    return v == DemandVisibility::Window ? "window" : "whole_run";
}
const char* quantization_name(QuantizationMode q) {
    return q == QuantizationMode::Conservative ? "conservative" : "nearest";
}

FareMode parse_fare_mode(const std::string& s) {
    if (s == "per_trip") return FareMode::PerTrip;
    if (s == "per_minute") return FareMode::PerMinute;
    throw ScenarioError("options.fare_mode: unknown value '" + s + "'");
}
DemandVisibility parse_visibility(const std::string& s) {
    if (s == "window") return DemandVisibility::Window;
    if (s == "whole_run") return DemandVisibility::WholeRun;
    throw ScenarioError("options.demand_visibility: unknown value '" + s + "'");
}
QuantizationMode parse_quantization(const std::string& s) {
    if (s == "conservative") return QuantizationMode::Conservative;
    if (s == "nearest") return QuantizationMode::Nearest;
    throw ScenarioError("options.quantization: unknown value '" + s + "'");
}

}  // namespace

std::string scenario_to_json(const ScenarioSpec& spec) {
    ordered_json j;
    j["label"] = spec.label;
    j["nodes"] = spec.nodes;
    j["grid"] = {{"n_bins", spec.grid.n_bins},
                 {"dt_minutes", spec.grid.dt_minutes},
                 {"horizon_steps", spec.grid.horizon_steps},
                 {"n_sim_steps", spec.grid.n_sim_steps}};
    j["rates"] = {{"power_kw", spec.rates.power_kw},
                  {"e_max_kwh", spec.rates.e_max_kwh},
                  {"eta", spec.rates.eta}};
    j["fleet"] = {{"size", spec.fleet_size}, {"initial_weights", spec.initial_weights}};
    ordered_json trips = ordered_json::array();
    for (int i = 0; i < spec.n_nodes(); ++i) {
        for (int k = 0; k < spec.n_nodes(); ++k) {
            const TripPrice& t = spec.prices.trip(i, k, spec.n_nodes());
            trips.push_back({{"from", spec.nodes[i]},
                             {"to", spec.nodes[k]},
                             {"per_kwh", t.per_kwh},
                             {"per_trip", t.per_trip}});
        }
    }
    j["prices"] = {{"grid_kwh", spec.prices.grid_price_per_kwh},
                   {"outage_kwh", spec.prices.outage_price_per_kwh},
                   {"trips", trips}};
    ordered_json od = ordered_json::array();
    for (int i = 0; i < spec.n_nodes(); ++i) {
        for (int k = 0; k < spec.n_nodes(); ++k) {
            const OdRaw& r = spec.od_raw[static_cast<std::size_t>(i) * spec.n_nodes() + k];
            od.push_back({{"from", spec.nodes[i]},
                          {"to", spec.nodes[k]},
                          {"energy_kwh", r.energy_kwh},
                          {"duration_s", r.duration_s}});
        }
    }
    j["od"] = od;
    j["demand"] = {{"power_csv", spec.power_csv_name},
                   {"trips_csv", spec.trips_csv_name},
                   {"steps", spec.demand.n_steps()},
                   {"mobility_scale", spec.demand.mobility_scale()}};
    j["options"] = {{"fare_mode", fare_mode_name(spec.fare_mode)},
                    {"demand_visibility", visibility_name(spec.visibility)},
                    {"quantization", quantization_name(spec.quantization)}};
    j["seed"] = spec.seed;
    return j.dump(2) + "\n";
}

ScenarioSpec load_scenario(const std::string& path) {
    const fs::path doc_path(path);
    ordered_json j;
    try {
        j = ordered_json::parse(read_file(doc_path));
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError("scenario parse failed for " + path + ": " + e.what());
    }

    ScenarioSpec spec;
    try {
        spec.label = need(j, "label", "document").get<std::string>();
        spec.nodes = need(j, "nodes", "document").get<std::vector<std::string>>();
        validate_node_labels(spec.nodes);
        const int n = spec.n_nodes();

        const auto& grid = need(j, "grid", "document");
        spec.grid = make_grid(need(grid, "n_bins", "grid").get<int>(),
                              need(grid, "dt_minutes", "grid").get<double>(),
                              need(grid, "horizon_steps", "grid").get<int>(),
                              need(grid, "n_sim_steps", "grid").get<int>());

        const auto& rates = need(j, "rates", "document");
        spec.rates = make_rates(need(rates, "power_kw", "rates").get<double>(),
                                need(rates, "e_max_kwh", "rates").get<double>(),
                                need(rates, "eta", "rates").get<double>(), spec.grid);

        const auto& fleet = need(j, "fleet", "document");
        spec.fleet_size = need(fleet, "size", "fleet").get<double>();
        spec.initial_weights =
            need(fleet, "initial_weights", "fleet").get<std::vector<double>>();

        const auto& prices = need(j, "prices", "document");
        spec.prices.grid_price_per_kwh = need(prices, "grid_kwh", "prices").get<double>();
        const auto outage = need(prices, "outage_kwh", "prices").get<std::vector<double>>();
        if (static_cast<int>(outage.size()) != n) {
            throw ScenarioError("prices.outage_kwh: expected one entry per node");
        }
        spec.prices.outage_price_per_kwh = outage;
        spec.prices.trip_prices.assign(static_cast<std::size_t>(n) * n, TripPrice{});
        std::vector<bool> seen_price(static_cast<std::size_t>(n) * n, false);
        for (const auto& row : need(prices, "trips", "prices")) {
            const int from = spec.node_index(need(row, "from", "prices.trips").get<std::string>());
            const int to = spec.node_index(need(row, "to", "prices.trips").get<std::string>());
            TripPrice t;
            t.per_kwh = need(row, "per_kwh", "prices.trips").get<double>();
            t.per_trip = need(row, "per_trip", "prices.trips").get<double>();
            spec.prices.trip_prices[static_cast<std::size_t>(from) * n + to] = t;
            seen_price[static_cast<std::size_t>(from) * n + to] = true;
        }
        for (std::size_t idx = 0; idx < seen_price.size(); ++idx) {
            if (!seen_price[idx]) {
                throw ScenarioError("prices.trips: missing fare for pair " +
                                    spec.nodes[idx / n] + "->" + spec.nodes[idx % n]);
            }
        }

        spec.od_raw.assign(static_cast<std::size_t>(n) * n, OdRaw{});
        std::vector<bool> seen_od(static_cast<std::size_t>(n) * n, false);
        for (const auto& row : need(j, "od", "document")) {
            const int from = spec.node_index(need(row, "from", "od").get<std::string>());
            const int to = spec.node_index(need(row, "to", "od").get<std::string>());
            OdRaw r;
            r.energy_kwh = need(row, "energy_kwh", "od").get<double>();
            r.duration_s = need(row, "duration_s", "od").get<double>();
            spec.od_raw[static_cast<std::size_t>(from) * n + to] = r;
            seen_od[static_cast<std::size_t>(from) * n + to] = true;
        }
        for (std::size_t idx = 0; idx < seen_od.size(); ++idx) {
            if (!seen_od[idx]) {
                throw ScenarioError("od: missing entry for pair " + spec.nodes[idx / n] + "->" +
                                    spec.nodes[idx % n]);
            }
        }

        const auto& demand = need(j, "demand", "document");
        spec.power_csv_name = need(demand, "power_csv", "demand").get<std::string>();
        spec.trips_csv_name = need(demand, "trips_csv", "demand").get<std::string>();
        const int steps = need(demand, "steps", "demand").get<int>();
        const double scale = need(demand, "mobility_scale", "demand").get<double>();
        spec.demand = DemandProfile(n, steps, scale);

        const auto& options = need(j, "options", "document");
        spec.fare_mode =
            parse_fare_mode(need(options, "fare_mode", "options").get<std::string>());
        spec.visibility = parse_visibility(
            need(options, "demand_visibility", "options").get<std::string>());
        spec.quantization = parse_quantization(
            need(options, "quantization", "options").get<std::string>());
        spec.seed = j.value("seed", 0ULL);
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError("scenario document " + path + ": " + e.what());
    }

    const fs::path dir = doc_path.has_parent_path() ? doc_path.parent_path() : fs::path(".");
    load_power_csv(dir / spec.power_csv_name, spec, &spec.demand);
    load_trips_csv(dir / spec.trips_csv_name, spec, &spec.demand);

    spec.requantize();
    spec.validate();
    return spec;
}

std::string serialize_scenario(const ScenarioSpec& spec, const std::string& dir) {
    const fs::path out_dir(dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create directory " + out_dir.string());
    const fs::path doc = out_dir / "scenario.json";
    write_file(doc, scenario_to_json(spec));
    write_file(out_dir / spec.power_csv_name, power_csv(spec));
    write_file(out_dir / spec.trips_csv_name, trips_csv(spec));
    return doc.string();
}

// --- bundled scenarios --------------------------------------------------------

namespace {

// Deterministic uniform double in [lo, hi); avoids distribution objects so
// the stream is identical across standard libraries.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

const std::vector<OdRaw>& paper_od_rows() {
    // Trip energy (kWh) and duration (s) per ordered pair, order I, II, IV.
    static const std::vector<OdRaw> rows = {
        {0.42, 476.0}, {0.82, 792.0}, {0.93, 1000.0},
        {0.84, 760.0}, {0.38, 489.0}, {0.77, 698.0},
        {0.93, 956.0}, {0.77, 725.0}, {0.37, 403.0},
    };
    return rows;
}

const std::vector<TripPrice>& paper_trip_prices() {
    static const std::vector<TripPrice> rows = {
        {25.0, 11.0}, {19.0, 8.0}, {20.0, 9.0},
        {18.0, 8.0},  {26.0, 10.0}, {19.0, 7.0},
        {20.0, 9.0},  {19.0, 7.0},  {24.0, 9.0},
    };
    return rows;
}

ScenarioSpec base_paper_scenario() {
    ScenarioSpec spec;
    spec.nodes = {"I", "II", "IV"};
    spec.grid = make_grid(6, 10.0, 5, 144);
    spec.rates = make_rates(7.0, 10.0, 0.86, spec.grid);
    spec.od_raw = paper_od_rows();
    spec.prices.trip_prices = paper_trip_prices();
    spec.prices.grid_price_per_kwh = 0.25;
    spec.fleet_size = 7500.0;
    spec.initial_weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    spec.demand = DemandProfile(3, spec.grid.n_sim_steps + spec.grid.horizon_steps, 10.0);
    return spec;
}

double bump(double t, double center, double width) {
    const double z = (t - center) / width;
    return std::exp(-0.5 * z * z);
}

// Synthetic stand-ins for the two outage days: a smooth midday surge for
// power (never dropping faster per step than discharging vehicles can drain,
// which keeps every window feasible) and a two-peak commute shape for trips.
void fill_synthetic_demand(ScenarioSpec* spec, const std::vector<double>& power_peaks,
                           double trip_peak_scale) {
    std::mt19937_64 rng(spec->seed);
    DemandProfile& d = spec->demand;
    for (int i = 0; i < spec->n_nodes(); ++i) {
        for (int t = 0; t < d.n_steps(); ++t) {
            const double base = power_peaks[i] * bump(t, 72.0, 18.0);
            d.set_power_kwh(i, t, base * uniform(rng, 0.9, 1.1));
        }
    }
    for (int i = 0; i < spec->n_nodes(); ++i) {
        for (int j = 0; j < spec->n_nodes(); ++j) {
            const double pair_scale = (i == j) ? 0.6 : 0.3;
            for (int t = 0; t < d.n_steps(); ++t) {
                const double shape = bump(t, 48.0, 12.0) + bump(t, 108.0, 12.0) + 0.03;
                const double raw = trip_peak_scale * pair_scale * shape;
                d.set_raw_trips(i, j, t, raw * uniform(rng, 0.9, 1.1));
            }
        }
    }
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
    return {"paper-tables", "extreme-2014-12-31", "moderate-2014-09-29"};
}

ScenarioSpec builtin_scenario(const std::string& name, unsigned long long seed) {
    ScenarioSpec spec = base_paper_scenario();
    if (name == "paper-tables") {
        spec.label = "paper-tables";
        spec.prices.outage_price_per_kwh = {20.0, 9.0, 15.0};
        spec.seed = seed;
    } else if (name == "extreme-2014-12-31") {
        spec.label = "extreme-2014-12-31";
        spec.prices.outage_price_per_kwh = {20.0, 9.0, 15.0};
        spec.seed = (seed != 0) ? seed : 20141231ULL;
        fill_synthetic_demand(&spec, {6000.0, 3000.0, 3000.0}, 10.0);
    } else if (name == "moderate-2014-09-29") {
        spec.label = "moderate-2014-09-29";
        spec.prices.outage_price_per_kwh = {14.0, 32.0, 46.0};
        spec.seed = (seed != 0) ? seed : 20140929ULL;
        fill_synthetic_demand(&spec, {60.0, 30.0, 30.0}, 10.0);
    } else {
        throw ScenarioError("unknown bundled scenario '" + name + "'");
    }
    spec.requantize();
    spec.validate();
    return spec;
}

}  // namespace pevfleet
