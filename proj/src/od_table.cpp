#include "pevfleet/od_table.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pevfleet {

OdTable::OdTable(int n_nodes, std::vector<OdEntry> entries)
    : n_nodes_(n_nodes), entries_(std::move(entries)) {
    if (static_cast<int>(entries_.size()) != n_nodes_ * n_nodes_) {
        throw DimensionError("od table: one entry per ordered node pair required");
    }
    for (const OdEntry& e : entries_) {
        if (!(e.energy_kwh > 0.0) || !(e.duration_s > 0.0)) {
            throw ScenarioError("od table: trip energies and durations must be positive");
        }
        if (e.bins < 1 || e.steps < 1) {
            throw ScenarioError("od table: quantized trips must take at least 1 bin and 1 step");
        }
    }
}

namespace {

int quantize_up(double value, QuantizationMode mode) {
    // Tiny slack so exact integer ratios do not round up from noise.
    double q = 0.0;
    switch (mode) {
        case QuantizationMode::Conservative:
            q = std::ceil(value - 1e-9);
            break;
        case QuantizationMode::Nearest:
            q = std::floor(value + 0.5);
            break;
    }
    return std::max(1, static_cast<int>(q));
}

}  // namespace

OdTable OdTable::quantize(int n_nodes, const std::vector<OdRaw>& raw, const SoeGrid& grid,
                          const ChargeRates& rates, QuantizationMode mode) {
    if (static_cast<int>(raw.size()) != n_nodes * n_nodes) {
        throw DimensionError("od table: one raw entry per ordered node pair required");
    }
    std::vector<OdEntry> entries(raw.size());
    for (std::size_t idx = 0; idx < raw.size(); ++idx) {
        const OdRaw& r = raw[idx];
        if (!(r.energy_kwh > 0.0) || !(r.duration_s > 0.0)) {
            std::ostringstream os;
            os << "od table: entry " << idx << " has nonpositive energy or duration";
            throw ScenarioError(os.str());
        }
        OdEntry e;
        e.energy_kwh = r.energy_kwh;
        e.duration_s = r.duration_s;
        const double soe = r.energy_kwh / rates.e_max_kwh;
        e.bins = quantize_up(soe / grid.dx, mode);
        e.steps = quantize_up(r.duration_s / (grid.dt_minutes * 60.0), mode);
        if (e.bins >= grid.n_bins) {
            std::ostringstream os;
            os << "od table: entry " << idx << " needs " << e.bins
               << " bins of energy, grid only has " << grid.n_bins;
            throw ScenarioError(os.str());
        }
        entries[idx] = e;
    }
    return OdTable(n_nodes, std::move(entries));
}

}  // namespace pevfleet
