#ifndef PEVFLEET_OD_TABLE_HPP
#define PEVFLEET_OD_TABLE_HPP

#include <vector>

#include "pevfleet/charge_rates.hpp"
#include "pevfleet/soe_grid.hpp"

namespace pevfleet {

enum class QuantizationMode {
    Conservative,  // ceil to whole bins/steps, never below 1 (default)
    Nearest,       // round to nearest, still floored at 1
};

/// Raw trip requirement for one ordered node pair.
struct OdRaw {
    double energy_kwh = 0.0;   // battery energy consumed by the trip
    double duration_s = 0.0;   // travel time
};

/// Trip requirement after quantization onto the grid: departures at bin k
/// arrive `bins` bins lower, `steps` steps later.
struct OdEntry {
    double energy_kwh = 0.0;
    double duration_s = 0.0;
    int bins = 1;
    int steps = 1;
};

class OdTable {
public:
    OdTable() = default;
    OdTable(int n_nodes, std::vector<OdEntry> entries);

    static OdTable quantize(int n_nodes, const std::vector<OdRaw>& raw, const SoeGrid& grid,
                            const ChargeRates& rates,
                            QuantizationMode mode = QuantizationMode::Conservative);

    int n_nodes() const { return n_nodes_; }
    const OdEntry& at(int from, int to) const {
        return entries_[static_cast<std::size_t>(from) * n_nodes_ + to];
    }

private:
    int n_nodes_ = 0;
    std::vector<OdEntry> entries_;
};

}  // namespace pevfleet

#endif
