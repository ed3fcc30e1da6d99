#include "pevfleet/charge_rates.hpp"

#include <sstream>

namespace pevfleet {

void ChargeRates::validate(const SoeGrid& grid) const {
    if (!(power_kw > 0.0) || !(e_max_kwh > 0.0)) {
        throw ConfigError("rates: power_kw and e_max_kwh must be positive");
    }
    if (!(eta > 0.0) || eta > 1.0) {
        throw ConfigError("rates: eta must be in (0, 1]");
    }
    const double cfl_c = charge_courant(grid);
    const double cfl_d = discharge_courant(grid);
    if (cfl_c > 1.0 + 1e-12 || cfl_d > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "rates: CFL violated, |q|*dt/dx = " << cfl_c << " (charge), " << cfl_d
           << " (discharge); reduce dt or refine dx";
        throw ConfigError(os.str());
    }
    if (!(cfl_c > 0.0) || !(cfl_d > 0.0)) {
        throw ConfigError("rates: advection speeds must be nonzero");
    }
}

ChargeRates make_rates(double power_kw, double e_max_kwh, double eta, const SoeGrid& grid) {
    ChargeRates r;
    r.power_kw = power_kw;
    r.e_max_kwh = e_max_kwh;
    r.eta = eta;
    r.validate(grid);
    return r;
}

}  // namespace pevfleet
