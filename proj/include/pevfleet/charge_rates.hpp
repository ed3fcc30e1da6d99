#ifndef PEVFLEET_CHARGE_RATES_HPP
#define PEVFLEET_CHARGE_RATES_HPP

#include "pevfleet/soe_grid.hpp"

namespace pevfleet {

/// Per-vehicle charge/discharge characteristics. Rates are expressed on the
/// normalized SOE axis: charging advects density toward x=1 at
/// power/e_max*eta/60 per minute, discharging toward x=0 at power/e_max/60.
struct ChargeRates {
    double power_kw = 7.0;
    double e_max_kwh = 10.0;
    double eta = 0.86;  // conversion efficiency while charging

    double charge_rate() const { return power_kw / e_max_kwh * eta / 60.0; }
    double discharge_rate() const { return -power_kw / e_max_kwh / 60.0; }

    /// Courant numbers of the two advection speeds; both must be in (0, 1]
    /// for the upwind step to be stable and sign-preserving.
    double charge_courant(const SoeGrid& grid) const {
        return charge_rate() * grid.dt_minutes / grid.dx;
    }
    double discharge_courant(const SoeGrid& grid) const {
        return -discharge_rate() * grid.dt_minutes / grid.dx;
    }

    void validate(const SoeGrid& grid) const;
};

ChargeRates make_rates(double power_kw, double e_max_kwh, double eta, const SoeGrid& grid);

}  // namespace pevfleet

#endif
