#include "pevfleet/dispatch_lp.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "pevfleet/text.hpp"

namespace pevfleet {

VariableIndex::VariableIndex(int n_nodes, int n_bins, int horizon, bool explicit_arrivals)
    : n_nodes_(n_nodes),
      n_bins_(n_bins),
      horizon_(horizon),
      explicit_arrivals_(explicit_arrivals),
      per_class_(n_nodes * n_bins * horizon),
      per_od_class_(n_nodes * n_nodes * n_bins * horizon) {
    if (n_nodes < 1 || n_bins < 2 || horizon < 1) {
        throw DimensionError("variable index: bad dimensions");
    }
    n_cols_ = 5 * per_class_ + 2 * per_od_class_;
    if (explicit_arrivals_) n_cols_ += 2 * per_od_class_;
}

int VariableIndex::density(VarKind kind, int node, int bin, int state_step) const {
    // States 1..H live at offsets 0..H-1.
    const int s = state_step - 1;
    switch (kind) {
        case VarKind::Charging: return nk(node, bin, s);
        case VarKind::Idle: return per_class_ + nk(node, bin, s);
        case VarKind::Discharging: return 2 * per_class_ + nk(node, bin, s);
        default: throw DimensionError("variable index: not a density kind");
    }
}

int VariableIndex::flow_charge(int node, int bin, int step) const {
    return 3 * per_class_ + nk(node, bin, step);
}
int VariableIndex::flow_discharge(int node, int bin, int step) const {
    return 4 * per_class_ + nk(node, bin, step);
}
int VariableIndex::trip_pax(int from, int to, int bin, int step) const {
    return 5 * per_class_ + od(from, to, bin, step);
}
int VariableIndex::trip_empty(int from, int to, int bin, int step) const {
    return 5 * per_class_ + per_od_class_ + od(from, to, bin, step);
}
int VariableIndex::arrival_pax(int from, int to, int arrival_bin, int step) const {
    if (!explicit_arrivals_) throw DimensionError("arrival columns need explicit mode");
    return 5 * per_class_ + 2 * per_od_class_ + od(from, to, arrival_bin, step);
}
int VariableIndex::arrival_empty(int from, int to, int arrival_bin, int step) const {
    if (!explicit_arrivals_) throw DimensionError("arrival columns need explicit mode");
    return 5 * per_class_ + 3 * per_od_class_ + od(from, to, arrival_bin, step);
}

VarTag VariableIndex::tag(int col) const {
    if (col < 0 || col >= n_cols_) throw DimensionError("variable index: column out of range");
    VarTag t{};
    auto decode_nk = [&](int rest) {
        t.step = rest % horizon_;
        rest /= horizon_;
        t.bin = rest % n_bins_;
        t.from = t.to = rest / n_bins_;
    };
    auto decode_od = [&](int rest) {
        t.step = rest % horizon_;
        rest /= horizon_;
        t.bin = rest % n_bins_;
        rest /= n_bins_;
        t.to = rest % n_nodes_;
        t.from = rest / n_nodes_;
    };
    if (col < 3 * per_class_) {
        t.kind = static_cast<VarKind>(col / per_class_);  // Charging, Idle, Discharging
        decode_nk(col % per_class_);
        t.step += 1;  // density states are 1-based
        return t;
    }
    col -= 3 * per_class_;
    if (col < 2 * per_class_) {
        t.kind = (col < per_class_) ? VarKind::FlowCharge : VarKind::FlowDischarge;
        decode_nk(col % per_class_);
        return t;
    }
    col -= 2 * per_class_;
    if (col < 2 * per_od_class_) {
        t.kind = (col < per_od_class_) ? VarKind::TripPax : VarKind::TripEmpty;
        decode_od(col % per_od_class_);
        return t;
    }
    col -= 2 * per_od_class_;
    t.kind = (col < per_od_class_) ? VarKind::ArrivalPax : VarKind::ArrivalEmpty;
    decode_od(col % per_od_class_);
    return t;
}

std::string VariableIndex::name(int col, const std::vector<std::string>& labels) const {
    const VarTag t = tag(col);
    std::ostringstream os;
    auto node = [&](int i) -> std::string {
        return i < static_cast<int>(labels.size()) ? labels[i] : std::to_string(i);
    };
    switch (t.kind) {
        case VarKind::Charging: os << "u_" << node(t.from); break;
        case VarKind::Idle: os << "v_" << node(t.from); break;
        case VarKind::Discharging: os << "w_" << node(t.from); break;
        case VarKind::FlowCharge: os << "fic_" << node(t.from); break;
        case VarKind::FlowDischarge: os << "fid_" << node(t.from); break;
        case VarKind::TripPax: os << "dpx_" << node(t.from) << "_" << node(t.to); break;
        case VarKind::TripEmpty: os << "dem_" << node(t.from) << "_" << node(t.to); break;
        case VarKind::ArrivalPax: os << "apx_" << node(t.from) << "_" << node(t.to); break;
        case VarKind::ArrivalEmpty: os << "aem_" << node(t.from) << "_" << node(t.to); break;
    }
    os << "_k" << t.bin << "_s" << t.step;
    return os.str();
}

namespace {

// Accumulates one constraint row: variable terms plus the constant
// contribution of window-initial densities moved to the right-hand side.
struct RowBuilder {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;

    void var(int col, double coef) { terms.emplace_back(col, coef); }
    void constant(double value, double coef) { rhs -= coef * value; }
};

}  // namespace

DispatchLp build_lp(const FleetState& state0, const ScenarioSpec& scenario, int window_start,
                    const SoeGrid& grid, const ChargeRates& rates, const BuildOptions& options) {
    grid.validate();
    rates.validate(grid);
    const int n = scenario.n_nodes();
    const int nb = grid.n_bins;
    const int h = grid.horizon_steps;
    state0.require_shape(n, nb);
    if (window_start < 0 || window_start + h > scenario.demand.n_steps()) {
        std::ostringstream os;
        os << "window [" << window_start << ", " << window_start + h
           << ") not covered by the demand profile (" << scenario.demand.n_steps() << " steps)";
        throw ScenarioError(os.str());
    }

    const double dt = grid.dt_minutes;
    const double dx = grid.dx;
    const double lam_c = rates.charge_courant(grid);
    const double lam_d = rates.discharge_courant(grid);
    const double power_coef = rates.power_kw * dx * dt / 60.0;  // kWh per unit density var

    DispatchLp out{LpProblem{}, VariableIndex(n, nb, h, options.explicit_arrivals), {}};
    LpProblem& lp = out.problem;
    const VariableIndex& ix = out.index;

    // Columns, in index order.
    for (int col = 0; col < ix.n_cols(); ++col) {
        const VarTag t = ix.tag(col);
        double obj = 0.0, lo = 0.0, up = kInf;
        switch (t.kind) {
            case VarKind::Charging:
                obj = -scenario.prices.grid_price_per_kwh * power_coef;
                break;
            case VarKind::Idle:
                break;
            case VarKind::Discharging:
                obj = scenario.prices.outage_price_per_kwh[t.from] * power_coef;
                break;
            case VarKind::FlowCharge:
            case VarKind::FlowDischarge:
                lo = -kInf;
                break;
            case VarKind::TripPax:
            case VarKind::TripEmpty: {
                const OdEntry& trip = scenario.od.at(t.from, t.to);
                const bool banned = t.bin < trip.bins || t.step + trip.steps > h - 1;
                if (banned) up = 0.0;
                if (t.kind == VarKind::TripPax) {
                    obj = scenario.effective_fare(t.from, t.to) * dx * dt;
                }
                break;
            }
            case VarKind::ArrivalPax:
            case VarKind::ArrivalEmpty: {
                const OdEntry& trip = scenario.od.at(t.from, t.to);
                const bool sourced = t.step - trip.steps >= 0 && t.bin + trip.bins <= nb - 1;
                if (!sourced) up = 0.0;
                break;
            }
        }
        lp.add_col(obj, lo, up);
    }

    // Ledger arrivals indexed by (node, bin, in-window flow step).
    std::vector<double> ledger(static_cast<std::size_t>(n) * nb * h, 0.0);
    for (const TransitEntry& e : state0.in_transit()) {
        if (e.arrival_step < window_start) {
            throw ScenarioError("stale transit entry: arrival step " +
                                std::to_string(e.arrival_step) + " before window start");
        }
        const int s = e.arrival_step - window_start;
        if (s >= h) continue;  // handled by a later window
        ledger[(static_cast<std::size_t>(e.destination) * nb + e.arrival_bin) * h + s] +=
            e.vehicle_count / dx;
    }
    auto ledger_at = [&](int i, int k, int s) {
        return ledger[(static_cast<std::size_t>(i) * nb + k) * h + s];
    };

    // Density term at window state s (constant for s == 0, column otherwise).
    auto density_term = [&](RowBuilder& row, VarKind kind, int i, int k, int s, double coef) {
        if (s == 0) {
            double v = 0.0;
            switch (kind) {
                case VarKind::Charging: v = state0.charging(i, k); break;
                case VarKind::Idle: v = state0.idle(i, k); break;
                case VarKind::Discharging: v = state0.discharging(i, k); break;
                default: throw DimensionError("density term: bad kind");
            }
            row.constant(v, coef);
        } else {
            row.var(ix.density(kind, i, k, s), coef);
        }
    };

    auto add_row = [&](RowBuilder& row, RowSense sense, const std::string& rname,
                       double extra_rhs = 0.0) {
        lp.add_row(sense, row.rhs + extra_rhs, row.terms);
        out.row_names.push_back(rname);
    };
    auto rname = [&](const char* prefix, int i, int k, int s) {
        std::ostringstream os;
        os << prefix << "_" << scenario.nodes[i] << "_k" << k << "_s" << s;
        return os.str();
    };

    for (int s = 0; s < h; ++s) {
        for (int i = 0; i < n; ++i) {
            // State equations.
            for (int k = 0; k < nb; ++k) {
                RowBuilder ru;
                ru.var(ix.density(VarKind::Charging, i, k, s + 1), 1.0);
                density_term(ru, VarKind::Charging, i, k, s, k == nb - 1 ? -1.0 : -(1.0 - lam_c));
                if (k > 0) density_term(ru, VarKind::Charging, i, k - 1, s, -lam_c);
                ru.var(ix.flow_charge(i, k, s), -dt);
                add_row(ru, RowSense::Equal, rname("stu", i, k, s));

                RowBuilder rw;
                rw.var(ix.density(VarKind::Discharging, i, k, s + 1), 1.0);
                density_term(rw, VarKind::Discharging, i, k, s, k == 0 ? -1.0 : -(1.0 - lam_d));
                if (k < nb - 1) density_term(rw, VarKind::Discharging, i, k + 1, s, -lam_d);
                rw.var(ix.flow_discharge(i, k, s), -dt);
                add_row(rw, RowSense::Equal, rname("stw", i, k, s));

                RowBuilder rv;
                rv.var(ix.density(VarKind::Idle, i, k, s + 1), 1.0);
                density_term(rv, VarKind::Idle, i, k, s, -1.0);
                rv.var(ix.flow_charge(i, k, s), dt);
                rv.var(ix.flow_discharge(i, k, s), dt);
                for (int j = 0; j < n; ++j) {
                    rv.var(ix.trip_pax(i, j, k, s), dt);
                    rv.var(ix.trip_empty(i, j, k, s), dt);
                    if (options.explicit_arrivals) {
                        rv.var(ix.arrival_pax(j, i, k, s), -dt);
                        rv.var(ix.arrival_empty(j, i, k, s), -dt);
                    } else {
                        const OdEntry& trip = scenario.od.at(j, i);
                        const int src_bin = k + trip.bins;
                        const int src_s = s - trip.steps;
                        if (src_bin <= nb - 1 && src_s >= 0) {
                            rv.var(ix.trip_pax(j, i, src_bin, src_s), -dt);
                            rv.var(ix.trip_empty(j, i, src_bin, src_s), -dt);
                        }
                    }
                }
                add_row(rv, RowSense::Equal, rname("stv", i, k, s), ledger_at(i, k, s));
            }

            // Forced return to idle at the SOE extremes.
            {
                RowBuilder bu;
                bu.var(ix.flow_charge(i, nb - 1, s), dt);
                density_term(bu, VarKind::Charging, i, nb - 1, s, 1.0);
                add_row(bu, RowSense::Equal, rname("bdu", i, nb - 1, s));

                RowBuilder bw;
                bw.var(ix.flow_discharge(i, 0, s), dt);
                density_term(bw, VarKind::Discharging, i, 0, s, 1.0);
                add_row(bw, RowSense::Equal, rname("bdw", i, 0, s));
            }

            // Flow-size bounds against the pre-step densities.
            for (int k = 0; k < nb; ++k) {
                RowBuilder fu;
                fu.var(ix.flow_charge(i, k, s), -dt);
                density_term(fu, VarKind::Charging, i, k, s, -1.0);
                add_row(fu, RowSense::LessEq, rname("fsu", i, k, s));

                RowBuilder fw;
                fw.var(ix.flow_discharge(i, k, s), -dt);
                density_term(fw, VarKind::Discharging, i, k, s, -1.0);
                add_row(fw, RowSense::LessEq, rname("fsw", i, k, s));

                RowBuilder fv;
                fv.var(ix.flow_charge(i, k, s), dt);
                fv.var(ix.flow_discharge(i, k, s), dt);
                for (int j = 0; j < n; ++j) {
                    fv.var(ix.trip_pax(i, j, k, s), dt);
                    fv.var(ix.trip_empty(i, j, k, s), dt);
                    if (options.explicit_arrivals) {
                        fv.var(ix.arrival_pax(j, i, k, s), -dt);
                        fv.var(ix.arrival_empty(j, i, k, s), -dt);
                    } else {
                        const OdEntry& trip = scenario.od.at(j, i);
                        const int src_bin = k + trip.bins;
                        const int src_s = s - trip.steps;
                        if (src_bin <= nb - 1 && src_s >= 0) {
                            fv.var(ix.trip_pax(j, i, src_bin, src_s), -dt);
                            fv.var(ix.trip_empty(j, i, src_bin, src_s), -dt);
                        }
                    }
                }
                density_term(fv, VarKind::Idle, i, k, s, -1.0);
                add_row(fv, RowSense::LessEq, rname("fsv", i, k, s), ledger_at(i, k, s));
            }

            // Power demand cap on the served energy of this step.
            {
                RowBuilder cap;
                for (int k = 0; k < nb; ++k) {
                    cap.var(ix.density(VarKind::Discharging, i, k, s + 1), power_coef);
                }
                add_row(cap, RowSense::LessEq, rname("capp", i, 0, s),
                        scenario.window_power_demand(i, window_start, s));
            }
        }

        // Trip demand caps.
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                RowBuilder cap;
                for (int k = 0; k < nb; ++k) {
                    cap.var(ix.trip_pax(i, j, k, s), dx * dt);
                }
                std::ostringstream os;
                os << "capm_" << scenario.nodes[i] << "_" << scenario.nodes[j] << "_s" << s;
                add_row(cap, RowSense::LessEq, os.str(),
                        scenario.window_trip_demand(i, j, window_start, s));
            }
        }

        // Explicit-arrival coupling rows (debug mode only).
        if (options.explicit_arrivals) {
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) {
                    const OdEntry& trip = scenario.od.at(j, i);
                    for (int k = 0; k < nb; ++k) {
                        const int src_bin = k + trip.bins;
                        const int src_s = s - trip.steps;
                        if (src_bin > nb - 1 || src_s < 0) continue;  // column fixed to 0
                        RowBuilder rp;
                        rp.var(ix.arrival_pax(j, i, k, s), 1.0);
                        rp.var(ix.trip_pax(j, i, src_bin, src_s), -1.0);
                        std::ostringstream os;
                        os << "arrp_" << scenario.nodes[j] << "_" << scenario.nodes[i] << "_k"
                           << k << "_s" << s;
                        add_row(rp, RowSense::Equal, os.str());
                        RowBuilder re;
                        re.var(ix.arrival_empty(j, i, k, s), 1.0);
                        re.var(ix.trip_empty(j, i, src_bin, src_s), -1.0);
                        os.str("");
                        os << "arre_" << scenario.nodes[j] << "_" << scenario.nodes[i] << "_k"
                           << k << "_s" << s;
                        add_row(re, RowSense::Equal, os.str());
                    }
                }
            }
        }
    }

    lp.validate();
    return out;
}

ControlVector extract_controls(const std::vector<double>& solution, const VariableIndex& ix) {
    if (static_cast<int>(solution.size()) != ix.n_cols()) {
        throw DimensionError("extract_controls: solution length does not match the index");
    }
    const int n = ix.n_nodes();
    const int nb = ix.n_bins();
    ControlVector ctrl(n, nb);
    auto clamp = [](double v) { return std::abs(v) < 1e-9 ? 0.0 : v; };
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < nb; ++k) {
            ctrl.idle_to_charge(i, k) = clamp(solution[ix.flow_charge(i, k, 0)]);
            ctrl.idle_to_discharge(i, k) = clamp(solution[ix.flow_discharge(i, k, 0)]);
            for (int j = 0; j < n; ++j) {
                ctrl.trips_pax(i, j, k) = clamp(solution[ix.trip_pax(i, j, k, 0)]);
                ctrl.trips_empty(i, j, k) = clamp(solution[ix.trip_empty(i, j, k, 0)]);
            }
        }
    }
    return ctrl;
}

void write_lp_format(const DispatchLp& lp, const std::vector<std::string>& labels,
                     std::ostream& out) {
    const LpProblem& p = lp.problem;
    auto var = [&](int col) { return lp.index.name(col, labels); };

    out << "\\ dispatch window export, " << p.n_cols() << " columns, " << p.n_rows()
        << " rows\n";
    out << "Maximize\n obj:";
    bool any = false;
    for (int j = 0; j < p.n_cols(); ++j) {
        const double c = p.objective(j);
        if (c == 0.0) continue;
        out << (c >= 0.0 ? " + " : " - ") << format_double(std::abs(c)) << " " << var(j);
        any = true;
    }
    if (!any) out << " 0 " << var(0);
    out << "\nSubject To\n";
    for (int r = 0; r < p.n_rows(); ++r) {
        const std::string rn =
            r < static_cast<int>(lp.row_names.size()) ? lp.row_names[r] : "r" + std::to_string(r);
        out << " " << rn << ":";
        for (int idx = p.row_begin(r); idx < p.row_end(r); ++idx) {
            const double c = p.entry_value(idx);
            out << (c >= 0.0 ? " + " : " - ") << format_double(std::abs(c)) << " "
                << var(p.entry_col(idx));
        }
        out << (p.sense(r) == RowSense::Equal ? " = " : " <= ") << format_double(p.rhs(r))
            << "\n";
    }
    out << "Bounds\n";
    for (int j = 0; j < p.n_cols(); ++j) {
        const double lo = p.lower(j), up = p.upper(j);
        if (lo == 0.0 && up == kInf) continue;  // LP-format default
        if (lo == up) {
            out << " " << var(j) << " = " << format_double(lo) << "\n";
        } else if (lo == -kInf && up == kInf) {
            out << " " << var(j) << " free\n";
        } else {
            out << " " << (lo == -kInf ? "-inf" : format_double(lo)) << " <= " << var(j)
                << " <= " << (up == kInf ? "+inf" : format_double(up)) << "\n";
        }
    }
    out << "End\n";
}

}  // namespace pevfleet
