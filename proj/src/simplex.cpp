#include "pevfleet/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pevfleet {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration-limit";
        case SolveStatus::NumericalFailure: return "numerical-failure";
    }
    return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kStallLimit = 60;
constexpr int kRefactorInterval = 1200;

struct BasisSnapshot {
    std::vector<int> basis;
    std::vector<double> binv;  // column-major, scaled space
    std::vector<ColStatus> status;
    int updates = 0;
};

// Bounded-variable revised simplex over the internal form
//   minimize  cost'x  s.t.  [A | I] x = b,  lo <= x <= up
// where columns 0..n-1 are the scaled structural columns and column n+i is
// the slack of row i (a unit entry after scaling; fixed to 0 for equality
// rows). Phase 1 minimizes the total bound violation of the basic variables
// with a first-breakpoint ratio test, which also serves warm starts whose
// seed basis is no longer feasible for the new right-hand side.
class Simplex {
public:
    Simplex(const LpProblem& prob, const SolverOptions& opt) : prob_(prob), opt_(opt) {
        m_ = prob.n_rows();
        n_ = prob.n_cols();
        total_ = n_ + m_;
        build_scaled();
    }

    bool seed(const BasisSnapshot& snap) {
        if (static_cast<int>(snap.basis.size()) != m_ ||
            static_cast<int>(snap.status.size()) != total_) {
            return false;
        }
        basis_ = snap.basis;
        binv_ = snap.binv;
        status_ = snap.status;
        basis_pos_.assign(total_, -1);
        for (int p = 0; p < m_; ++p) basis_pos_[basis_[p]] = p;
        updates_since_factor_ = snap.updates;
        compute_xb();
        if (basic_system_residual() > 1e-9 || updates_since_factor_ >= kRefactorInterval) {
            if (!factorize()) return false;
            compute_xb();
        }
        seeded_ = true;
        return true;
    }

    LpSolution run() {
        if (!seeded_) init_basis();
        SolveStatus status;
        int rounds = 0;
        for (;;) {
            status = phase1();
            if (status != SolveStatus::Optimal) break;
            status = phase2();
            if (status != SolveStatus::Optimal) break;
            // Re-verify feasibility at the claimed optimum; round-off during
            // long pivot sequences can leave a basic value slightly outside.
            if (!factorize()) { status = SolveStatus::NumericalFailure; break; }
            compute_xb();
            if (max_infeasibility() <= opt_.feasibility_tol) break;
            if (++rounds > 3) { status = SolveStatus::NumericalFailure; break; }
        }
        return finish(status);
    }

    BasisSnapshot snapshot() const {
        return BasisSnapshot{basis_, binv_, status_, updates_since_factor_};
    }

private:
    const LpProblem& prob_;
    SolverOptions opt_;
    int m_ = 0, n_ = 0, total_ = 0;
    bool seeded_ = false;

    // Problem in scaled space; structural columns CSC.
    std::vector<int> col_start_, row_idx_;
    std::vector<double> val_;
    std::vector<double> cost_;
    std::vector<double> lo_, up_;
    std::vector<double> b_;
    std::vector<double> rscale_, cscale_;

    // Basis state.
    std::vector<ColStatus> status_;
    std::vector<int> basis_;
    std::vector<int> basis_pos_;
    std::vector<double> binv_;  // column-major m x m
    std::vector<double> xb_;
    std::vector<double> y_, alpha_, cb_;
    int iterations_ = 0;
    int updates_since_factor_ = 0;
    bool bland_ = false;
    int stall_ = 0;
    double stall_obj_ = 0.0;

    void build_scaled() {
        std::vector<int> count(n_, 0);
        for (int r = 0; r < m_; ++r) {
            for (int idx = prob_.row_begin(r); idx < prob_.row_end(r); ++idx) {
                ++count[prob_.entry_col(idx)];
            }
        }
        col_start_.assign(n_ + 1, 0);
        for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + count[j];
        row_idx_.resize(col_start_[n_]);
        val_.resize(col_start_[n_]);
        std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
        for (int r = 0; r < m_; ++r) {
            for (int idx = prob_.row_begin(r); idx < prob_.row_end(r); ++idx) {
                const int j = prob_.entry_col(idx);
                row_idx_[fill[j]] = r;
                val_[fill[j]] = prob_.entry_value(idx);
                ++fill[j];
            }
        }

        rscale_.assign(m_, 1.0);
        cscale_.assign(n_, 1.0);
        if (opt_.equilibrate) {
            std::vector<double> rmax(m_, 0.0);
            for (std::size_t e = 0; e < val_.size(); ++e) {
                rmax[row_idx_[e]] = std::max(rmax[row_idx_[e]], std::abs(val_[e]));
            }
            for (int r = 0; r < m_; ++r) {
                if (rmax[r] > 0.0) rscale_[r] = 1.0 / rmax[r];
            }
            for (int j = 0; j < n_; ++j) {
                double cmax = 0.0;
                for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
                    cmax = std::max(cmax, std::abs(val_[e]) * rscale_[row_idx_[e]]);
                }
                if (cmax > 0.0) cscale_[j] = 1.0 / cmax;
            }
        }
        for (int j = 0; j < n_; ++j) {
            for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
                val_[e] *= rscale_[row_idx_[e]] * cscale_[j];
            }
        }

        b_.resize(m_);
        for (int r = 0; r < m_; ++r) b_[r] = prob_.rhs(r) * rscale_[r];

        cost_.resize(n_);
        lo_.resize(total_);
        up_.resize(total_);
        for (int j = 0; j < n_; ++j) {
            cost_[j] = -prob_.objective(j) * cscale_[j];  // maximize -> minimize
            lo_[j] = prob_.lower(j) / cscale_[j];
            up_[j] = prob_.upper(j) / cscale_[j];
        }
        for (int r = 0; r < m_; ++r) {
            const int j = n_ + r;
            lo_[j] = 0.0;
            up_[j] = (prob_.sense(r) == RowSense::Equal) ? 0.0 : kInf;
        }
    }

    double scaled_cost(int j) const { return j < n_ ? cost_[j] : 0.0; }

    template <typename Fn>
    void for_entries(int col, Fn&& fn) const {
        if (col < n_) {
            for (int e = col_start_[col]; e < col_start_[col + 1]; ++e) {
                fn(row_idx_[e], val_[e]);
            }
        } else {
            fn(col - n_, 1.0);
        }
    }

    double nonbasic_value(int j) const {
        switch (status_[j]) {
            case ColStatus::AtLower: return lo_[j];
            case ColStatus::AtUpper: return up_[j];
            case ColStatus::FreeNonbasic: return 0.0;
            case ColStatus::Basic: break;
        }
        return xb_[basis_pos_[j]];
    }

    ColStatus natural_nonbasic(int j) const {
        if (std::isfinite(lo_[j])) return ColStatus::AtLower;
        if (std::isfinite(up_[j])) return ColStatus::AtUpper;
        return ColStatus::FreeNonbasic;
    }

    void init_basis() {
        status_.assign(total_, ColStatus::AtLower);
        basis_pos_.assign(total_, -1);
        basis_.resize(m_);
        bool warm_ok = false;
        if (static_cast<int>(opt_.warm_start.size()) == total_) {
            std::vector<int> basics;
            basics.reserve(m_);
            for (int j = 0; j < total_; ++j) {
                ColStatus s = opt_.warm_start[j];
                if (s == ColStatus::Basic) {
                    basics.push_back(j);
                    status_[j] = ColStatus::Basic;
                } else {
                    if ((s == ColStatus::AtLower && !std::isfinite(lo_[j])) ||
                        (s == ColStatus::AtUpper && !std::isfinite(up_[j]))) {
                        s = natural_nonbasic(j);
                    }
                    status_[j] = s;
                }
            }
            if (static_cast<int>(basics.size()) == m_) {
                basis_ = basics;
                for (int p = 0; p < m_; ++p) basis_pos_[basis_[p]] = p;
                warm_ok = factorize();
            }
            if (!warm_ok) basis_pos_.assign(total_, -1);
        }
        if (!warm_ok) {
            for (int j = 0; j < n_; ++j) status_[j] = natural_nonbasic(j);
            for (int r = 0; r < m_; ++r) {
                const int j = n_ + r;
                basis_[r] = j;
                status_[j] = ColStatus::Basic;
                basis_pos_[j] = r;
            }
            binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
            for (int i = 0; i < m_; ++i) binv_[i + static_cast<std::size_t>(i) * m_] = 1.0;
            updates_since_factor_ = 0;
        }
        compute_xb();
    }

    // Dense Gauss-Jordan inverse of the basis matrix. Row-major scratch for
    // contiguous row operations, transposed into the column-major binv_.
    bool factorize() {
        const std::size_t mm = static_cast<std::size_t>(m_) * m_;
        std::vector<double> B(mm, 0.0), inv(mm, 0.0);
        for (int p = 0; p < m_; ++p) {
            for_entries(basis_[p], [&](int r, double v) {
                B[static_cast<std::size_t>(r) * m_ + p] = v;
            });
        }
        for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;

        for (int k = 0; k < m_; ++k) {
            int piv = k;
            double best = std::abs(B[static_cast<std::size_t>(k) * m_ + k]);
            for (int i = k + 1; i < m_; ++i) {
                const double a = std::abs(B[static_cast<std::size_t>(i) * m_ + k]);
                if (a > best) { best = a; piv = i; }
            }
            if (best < 1e-12) return false;
            if (piv != k) {
                for (int c = 0; c < m_; ++c) {
                    std::swap(B[static_cast<std::size_t>(piv) * m_ + c],
                              B[static_cast<std::size_t>(k) * m_ + c]);
                    std::swap(inv[static_cast<std::size_t>(piv) * m_ + c],
                              inv[static_cast<std::size_t>(k) * m_ + c]);
                }
            }
            double* Bk = &B[static_cast<std::size_t>(k) * m_];
            double* Ik = &inv[static_cast<std::size_t>(k) * m_];
            const double inv_piv = 1.0 / Bk[k];
            for (int c = 0; c < m_; ++c) { Bk[c] *= inv_piv; Ik[c] *= inv_piv; }
            for (int i = 0; i < m_; ++i) {
                if (i == k) continue;
                double* Bi = &B[static_cast<std::size_t>(i) * m_];
                const double f = Bi[k];
                if (f == 0.0) continue;
                double* Ii = &inv[static_cast<std::size_t>(i) * m_];
                for (int c = 0; c < m_; ++c) { Bi[c] -= f * Bk[c]; Ii[c] -= f * Ik[c]; }
            }
        }
        binv_.resize(mm);
        for (int i = 0; i < m_; ++i) {
            for (int c = 0; c < m_; ++c) {
                binv_[i + static_cast<std::size_t>(c) * m_] =
                    inv[static_cast<std::size_t>(i) * m_ + c];
            }
        }
        updates_since_factor_ = 0;
        return true;
    }

    void compute_xb() {
        std::vector<double> rhs(b_);
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == ColStatus::Basic) continue;
            const double v = nonbasic_value(j);
            if (v == 0.0) continue;
            for_entries(j, [&](int r, double a) { rhs[r] -= a * v; });
        }
        xb_.assign(m_, 0.0);
        for (int c = 0; c < m_; ++c) {
            const double rc = rhs[c];
            if (rc == 0.0) continue;
            const double* col = &binv_[static_cast<std::size_t>(c) * m_];
            for (int i = 0; i < m_; ++i) xb_[i] += rc * col[i];
        }
    }

    double basic_system_residual() const {
        std::vector<double> resid(b_);
        for (int j = 0; j < total_; ++j) {
            const double v = (status_[j] == ColStatus::Basic) ? xb_[basis_pos_[j]]
                                                              : nonbasic_value(j);
            if (v == 0.0) continue;
            for_entries(j, [&](int r, double a) { resid[r] -= a * v; });
        }
        double worst = 0.0;
        for (int r = 0; r < m_; ++r) worst = std::max(worst, std::abs(resid[r]));
        return worst;
    }

    double max_infeasibility() const {
        double worst = 0.0;
        for (int i = 0; i < m_; ++i) {
            const int j = basis_[i];
            worst = std::max(worst, lo_[j] - xb_[i]);
            worst = std::max(worst, xb_[i] - up_[j]);
        }
        return worst;
    }

    void compute_duals() {
        y_.assign(m_, 0.0);
        for (int c = 0; c < m_; ++c) {
            const double* col = &binv_[static_cast<std::size_t>(c) * m_];
            double sum = 0.0;
            for (int i = 0; i < m_; ++i) sum += cb_[i] * col[i];
            y_[c] = sum;
        }
    }

    double reduced_cost(int j, bool phase2) const {
        double d = phase2 ? scaled_cost(j) : 0.0;
        for_entries(j, [&](int r, double a) { d -= y_[r] * a; });
        return d;
    }

    void ftran(int col) {
        alpha_.assign(m_, 0.0);
        for_entries(col, [&](int r, double a) {
            const double* c = &binv_[static_cast<std::size_t>(r) * m_];
            for (int i = 0; i < m_; ++i) alpha_[i] += a * c[i];
        });
    }

    void update_binv(int r) {
        const double inv_piv = 1.0 / alpha_[r];
        for (int c = 0; c < m_; ++c) {
            double* col = &binv_[static_cast<std::size_t>(c) * m_];
            const double prc = col[r];
            if (prc == 0.0) continue;
            const double scaled = prc * inv_piv;
            for (int i = 0; i < m_; ++i) col[i] -= alpha_[i] * scaled;
            col[r] = scaled;
        }
        ++updates_since_factor_;
    }

    void reset_stall() {
        bland_ = false;
        stall_ = 0;
        stall_obj_ = kInf;
    }

    void track_stall(double obj) {
        if (obj < stall_obj_ - 1e-10 * (1.0 + std::abs(stall_obj_))) {
            stall_ = 0;
            stall_obj_ = obj;
        } else if (++stall_ >= kStallLimit) {
            bland_ = true;  // stays on for the rest of the phase
        }
    }

    int price(bool phase2, int* direction) {
        int best = -1;
        double best_score = 0.0;
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == ColStatus::Basic || lo_[j] == up_[j]) continue;
            const double d = reduced_cost(j, phase2);
            int dir = 0;
            if (status_[j] == ColStatus::AtLower) {
                if (d < -opt_.optimality_tol) dir = +1;
            } else if (status_[j] == ColStatus::AtUpper) {
                if (d > opt_.optimality_tol) dir = -1;
            } else {
                if (d < -opt_.optimality_tol) dir = +1;
                else if (d > opt_.optimality_tol) dir = -1;
            }
            if (dir == 0) continue;
            if (bland_) { *direction = dir; return j; }
            const double score = std::abs(d);
            if (score > best_score) {
                best_score = score;
                best = j;
                *direction = dir;
            }
        }
        return best;
    }

    struct Pivot {
        int entering = -1;
        int direction = +1;
        double theta = 0.0;
        int blocking_pos = -1;  // basis position, or -1 for a bound flip
        bool leaving_to_upper = false;
    };

    // Ratio test. In phase 1 a basic variable outside its bounds blocks when
    // it reaches the violated bound (first breakpoint); feasible basics block
    // at the bound they approach. Ties prefer the larger |pivot| for
    // stability, or the lowest column index under Bland's rule.
    bool ratio_test(int entering, int dir, bool phase2, Pivot* out) {
        double flip_theta = kInf;
        if (std::isfinite(lo_[entering]) && std::isfinite(up_[entering])) {
            flip_theta = up_[entering] - lo_[entering];
        }

        double best_t = kInf;
        int best_pos = -1;
        double best_alpha = 0.0;
        bool best_upper = false;
        const double ftol = opt_.feasibility_tol;

        for (int i = 0; i < m_; ++i) {
            const double a = alpha_[i];
            if (std::abs(a) <= kPivotTol) continue;
            const double rate = -dir * a;  // d(xb_i)/d(theta)
            const int j = basis_[i];
            const double v = xb_[i];
            double bound;
            bool hits_upper;
            if (!phase2 && v < lo_[j] - ftol) {
                if (rate <= 0.0) continue;  // moving further out: no block here
                bound = lo_[j];
                hits_upper = false;
            } else if (!phase2 && v > up_[j] + ftol) {
                if (rate >= 0.0) continue;
                bound = up_[j];
                hits_upper = true;
            } else if (rate > 0.0) {
                if (!std::isfinite(up_[j])) continue;
                bound = up_[j];
                hits_upper = true;
            } else {
                if (!std::isfinite(lo_[j])) continue;
                bound = lo_[j];
                hits_upper = false;
            }
            double t = (bound - v) / rate;
            if (t < 0.0) t = 0.0;  // within-tolerance overshoot: degenerate step

            bool take;
            if (best_pos < 0) {
                take = t < best_t;
            } else {
                const double eps = 1e-12 * (1.0 + best_t);
                if (t < best_t - eps) {
                    take = true;
                } else if (t <= best_t + eps) {
                    take = bland_ ? j < basis_[best_pos] : std::abs(a) > std::abs(best_alpha);
                } else {
                    take = false;
                }
            }
            if (take) {
                best_t = std::min(t, best_t);
                best_pos = i;
                best_alpha = a;
                best_upper = hits_upper;
            }
        }

        out->entering = entering;
        out->direction = dir;
        if (best_pos >= 0 && best_t < flip_theta) {
            out->theta = best_t;
            out->blocking_pos = best_pos;
            out->leaving_to_upper = best_upper;
            return true;
        }
        if (std::isfinite(flip_theta)) {
            out->theta = flip_theta;
            out->blocking_pos = -1;
            return true;
        }
        return false;  // unbounded direction
    }

    void apply(const Pivot& p) {
        if (p.theta != 0.0) {
            for (int i = 0; i < m_; ++i) xb_[i] += -p.direction * alpha_[i] * p.theta;
        }
        ++iterations_;
        if (p.blocking_pos < 0) {
            status_[p.entering] =
                (p.direction > 0) ? ColStatus::AtUpper : ColStatus::AtLower;
            return;
        }
        const int r = p.blocking_pos;
        const int leaving = basis_[r];
        const double enter_value = nonbasic_value(p.entering) + p.direction * p.theta;
        status_[leaving] = p.leaving_to_upper ? ColStatus::AtUpper : ColStatus::AtLower;
        basis_pos_[leaving] = -1;
        update_binv(r);
        basis_[r] = p.entering;
        basis_pos_[p.entering] = r;
        status_[p.entering] = ColStatus::Basic;
        xb_[r] = enter_value;
        if (updates_since_factor_ >= kRefactorInterval) {
            if (factorize()) compute_xb();
        }
    }

    int iteration_budget() const {
        return opt_.max_iterations > 0 ? opt_.max_iterations
                                       : std::max(20000, 50 * (m_ + n_));
    }

    SolveStatus phase1() {
        reset_stall();
        const int budget = iteration_budget();
        for (;;) {
            double total_viol = 0.0;
            cb_.assign(m_, 0.0);
            for (int i = 0; i < m_; ++i) {
                const int j = basis_[i];
                if (xb_[i] < lo_[j] - opt_.feasibility_tol) {
                    cb_[i] = -1.0;
                    total_viol += lo_[j] - xb_[i];
                } else if (xb_[i] > up_[j] + opt_.feasibility_tol) {
                    cb_[i] = 1.0;
                    total_viol += xb_[i] - up_[j];
                }
            }
            if (total_viol == 0.0) return SolveStatus::Optimal;
            if (iterations_ >= budget) return SolveStatus::IterationLimit;
            track_stall(total_viol);

            compute_duals();
            int dir = 0;
            const int entering = price(false, &dir);
            if (entering < 0) return SolveStatus::Infeasible;
            ftran(entering);
            Pivot p;
            if (!ratio_test(entering, dir, false, &p)) {
                // A strictly improving unblocked ray cannot exist when
                // minimizing a nonnegative violation sum.
                return SolveStatus::NumericalFailure;
            }
            apply(p);
        }
    }

    SolveStatus phase2() {
        reset_stall();
        const int budget = iteration_budget();
        for (;;) {
            if (iterations_ >= budget) return SolveStatus::IterationLimit;
            cb_.assign(m_, 0.0);
            double obj = 0.0;
            for (int i = 0; i < m_; ++i) {
                cb_[i] = scaled_cost(basis_[i]);
                obj += cb_[i] * xb_[i];
            }
            track_stall(obj);
            compute_duals();
            int dir = 0;
            const int entering = price(true, &dir);
            if (entering < 0) return SolveStatus::Optimal;
            ftran(entering);
            Pivot p;
            if (!ratio_test(entering, dir, true, &p)) return SolveStatus::Unbounded;
            apply(p);
        }
    }

    LpSolution finish(SolveStatus status) {
        LpSolution out;
        out.status = status;
        out.iterations = iterations_;
        if (status != SolveStatus::Optimal) {
            std::ostringstream os;
            os << to_string(status) << " after " << iterations_ << " iterations";
            if (status == SolveStatus::Infeasible) {
                os << ", residual infeasibility " << max_infeasibility();
            }
            out.diagnostics = os.str();
            out.col_status = status_;
            return out;
        }

        // Unscale; snap round-off onto bounds so callers see clean values.
        out.x.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            double v = (status_[j] == ColStatus::Basic) ? xb_[basis_pos_[j]]
                                                        : nonbasic_value(j);
            v *= cscale_[j];
            const double lo = prob_.lower(j), up = prob_.upper(j);
            const double snap = 10.0 * opt_.feasibility_tol * (1.0 + std::abs(v));
            if (v < lo && v > lo - snap) v = lo;
            if (v > up && v < up + snap) v = up;
            out.x[j] = v;
        }
        out.objective = prob_.objective_value(out.x);

        cb_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) cb_[i] = scaled_cost(basis_[i]);
        compute_duals();
        out.row_duals.assign(m_, 0.0);
        for (int r = 0; r < m_; ++r) out.row_duals[r] = -y_[r] * rscale_[r];
        out.col_status = status_;
        return out;
    }
};

}  // namespace

LpSolution solve(const LpProblem& problem, const SolverOptions& options) {
    problem.validate();
    Simplex simplex(problem, options);
    return simplex.run();
}

// --- SimplexEngine -----------------------------------------------------------

struct SimplexEngine::Impl {
    bool has_state = false;
    BasisSnapshot snap;
    // Structure fingerprint: seeding is only sound when the constraint
    // matrix, bounds, and senses are unchanged (objective and rhs may vary).
    int n = 0, m = 0;
    std::vector<int> row_cols;
    std::vector<double> row_vals;
    std::vector<double> lower, upper;
    std::vector<RowSense> senses;

    bool matches(const LpProblem& p) const {
        if (!has_state || p.n_cols() != n || p.n_rows() != m || m == 0) return false;
        if (static_cast<int>(row_cols.size()) != p.row_end(m - 1) - p.row_begin(0)) {
            return false;
        }
        int e = 0;
        for (int r = 0; r < m; ++r) {
            if (senses[r] != p.sense(r)) return false;
            for (int idx = p.row_begin(r); idx < p.row_end(r); ++idx, ++e) {
                if (row_cols[e] != p.entry_col(idx) || row_vals[e] != p.entry_value(idx)) {
                    return false;
                }
            }
        }
        for (int j = 0; j < n; ++j) {
            if (lower[j] != p.lower(j) || upper[j] != p.upper(j)) return false;
        }
        return true;
    }

    void capture(const LpProblem& p, const BasisSnapshot& s) {
        has_state = true;
        snap = s;
        n = p.n_cols();
        m = p.n_rows();
        row_cols.clear();
        row_vals.clear();
        senses.resize(m);
        for (int r = 0; r < m; ++r) {
            senses[r] = p.sense(r);
            for (int idx = p.row_begin(r); idx < p.row_end(r); ++idx) {
                row_cols.push_back(p.entry_col(idx));
                row_vals.push_back(p.entry_value(idx));
            }
        }
        lower.resize(n);
        upper.resize(n);
        for (int j = 0; j < n; ++j) {
            lower[j] = p.lower(j);
            upper[j] = p.upper(j);
        }
    }
};

SimplexEngine::SimplexEngine() : impl_(std::make_unique<Impl>()) {}
SimplexEngine::~SimplexEngine() = default;
SimplexEngine::SimplexEngine(SimplexEngine&&) noexcept = default;
SimplexEngine& SimplexEngine::operator=(SimplexEngine&&) noexcept = default;

void SimplexEngine::reset() { impl_->has_state = false; }

LpSolution SimplexEngine::solve(const LpProblem& problem, const SolverOptions& options) {
    problem.validate();
    Simplex simplex(problem, options);
    if (impl_->matches(problem)) {
        simplex.seed(impl_->snap);  // falls back to a cold start when unusable
    }
    LpSolution sol = simplex.run();
    if (sol.optimal()) {
        impl_->capture(problem, simplex.snapshot());
    } else {
        impl_->has_state = false;
    }
    return sol;
}

}  // namespace pevfleet
