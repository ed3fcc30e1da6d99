#ifndef PEVFLEET_LP_PROBLEM_HPP
#define PEVFLEET_LP_PROBLEM_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pevfleet/errors.hpp"

namespace pevfleet {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense : unsigned char { Equal, LessEq };

/// Sparse linear program: maximize objective'x subject to row constraints
/// (equality or <=) and per-column bounds. Rows are stored CSR.
class LpProblem {
public:
    int n_cols() const { return static_cast<int>(objective_.size()); }
    int n_rows() const { return static_cast<int>(rhs_.size()); }

    int add_col(double objective, double lower, double upper);
    int add_row(RowSense sense, double rhs, const std::vector<std::pair<int, double>>& terms);

    double objective(int col) const { return objective_[col]; }
    double lower(int col) const { return lower_[col]; }
    double upper(int col) const { return upper_[col]; }
    void set_bounds(int col, double lower, double upper);
    void set_objective(int col, double value) { objective_[col] = value; }
    void set_rhs(int row, double value) { rhs_[row] = value; }

    RowSense sense(int row) const { return sense_[row]; }
    double rhs(int row) const { return rhs_[row]; }

    // CSR access for solvers and exporters.
    int row_begin(int row) const { return row_start_[row]; }
    int row_end(int row) const { return row_start_[row + 1]; }
    int entry_col(int idx) const { return col_index_[idx]; }
    double entry_value(int idx) const { return value_[idx]; }

    /// Evaluates one row's left-hand side at x.
    double row_activity(int row, const std::vector<double>& x) const;
    double objective_value(const std::vector<double>& x) const;

    /// Checks structural soundness: finite coefficients, valid column
    /// references, lower <= upper. Throws ValidationError on defects.
    void validate() const;

private:
    std::vector<double> objective_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<RowSense> sense_;
    std::vector<double> rhs_;
    std::vector<int> row_start_{0};
    std::vector<int> col_index_;
    std::vector<double> value_;
};

}  // namespace pevfleet

#endif
