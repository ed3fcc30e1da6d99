#include "pevfleet/lp_problem.hpp"

#include <cmath>
#include <sstream>

namespace pevfleet {

int LpProblem::add_col(double objective, double lower, double upper) {
    objective_.push_back(objective);
    lower_.push_back(lower);
    upper_.push_back(upper);
    return n_cols() - 1;
}

int LpProblem::add_row(RowSense sense, double rhs,
                       const std::vector<std::pair<int, double>>& terms) {
    sense_.push_back(sense);
    rhs_.push_back(rhs);
    for (const auto& [col, coef] : terms) {
        if (coef == 0.0) continue;
        col_index_.push_back(col);
        value_.push_back(coef);
    }
    row_start_.push_back(static_cast<int>(col_index_.size()));
    return n_rows() - 1;
}

void LpProblem::set_bounds(int col, double lower, double upper) {
    lower_[col] = lower;
    upper_[col] = upper;
}

double LpProblem::row_activity(int row, const std::vector<double>& x) const {
    double sum = 0.0;
    for (int idx = row_begin(row); idx < row_end(row); ++idx) {
        sum += value_[idx] * x[col_index_[idx]];
    }
    return sum;
}

double LpProblem::objective_value(const std::vector<double>& x) const {
    double sum = 0.0;
    for (int j = 0; j < n_cols(); ++j) sum += objective_[j] * x[j];
    return sum;
}

void LpProblem::validate() const {
    for (int j = 0; j < n_cols(); ++j) {
        if (!std::isfinite(objective_[j])) {
            throw ValidationError("lp: objective coefficient not finite at col " +
                                  std::to_string(j));
        }
        if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] > upper_[j]) {
            std::ostringstream os;
            os << "lp: bad bounds [" << lower_[j] << ", " << upper_[j] << "] at col " << j;
            throw ValidationError(os.str());
        }
    }
    for (std::size_t idx = 0; idx < col_index_.size(); ++idx) {
        if (col_index_[idx] < 0 || col_index_[idx] >= n_cols()) {
            throw ValidationError("lp: row entry references unknown column");
        }
        if (!std::isfinite(value_[idx])) {
            throw ValidationError("lp: constraint coefficient not finite");
        }
    }
    for (int r = 0; r < n_rows(); ++r) {
        if (!std::isfinite(rhs_[r])) {
            throw ValidationError("lp: right-hand side not finite at row " + std::to_string(r));
        }
    }
}

}  // namespace pevfleet
