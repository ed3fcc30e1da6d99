#ifndef PEVFLEET_SIMPLEX_HPP
#define PEVFLEET_SIMPLEX_HPP

#include <memory>
#include <string>
#include <vector>

#include "pevfleet/lp_problem.hpp"

namespace pevfleet {

enum class SolveStatus : unsigned char {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NumericalFailure,
};

const char* to_string(SolveStatus status);

/// Column role in the final basis; exposed so a later solve on a problem with
/// identical structure can start from this basis instead of from scratch.
enum class ColStatus : signed char { Basic = 0, AtLower = 1, AtUpper = 2, FreeNonbasic = 3 };

struct SolverOptions {
    double feasibility_tol = 1e-7;   // bound/row violation, scaled space
    double optimality_tol = 1e-9;    // reduced-cost threshold, scaled space
    int max_iterations = 0;          // 0 = derive from problem size
    bool equilibrate = true;
    // Basis statuses from a previous solve of a structurally identical
    // problem (structural columns first, then one slack per row). Ignored
    // when empty or unusable; never affects the optimum, only the path.
    std::vector<ColStatus> warm_start;
};

struct LpSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    double objective = 0.0;             // value of the maximize objective
    std::vector<double> x;              // structural column values
    std::vector<double> row_duals;      // sign convention of the max problem
    std::vector<ColStatus> col_status;  // structural + slack, for warm starts
    int iterations = 0;
    std::string diagnostics;

    bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Bounded-variable revised simplex with a composite (infeasibility-sum)
/// phase 1, Dantzig pricing with a Bland's-rule fallback on stalls, explicit
/// basis inverse with periodic refactorization, and equilibration scaling.
/// Deterministic: identical problems produce identical solutions.
LpSolution solve(const LpProblem& problem, const SolverOptions& options = {});

/// Stateful wrapper for receding-horizon use: when consecutive problems share
/// the constraint matrix, bounds, and senses (only objective and right-hand
/// sides differing), the previous factorized basis seeds the next solve.
/// Results are identical to cold solve(); only the pivot path is shorter.
class SimplexEngine {
public:
    SimplexEngine();
    ~SimplexEngine();
    SimplexEngine(SimplexEngine&&) noexcept;
    SimplexEngine& operator=(SimplexEngine&&) noexcept;

    LpSolution solve(const LpProblem& problem, const SolverOptions& options = {});
    void reset();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace pevfleet

#endif
