#pragma once

#include <limits>
#include <vector>

namespace xorbid::solver {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { minimize, maximize };
enum class RowSense { less_equal, equal, greater_equal };
enum class SolveStatus { optimal, infeasible, unbounded };

// Repo-wide solver tolerances (spec'd defaults); every solve accepts an
// override.
struct SolverSettings {
    double feasibility_tol = 1e-7;
    double integrality_tol = 1e-6;
    double relative_gap_tol = 1e-6;   // duality-gap acceptance, relative
    double pivot_tol = 1e-9;
    int stall_limit = 300;            // non-improving pivots before Bland's rule
    long iteration_limit = 1000000;
    long node_limit = 2000000;
    int refactor_interval = 120;
};

struct LinearProgram {
    struct Row {
        std::vector<int> cols;
        std::vector<double> vals;
        RowSense sense = RowSense::less_equal;
        double rhs = 0.0;
    };

    Sense sense = Sense::maximize;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;

    int num_cols() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    int add_column(double lb, double ub, double obj);
    void add_row(RowSense sense, double rhs,
                 std::vector<int> cols, std::vector<double> vals);

    // Throws ValidationError: NaN anywhere, non-finite rhs/objective,
    // out-of-range or duplicate column indices, lower > upper.
    void validate() const;
};

struct MixedIntegerProgram {
    LinearProgram lp;
    std::vector<int> integer_cols;  // restricted to integers (binaries via [0,1] bounds)

    void validate() const;
};

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    double objective = 0.0;
    std::vector<double> x;
    // Pure LP only: one dual per row, signed for the problem as stated
    // (shadow price of the rhs in the original orientation).
    std::vector<double> row_duals;
    // Independently recomputed dual objective (bound terms included);
    // matches `objective` at optimality up to tolerance.
    double dual_objective = 0.0;
    long iterations = 0;

    // MILP extras.
    double best_bound = 0.0;
    long nodes = 0;
};

Solution solve_lp(const LinearProgram& lp, const SolverSettings& settings = {});

// Same program with substituted variable bounds (no revalidation); this is
// what branch-and-bound nodes use.
Solution solve_lp_bounded(const LinearProgram& lp,
                          const std::vector<double>& lower,
                          const std::vector<double>& upper,
                          const SolverSettings& settings = {});

Solution solve_milp(const MixedIntegerProgram& mip, double gap_tolerance = 0.0,
                    const SolverSettings& settings = {});

}  // namespace xorbid::solver
