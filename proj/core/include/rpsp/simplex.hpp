#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace rpsp {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// max c.x  s.t.  rows: sum a_ij x_j <= b_i,  0 <= x_j <= upper_j.
/// Every b_i must be >= 0 so the slack basis is a feasible start.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<double> upper;  // kUnbounded allowed
    std::vector<std::vector<std::pair<int, double>>> rows;
    std::vector<double> rhs;

    int variable_count() const { return static_cast<int>(objective.size()); }
    int row_count() const { return static_cast<int>(rows.size()); }
};

struct LpResult {
    std::vector<double> x;
    double objective = 0.0;
    int iterations = 0;
    double max_residual = 0.0;  // worst row or bound violation
};

/// Dense bounded-variable primal simplex (Dantzig pricing, Bland's rule after
/// a run of degenerate pivots). Throws ErrorKind::Solver when the program is
/// unbounded, the start is infeasible, the iteration limit is hit, or the
/// final residual exceeds 1e-7.
LpResult solve_simplex(const LinearProgram& lp);

}  // namespace rpsp
