#include "rpsp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rpsp/error.hpp"

namespace rpsp {

namespace {

constexpr double kCostEps = 1e-9;
constexpr double kPivotEps = 1e-11;
constexpr double kResidualLimit = 1e-7;
constexpr int kDegenerateRun = 50;
constexpr int kIterationLimit = 100000;

}  // namespace

LpResult solve_simplex(const LinearProgram& lp) {
    const int n = lp.variable_count();
    const int m = lp.row_count();
    if (static_cast<int>(lp.upper.size()) != n || static_cast<int>(lp.rhs.size()) != m)
        throw Error(ErrorKind::Solver, "linear program has inconsistent dimensions");
    for (int i = 0; i < m; ++i)
        if (lp.rhs[static_cast<std::size_t>(i)] < 0)
            throw Error(ErrorKind::Solver, "row " + std::to_string(i) + " has a negative right-hand side");
    const int total = n + m;
    const auto cols = static_cast<std::size_t>(total);

    std::vector<double> tab(static_cast<std::size_t>(m) * cols, 0.0);
    auto at = [&](int i, int j) -> double& { return tab[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)]; };
    for (int i = 0; i < m; ++i) {
        for (auto [j, a] : lp.rows[static_cast<std::size_t>(i)]) {
            if (j < 0 || j >= n) throw Error(ErrorKind::Solver, "row references unknown variable");
            at(i, j) += a;
        }
        at(i, n + i) = 1.0;
    }
    std::vector<double> upper(cols, kUnbounded);
    std::vector<double> cost(cols, 0.0);
    for (int j = 0; j < n; ++j) {
        upper[static_cast<std::size_t>(j)] = lp.upper[static_cast<std::size_t>(j)];
        cost[static_cast<std::size_t>(j)] = lp.objective[static_cast<std::size_t>(j)];
        if (upper[static_cast<std::size_t>(j)] < 0) throw Error(ErrorKind::Solver, "negative upper bound");
    }
    std::vector<double> x(cols, 0.0);
    std::vector<int> basis(static_cast<std::size_t>(m));
    std::vector<int> row_of(cols, -1);
    for (int i = 0; i < m; ++i) {
        basis[static_cast<std::size_t>(i)] = n + i;
        row_of[static_cast<std::size_t>(n + i)] = i;
        x[static_cast<std::size_t>(n + i)] = lp.rhs[static_cast<std::size_t>(i)];
    }
    std::vector<double> reduced = cost;  // slack basis has zero cost

    LpResult result;
    int degenerate = 0;
    while (true) {
        if (result.iterations >= kIterationLimit)
            throw Error(ErrorKind::Solver, "simplex iteration limit reached");
        bool bland = degenerate >= kDegenerateRun;
        int enter = -1;
        double best = 0.0;
        for (int j = 0; j < total; ++j) {
            if (row_of[static_cast<std::size_t>(j)] >= 0) continue;
            double d = reduced[static_cast<std::size_t>(j)];
            bool at_upper = upper[static_cast<std::size_t>(j)] < kUnbounded && x[static_cast<std::size_t>(j)] >= upper[static_cast<std::size_t>(j)];
            double gain = at_upper ? -d : d;
            if (gain <= kCostEps) continue;
            if (bland) {
                enter = j;
                break;
            }
            if (gain > best) {
                best = gain;
                enter = j;
            }
        }
        if (enter < 0) break;
        ++result.iterations;
        const auto je = static_cast<std::size_t>(enter);
        const double dir = (upper[je] < kUnbounded && x[je] >= upper[je]) ? -1.0 : 1.0;

        double step = upper[je];  // bound flip distance
        int leave_row = -1;
        bool leave_to_upper = false;
        double leave_alpha = 0.0;
        for (int i = 0; i < m; ++i) {
            double alpha = dir * at(i, enter);
            const auto b = static_cast<std::size_t>(basis[static_cast<std::size_t>(i)]);
            double limit;
            bool to_upper;
            if (alpha > kPivotEps) {
                limit = std::max(0.0, x[b]) / alpha;
                to_upper = false;
            } else if (alpha < -kPivotEps && upper[b] < kUnbounded) {
                limit = std::max(0.0, upper[b] - x[b]) / -alpha;
                to_upper = true;
            } else {
                continue;
            }
            bool take = false;
            if (limit < step - 1e-12) {
                take = true;
            } else if (leave_row >= 0 && limit <= step + 1e-12) {
                take = bland ? basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave_row)]
                             : std::abs(alpha) > std::abs(leave_alpha);
            }
            if (take) {
                step = limit;
                leave_row = i;
                leave_to_upper = to_upper;
                leave_alpha = alpha;
            }
        }
        if (step == kUnbounded) throw Error(ErrorKind::Solver, "linear program is unbounded");
        degenerate = step <= 1e-12 ? degenerate + 1 : 0;

        x[je] += dir * step;
        for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] -= dir * step * at(i, enter);
        if (leave_row < 0) {
            x[je] = dir > 0 ? upper[je] : 0.0;
            continue;
        }
        const auto leaving = static_cast<std::size_t>(basis[static_cast<std::size_t>(leave_row)]);
        x[leaving] = leave_to_upper ? upper[leaving] : 0.0;

        double pivot = at(leave_row, enter);
        for (int j = 0; j < total; ++j) at(leave_row, j) /= pivot;
        for (int i = 0; i < m; ++i) {
            if (i == leave_row) continue;
            double f = at(i, enter);
            if (f == 0.0) continue;
            for (int j = 0; j < total; ++j) at(i, j) -= f * at(leave_row, j);
            at(i, enter) = 0.0;
        }
        double f = reduced[je];
        for (int j = 0; j < total; ++j) reduced[static_cast<std::size_t>(j)] -= f * at(leave_row, j);
        reduced[je] = 0.0;
        row_of[leaving] = -1;
        row_of[je] = leave_row;
        basis[static_cast<std::size_t>(leave_row)] = enter;
    }

    result.x.assign(x.begin(), x.begin() + n);
    double residual = 0.0;
    for (int j = 0; j < n; ++j) {
        double v = result.x[static_cast<std::size_t>(j)];
        residual = std::max(residual, -v);
        if (lp.upper[static_cast<std::size_t>(j)] < kUnbounded) residual = std::max(residual, v - lp.upper[static_cast<std::size_t>(j)]);
        result.objective += lp.objective[static_cast<std::size_t>(j)] * v;
    }
    for (int i = 0; i < m; ++i) {
        double lhs = 0.0;
        for (auto [j, a] : lp.rows[static_cast<std::size_t>(i)]) lhs += a * result.x[static_cast<std::size_t>(j)];
        residual = std::max(residual, lhs - lp.rhs[static_cast<std::size_t>(i)]);
    }
    result.max_residual = residual;
    if (residual > kResidualLimit) {
        std::ostringstream os;
        os << "simplex ended with residual " << residual << " after " << result.iterations << " iterations ("
           << n << " variables, " << m << " rows)";
        throw Error(ErrorKind::Solver, os.str());
    }
    return result;
}

}  // namespace rpsp
