#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rpsp/generate.hpp"
#include "rpsp/instance.hpp"
#include "rpsp/simplex.hpp"

/// 0/1 integer program of an instance, its LP relaxation, threshold rounding
/// and the rounding-quality experiment.
namespace rpsp::relax {

enum class VarKind { Player, Reward, Penalty };

struct Variable {
    std::string name;  // x<u>, y<i>, z<j>, 1-based
    VarKind kind = VarKind::Player;
    int index = 0;     // player (1-based) or set index (0-based)
    double objective = 0.0;
};

/// sum coef * var <= rhs
struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
};

/// Variables x_1..x_n, y_1..y_h, z_1..z_l in that order; one constraint per
/// penalty set, then one per reward set.
///
/// Hit-reward mode:   sum_{u in B} x_u - z <= |B| - 1   and   y - sum_{u in A} x_u <= 0.
/// Cover-reward mode: sum_{u in B} x_u - |B| z <= 0     and   |A| y - sum_{u in A} x_u <= 0.
struct IPModel {
    ObjectiveMode mode = ObjectiveMode::HitRewardCoverPenalty;
    int players = 0;
    int rewards = 0;
    int penalties = 0;
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;

    int player_var(int player) const { return player - 1; }
    int reward_var(int i) const { return players + i; }
    int penalty_var(int j) const { return players + rewards + j; }
};

IPModel build_ip(const Instance& instance);

/// Relaxation with all bounds [0, 1].
LinearProgram to_linear_program(const IPModel& model);

struct LpSolution {
    std::vector<double> values;  // parallel to model.variables
    double objective = 0.0;
    int iterations = 0;
    double max_residual = 0.0;

    /// x_u for players 1..n (index 0 is player 1).
    std::vector<double> player_values(const IPModel& model) const;
};

LpSolution solve_lp(const IPModel& model);

inline constexpr double kRoundingThreshold = 0.5;

/// Selects player u+1 iff x[u] >= 0.5 and evaluates the selection on the instance.
Selection round_solution(const Instance& instance, const std::vector<double>& player_values);

enum class ExactSolver { Brute, TreeDp };

/// Exact optimum with the requested solver, or nothing when that solver does not
/// apply at this size (brute force: n <= 24; treedp: singleton rewards and a
/// reduced graph of at most 20 nodes).
std::optional<Selection> exact_optimum(const Instance& instance, ExactSolver solver);

struct RelaxationReport {
    LpSolution lp;
    Selection rounded;
    Selection optimum;
    int delta_round = 0;           // players on which rounded and optimum differ
    std::optional<double> alpha;   // rounded / optimum; unset when the optimum is 0 < |rounded|
};

/// Throws ErrorKind::SizeLimit when the exact solver does not apply.
RelaxationReport relax_and_round(const Instance& instance, ExactSolver solver = ExactSolver::Brute);

/// Distance between two selections as 0/1 player vectors.
int selection_distance(const std::vector<Player>& a, const std::vector<Player>& b);

struct ExperimentRow {
    InstanceConfig config;
    int trials = 0;
    bool reproducible = true;
    std::string note;
    double delta_avg = 0.0;
    int delta_max = 0;
    double alpha_avg = 0.0;
    double alpha_min = 0.0;
    int alpha_counted = 0;
    int alpha_excluded = 0;
};

/// Trial t uses the instance generated with seed derive_seed(config.seed, t).
ExperimentRow run_experiment(const InstanceConfig& config, int trials, ExactSolver solver = ExactSolver::Brute);

struct ReferenceRow {
    int n, r, p;
    double beta;
    double delta_avg;
    int delta_max;
    double alpha_avg;
    double alpha_min;
};
/// Published n = 100 results, echoed next to rows that cannot be reproduced here.
const std::vector<ReferenceRow>& reference_rows();

std::string csv_header();
/// Data line, or comment lines ('#') for a row that is not reproducible.
/// Empty for zero trials.
std::string to_csv(const ExperimentRow& row);

/// CPLEX-LP text; `relaxed` writes 0 <= v <= 1 bounds instead of a Binary section.
std::string to_cplex_lp(const IPModel& model, bool relaxed = false);

struct LpDimensions {
    int variables = 0;
    int constraints = 0;
    int binaries = 0;
    int bounded = 0;
};
/// Minimal reader for the sections written by to_cplex_lp.
LpDimensions parse_lp_dimensions(const std::string& text);

}  // namespace rpsp::relax
