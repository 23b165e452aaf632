#include "rpsp/relax.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "rpsp/brute_force.hpp"
#include "rpsp/decomposition.hpp"
#include "rpsp/error.hpp"
#include "rpsp/treedp.hpp"

namespace rpsp::relax {

IPModel build_ip(const Instance& instance) {
    require_valid(instance);
    IPModel model;
    model.mode = instance.mode;
    model.players = instance.n;
    model.rewards = static_cast<int>(instance.reward_sets.size());
    model.penalties = static_cast<int>(instance.penalty_sets.size());
    for (int u = 1; u <= instance.n; ++u) model.variables.push_back({"x" + std::to_string(u), VarKind::Player, u, 0.0});
    for (int i = 0; i < model.rewards; ++i)
        model.variables.push_back({"y" + std::to_string(i + 1), VarKind::Reward, i,
                                   instance.reward_sets[static_cast<std::size_t>(i)].weight});
    for (int j = 0; j < model.penalties; ++j)
        model.variables.push_back({"z" + std::to_string(j + 1), VarKind::Penalty, j,
                                   -instance.penalty_sets[static_cast<std::size_t>(j)].weight});

    const bool hit = instance.mode == ObjectiveMode::HitRewardCoverPenalty;
    for (int j = 0; j < model.penalties; ++j) {
        const auto& members = instance.penalty_sets[static_cast<std::size_t>(j)].members;
        const double size = static_cast<double>(members.size());
        Constraint c{"pen" + std::to_string(j + 1), {}, hit ? size - 1.0 : 0.0};
        for (Player u : members) c.terms.emplace_back(model.player_var(u), 1.0);
        c.terms.emplace_back(model.penalty_var(j), hit ? -1.0 : -size);
        model.constraints.push_back(std::move(c));
    }
    for (int i = 0; i < model.rewards; ++i) {
        const auto& members = instance.reward_sets[static_cast<std::size_t>(i)].members;
        const double size = static_cast<double>(members.size());
        Constraint c{"rew" + std::to_string(i + 1), {}, 0.0};
        c.terms.emplace_back(model.reward_var(i), hit ? 1.0 : size);
        for (Player u : members) c.terms.emplace_back(model.player_var(u), -1.0);
        model.constraints.push_back(std::move(c));
    }
    return model;
}

LinearProgram to_linear_program(const IPModel& model) {
    LinearProgram lp;
    for (const auto& v : model.variables) {
        lp.objective.push_back(v.objective);
        lp.upper.push_back(1.0);
    }
    for (const auto& c : model.constraints) {
        lp.rows.push_back(c.terms);
        lp.rhs.push_back(c.rhs);
    }
    return lp;
}

std::vector<double> LpSolution::player_values(const IPModel& model) const {
    return std::vector<double>(values.begin(), values.begin() + model.players);
}

LpSolution solve_lp(const IPModel& model) {
    LpResult r = solve_simplex(to_linear_program(model));
    LpSolution out;
    out.values = std::move(r.x);
    out.objective = r.objective;
    out.iterations = r.iterations;
    out.max_residual = r.max_residual;
    return out;
}

Selection round_solution(const Instance& instance, const std::vector<double>& player_values) {
    std::vector<Player> chosen;
    for (std::size_t u = 0; u < player_values.size(); ++u)
        if (player_values[u] >= kRoundingThreshold - 1e-9) chosen.push_back(static_cast<Player>(u) + 1);
    return make_selection(instance, std::move(chosen));
}

std::optional<Selection> exact_optimum(const Instance& instance, ExactSolver solver) {
    if (solver == ExactSolver::Brute) {
        if (instance.n > kDefaultBruteForceCap) return std::nullopt;
        return brute_force(instance);
    }
    if (instance.mode != ObjectiveMode::HitRewardCoverPenalty || !has_singleton_rewards(instance)) return std::nullopt;
    auto g = treedp::build_reduced_graph(instance);
    if (g.node_count() > 20) return std::nullopt;
    return treedp::solve_treedp(instance, exact_decomposition(g.graph));
}

int selection_distance(const std::vector<Player>& a, const std::vector<Player>& b) {
    std::vector<Player> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    return static_cast<int>(diff.size());
}

RelaxationReport relax_and_round(const Instance& instance, ExactSolver solver) {
    auto optimum = exact_optimum(instance, solver);
    if (!optimum) throw Error(ErrorKind::SizeLimit, "no exact solver applies to this instance");
    RelaxationReport report;
    IPModel model = build_ip(instance);
    report.lp = solve_lp(model);
    report.rounded = round_solution(instance, report.lp.player_values(model));
    report.optimum = *optimum;
    report.delta_round = selection_distance(report.rounded.members, report.optimum.members);
    double opt = report.optimum.value;
    double got = report.rounded.value;
    if (std::abs(opt) <= kValueTolerance) {
        if (std::abs(got) <= kValueTolerance) report.alpha = 1.0;
    } else {
        report.alpha = got / opt;
    }
    return report;
}

namespace {

bool experiment_feasible(const InstanceConfig& config, ExactSolver solver, std::string& why) {
    if (solver == ExactSolver::Brute) {
        if (config.n <= kDefaultBruteForceCap) return true;
        why = "brute force needs n <= " + std::to_string(kDefaultBruteForceCap);
        return false;
    }
    if (max_set_size(config) == 1 && config.n + config.p <= 20) return true;
    why = "treedp exact path needs singleton reward sets and at most 20 graph nodes";
    return false;
}

}  // namespace

ExperimentRow run_experiment(const InstanceConfig& config, int trials, ExactSolver solver) {
    if (trials < 0) throw Error(ErrorKind::InfeasibleConfig, "trial count must be non-negative");
    ExperimentRow row;
    row.config = config;
    row.trials = trials;
    if (!experiment_feasible(config, solver, row.note)) {
        row.reproducible = false;
        return row;
    }
    double delta_sum = 0.0;
    double alpha_sum = 0.0;
    row.alpha_min = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        InstanceConfig trial = config;
        trial.seed = derive_seed(config.seed, static_cast<std::uint64_t>(t));
        RelaxationReport report = relax_and_round(generate(trial), solver);
        delta_sum += report.delta_round;
        row.delta_max = std::max(row.delta_max, report.delta_round);
        if (report.alpha) {
            alpha_sum += *report.alpha;
            row.alpha_min = std::min(row.alpha_min, *report.alpha);
            ++row.alpha_counted;
        } else {
            ++row.alpha_excluded;
        }
    }
    if (trials > 0) row.delta_avg = delta_sum / trials;
    if (row.alpha_counted > 0) {
        row.alpha_avg = alpha_sum / row.alpha_counted;
    } else {
        row.alpha_avg = std::numeric_limits<double>::quiet_NaN();
        row.alpha_min = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows{
        {100, 100, 100, 0.25, 13.743, 31, 0.958, 0.574}, {100, 100, 100, 0.5, 7.01, 24, 0.974, 0.451},
        {100, 100, 100, 0.75, 1.646, 19, 0.995, 0.763},  {100, 100, 100, 1.0, 0.725, 13, 0.9997, 0.913},
        {100, 150, 50, 1.0, 0.325, 7, 0.9997, 0.928},    {100, 50, 150, 1.0, 1.278, 15, 0.997, 0.658},
    };
    return rows;
}

std::string csv_header() { return "n,r,p,beta,delta_avg,delta_max,alpha_avg,alpha_min"; }

std::string to_csv(const ExperimentRow& row) {
    std::ostringstream os;
    const auto& c = row.config;
    if (!row.reproducible) {
        os << "# (" << c.n << ',' << c.r << ',' << c.p << ',' << c.beta << ") not reproducible at desk scale: "
           << row.note << '\n';
        for (const auto& ref : reference_rows())
            if (ref.n == c.n && ref.r == c.r && ref.p == c.p && std::abs(ref.beta - c.beta) < 1e-12)
                os << "# reference " << ref.n << ',' << ref.r << ',' << ref.p << ',' << ref.beta << ','
                   << ref.delta_avg << ',' << ref.delta_max << ',' << ref.alpha_avg << ',' << ref.alpha_min << '\n';
        return os.str();
    }
    if (row.trials == 0) return {};
    os << c.n << ',' << c.r << ',' << c.p << ',' << c.beta << ',' << std::setprecision(6) << row.delta_avg << ','
       << row.delta_max << ',' << row.alpha_avg << ',' << row.alpha_min << '\n';
    return os.str();
}

namespace {

void write_terms(std::ostream& os, const IPModel& model, const std::vector<std::pair<int, double>>& terms) {
    int written = 0;
    for (auto [var, coef] : terms) {
        if (coef == 0.0) continue;
        if (written > 0 && written % 8 == 0) os << "\n   ";
        os << (coef < 0 ? (written ? " - " : "-") : (written ? " + " : ""));
        double mag = std::abs(coef);
        if (mag != 1.0) os << mag << ' ';
        os << model.variables[static_cast<std::size_t>(var)].name;
        ++written;
    }
    if (written == 0) os << '0';
}

}  // namespace

std::string to_cplex_lp(const IPModel& model, bool relaxed) {
    std::ostringstream os;
    os << std::setprecision(15);
    os << "\\ rpsp " << to_string(model.mode) << " model: " << model.players << " players, " << model.rewards
       << " reward sets, " << model.penalties << " penalty sets\n";
    os << "Maximize\n obj: ";
    std::vector<std::pair<int, double>> objective;
    for (std::size_t v = 0; v < model.variables.size(); ++v)
        objective.emplace_back(static_cast<int>(v), model.variables[v].objective);
    write_terms(os, model, objective);
    os << '\n';
    if (!model.constraints.empty()) {
        os << "Subject To\n";
        for (const auto& c : model.constraints) {
            os << ' ' << c.name << ": ";
            write_terms(os, model, c.terms);
            os << " <= " << c.rhs << '\n';
        }
    }
    if (!model.variables.empty()) {
        if (relaxed) {
            os << "Bounds\n";
            for (const auto& v : model.variables) os << " 0 <= " << v.name << " <= 1\n";
        } else {
            os << "Binary\n";
            for (const auto& v : model.variables) os << ' ' << v.name << '\n';
        }
    }
    os << "End\n";
    return os.str();
}

LpDimensions parse_lp_dimensions(const std::string& text) {
    enum class Section { None, Objective, Constraints, Bounds, Binary, End };
    Section section = Section::None;
    std::set<std::string> variables;
    std::set<std::string> binaries;
    std::set<std::string> bounded;
    LpDimensions dims;
    auto is_name = [](const std::string& tok) {
        return !tok.empty() && (std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_');
    };
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto cut = line.find('\\'); cut != std::string::npos) line.erase(cut);
        std::istringstream words(line);
        std::string first;
        if (!(words >> first)) continue;
        std::string lower = first;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        std::string rest;
        std::getline(words, rest);
        if (lower == "maximize" || lower == "minimize") { section = Section::Objective; continue; }
        if (lower == "subject" || lower == "st" || lower == "s.t.") { section = Section::Constraints; continue; }
        if (lower == "bounds") { section = Section::Bounds; continue; }
        if (lower == "binary" || lower == "binaries") { section = Section::Binary; continue; }
        if (lower == "end") { section = Section::End; continue; }
        std::istringstream tokens(first + ' ' + rest);
        std::string tok;
        while (tokens >> tok) {
            if (tok.back() == ':') continue;  // row label
            if (tok == "<=" || tok == ">=" || tok == "=") {
                if (section == Section::Constraints) ++dims.constraints;
                continue;
            }
            if (!is_name(tok)) continue;
            if (section == Section::End || section == Section::None)
                throw Error(ErrorKind::Parse, "LP text has content outside a section");
            variables.insert(tok);
            if (section == Section::Binary) binaries.insert(tok);
            if (section == Section::Bounds) bounded.insert(tok);
        }
    }
    dims.variables = static_cast<int>(variables.size());
    dims.binaries = static_cast<int>(binaries.size());
    dims.bounded = static_cast<int>(bounded.size());
    return dims;
}

}  // namespace rpsp::relax
