#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rpsp/brute_force.hpp"
#include "rpsp/decomposition.hpp"
#include "rpsp/error.hpp"
#include "rpsp/flowsolve.hpp"
#include "rpsp/generate.hpp"
#include "rpsp/instance_io.hpp"
#include "rpsp/laminar.hpp"
#include "rpsp/relax.hpp"
#include "rpsp/sgsp.hpp"
#include "rpsp/special.hpp"
#include "rpsp/treedp.hpp"

namespace rpsp::cli {

namespace {

using nlohmann::json;

const char* const kFooter =
    "Exit codes: 0 ok, 1 check mismatch, 2 parse or validation error, 3 no exact algorithm applies.\n"
    "solve --algorithm auto tries, in order: mincut (cover-reward mode), laminar (laminar family),\n"
    "treedp (singleton rewards and --decomposition given), uniform (unit graph shape with\n"
    "uniform weights in a solvable regime), brute (n <= 24). Otherwise use export-lp.\n"
    "RPSP_SEED, when set, overrides --seed.";

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SizeLimit: return kExitNoExactAlgorithm;
        default: return kExitInvalid;
    }
}

struct NoExactAlgorithm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t effective_seed(std::uint64_t flag_value) {
    const char* env = std::getenv("RPSP_SEED");
    if (!env || !*env) return flag_value;
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(env, &used, 0);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, std::string("RPSP_SEED is not an unsigned integer: '") + env + "'");
    }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") out << text;
    else write_text_file(path, text);
}

bool has_duplicate_sets(const std::vector<WeightedSet>& sets) {
    std::set<std::vector<Player>> seen;
    for (const auto& s : sets)
        if (!seen.insert(s.members).second) return true;
    return false;
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
    std::string instance;
    std::string algorithm = "auto";
    std::string decomposition;
    std::string dot_network;
    std::string dot_tree;
    std::string output;
};

std::string choose_algorithm(const Instance& in, bool have_decomposition) {
    if (in.mode == ObjectiveMode::CoverRewardHitPenalty) return "mincut";
    if (laminar::is_laminar(in) && !has_duplicate_sets(in.reward_sets) && !has_duplicate_sets(in.penalty_sets))
        return "laminar";
    if (has_singleton_rewards(in) && have_decomposition) return "treedp";
    if (auto w = special::uniform_weights(in)) {
        auto r = special::solve_uniform(special::simplify_connection_graph(in), w->first, w->second);
        if (r.status != special::UniformCase::NotApplicable) return "uniform";
    }
    if (in.n <= kDefaultBruteForceCap) return "brute";
    throw NoExactAlgorithm("no exact algorithm applies (n = " + std::to_string(in.n) +
                           " exceeds the brute-force cap); write the integer program with export-lp");
}

int cmd_solve(const SolveOptions& opt, std::ostream& out) {
    Instance in = read_instance_file(opt.instance);
    require_valid(in);
    std::string algorithm = opt.algorithm == "auto" ? choose_algorithm(in, !opt.decomposition.empty()) : opt.algorithm;
    auto start = std::chrono::steady_clock::now();
    Selection sel;
    if (algorithm == "brute") {
        sel = brute_force(in);
    } else if (algorithm == "mincut") {
        sel = flowsolve::solve_max(in);
        if (!opt.dot_network.empty()) write_text_file(opt.dot_network, to_dot(flowsolve::build_rps_graph(in).network, "rps"));
    } else if (algorithm == "laminar") {
        auto res = laminar::solve_laminar_detailed(in);
        sel = res.selection;
        if (!opt.dot_network.empty()) write_text_file(opt.dot_network, to_dot(res.model.network, "circulation"));
        if (!opt.dot_tree.empty()) write_text_file(opt.dot_tree, laminar::to_dot(res.nice_tree, "nice_tree"));
    } else if (algorithm == "treedp") {
        if (opt.decomposition.empty()) throw Error(ErrorKind::Decomposition, "treedp needs --decomposition");
        auto res = treedp::solve_treedp_detailed(in, parse_pace_td(read_text_file(opt.decomposition)));
        sel = res.selection;
        if (!opt.dot_tree.empty()) write_text_file(opt.dot_tree, to_dot(res.nice_decomposition, "nice_td"));
    } else if (algorithm == "uniform") {
        auto w = special::uniform_weights(in);
        if (!w) throw Error(ErrorKind::Shape, "instance is not a uniform graph-shaped instance");
        auto res = special::solve_uniform(special::simplify_connection_graph(in), w->first, w->second);
        if (res.status == special::UniformCase::NotApplicable)
            throw NoExactAlgorithm("uniform weights fall in a regime without a polynomial rule");
        sel = make_selection(in, res.selection.members);
    } else {
        throw Error(ErrorKind::Parse, "unknown algorithm '" + algorithm + "'");
    }
    double elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    double check = evaluate(in, sel.members);
    if (std::abs(check - sel.value) > kValueTolerance)
        throw Error(ErrorKind::Solver, "solver value does not re-evaluate");

    json record;
    record["instance_digest"] = instance_digest(in);
    record["algorithm"] = algorithm;
    record["value"] = check;
    record["selection"] = sel.members;
    record["wall_time_ms"] = elapsed;
    const char* env = std::getenv("RPSP_SEED");
    record["seed"] = env && *env ? json(effective_seed(0)) : json(nullptr);
    emit(opt.output, record.dump(2) + "\n", out);
    return kExitOk;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
    int n = 10;
    int r = 10;
    int p = 10;
    double beta = 1.0;
    std::uint64_t seed = 1;
    int count = 1;
    std::string out_dir = ".";
    std::string prefix = "instance";
    std::string mode = "hit-reward";
    bool laminar = false;
};

int cmd_gen(const GenOptions& opt, std::ostream& out) {
    if (opt.count < 0) throw Error(ErrorKind::InfeasibleConfig, "--count must be non-negative");
    std::uint64_t seed = effective_seed(opt.seed);
    InstanceConfig config{opt.n, opt.r, opt.p, opt.beta, seed, parse_mode(opt.mode)};
    if (!opt.laminar) generate(config);  // validates the configuration even for --count 0
    else if (opt.n < 0) throw Error(ErrorKind::InfeasibleConfig, "n must be non-negative");
    int width = std::max<int>(4, static_cast<int>(std::to_string(opt.count).size()));
    for (int i = 0; i < opt.count; ++i) {
        std::uint64_t sub = derive_seed(seed, static_cast<std::uint64_t>(i));
        Instance in;
        if (opt.laminar) {
            laminar::LaminarConfig lc;
            lc.n = opt.n;
            lc.seed = sub;
            in = laminar::generate_laminar(lc);
        } else {
            config.seed = sub;
            in = generate(config);
        }
        std::ostringstream name;
        name << opt.out_dir << '/' << opt.prefix << '_' << std::setw(width) << std::setfill('0') << i << ".json";
        write_instance_file(in, name.str());
        out << name.str() << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
    std::vector<std::string> configs;
    int n = 10;
    int r = 10;
    int p = 10;
    double beta = 1.0;
    int trials = 200;
    std::string exact = "brute";
    std::uint64_t seed = 1;
    std::string output;
};

InstanceConfig parse_config(const std::string& text, std::uint64_t seed) {
    std::istringstream in(text);
    InstanceConfig c;
    char c1 = 0, c2 = 0, c3 = 0;
    std::string rest;
    if (!(in >> c.n >> c1 >> c.r >> c2 >> c.p >> c3 >> c.beta) || c1 != ',' || c2 != ',' || c3 != ',' || (in >> rest))
        throw Error(ErrorKind::Parse, "--config expects n,r,p,beta (got '" + text + "')");
    c.seed = seed;
    return c;
}

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
    if (opt.trials < 0) throw Error(ErrorKind::InfeasibleConfig, "--trials must be non-negative");
    relax::ExactSolver solver;
    if (opt.exact == "brute") solver = relax::ExactSolver::Brute;
    else if (opt.exact == "treedp") solver = relax::ExactSolver::TreeDp;
    else throw Error(ErrorKind::Parse, "--exact must be brute or treedp");
    std::uint64_t seed = effective_seed(opt.seed);
    std::vector<InstanceConfig> configs;
    for (const auto& text : opt.configs) configs.push_back(parse_config(text, seed));
    if (configs.empty()) configs.push_back(InstanceConfig{opt.n, opt.r, opt.p, opt.beta, seed});
    for (const auto& c : configs) {
        InstanceConfig probe = c;
        generate(probe);  // rejects impossible shapes up front
    }
    std::ostringstream csv;
    csv << relax::csv_header() << '\n';
    int code = kExitOk;
    for (const auto& c : configs) {
        auto row = relax::run_experiment(c, opt.trials, solver);
        if (!row.reproducible) code = kExitNoExactAlgorithm;
        csv << relax::to_csv(row);
    }
    emit(opt.output, csv.str(), out);
    return code;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::string& instance_path, const std::string& selection_path, std::ostream& out,
              std::ostream& err) {
    Instance in = read_instance_file(instance_path);
    require_valid(in);
    ClaimedSelection claim = read_selection_file(selection_path);
    auto parts = breakdown(in, claim.members);
    auto list = [](const std::vector<int>& ids) {
        std::string s;
        for (int i : ids) s += (s.empty() ? "" : " ") + std::to_string(i + 1);
        return s.empty() ? std::string("-") : s;
    };
    bool hit = in.mode == ObjectiveMode::HitRewardCoverPenalty;
    out << "value " << std::setprecision(17) << parts.value << '\n';
    out << (hit ? "hit" : "covered") << " reward sets: " << list(parts.counted_rewards) << '\n';
    out << (hit ? "covered" : "hit") << " penalty sets: " << list(parts.counted_penalties) << '\n';
    if (claim.value && std::abs(*claim.value - parts.value) > kValueTolerance) {
        err << "mismatch: claimed " << std::setprecision(17) << *claim.value << ", recomputed " << parts.value << '\n';
        return kExitMismatch;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- export-lp

int cmd_export_lp(const std::string& instance_path, bool relaxed, const std::string& output, std::ostream& out) {
    Instance in = read_instance_file(instance_path);
    emit(output, relax::to_cplex_lp(relax::build_ip(in), relaxed), out);
    return kExitOk;
}

// ---------------------------------------------------------------- graphs

int cmd_reduced_graph(const std::string& instance_path, const std::string& output, const std::string& td_path,
                      std::ostream& out) {
    auto g = treedp::build_reduced_graph(read_instance_file(instance_path));
    emit(output, to_pace_graph(g.graph), out);
    if (!td_path.empty()) write_text_file(td_path, to_pace_td(exact_decomposition(g.graph), g.node_count()));
    return kExitOk;
}

int cmd_decompose(const std::string& graph_path, std::ostream& out) {
    SimpleGraph g = parse_pace_graph(read_text_file(graph_path));
    out << to_pace_td(exact_decomposition(g), g.node_count());
    return kExitOk;
}

int cmd_sgsp_solve(const std::string& path, std::ostream& out) {
    auto inst = sgsp::parse_sgsp(read_text_file(path));
    auto sol = sgsp::brute_force_sgsp(inst);
    json nodes = json::array();
    for (int v : sol.nodes) nodes.push_back(v + 1);
    out << json{{"algorithm", "brute"}, {"value", sol.value}, {"nodes", nodes}}.dump(2) << '\n';
    return kExitOk;
}

int cmd_sgsp_star(const std::string& graph_path, const std::string& output, std::ostream& out) {
    auto star = sgsp::star_reduction(parse_pace_graph(read_text_file(graph_path)));
    emit(output, sgsp::sgsp_to_json(star.instance), out);
    return kExitOk;
}

int cmd_sgsp_decompose(const std::string& path, const std::string& graph_out, std::ostream& out) {
    auto inst = sgsp::parse_sgsp(read_text_file(path));
    auto bp = sgsp::build_constraint_graph(inst);
    auto td = sgsp::lemma_decomposition(inst);
    if (!graph_out.empty()) write_text_file(graph_out, to_pace_graph(bp.graph));
    out << "c width " << td.width() << " max frequency " << sgsp::frequency(inst).max << '\n';
    out << to_pace_td(td, bp.graph.node_count());
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reward-penalty selection solvers and experiment tools", "rpsp"};
    app.footer(kFooter);
    app.require_subcommand(1);

    SolveOptions solve;
    auto* s = app.add_subcommand("solve", "Solve an instance exactly");
    s->add_option("instance", solve.instance, "Instance JSON file")->required();
    s->add_option("-a,--algorithm", solve.algorithm, "auto|brute|mincut|laminar|treedp|uniform")
        ->check(CLI::IsMember({"auto", "brute", "mincut", "laminar", "treedp", "uniform"}));
    s->add_option("-d,--decomposition", solve.decomposition, "Decomposition of the reduced graph (PACE td)");
    s->add_option("--dot-network", solve.dot_network, "Write the flow or circulation network as DOT");
    s->add_option("--dot-tree", solve.dot_tree, "Write the nice tree or nice decomposition as DOT");
    s->add_option("-o,--output", solve.output, "Run record destination (default stdout)");

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate random instances");
    g->add_option("--n", gen.n, "Players");
    g->add_option("--r", gen.r, "Reward sets");
    g->add_option("--p", gen.p, "Penalty sets");
    g->add_option("--beta", gen.beta, "Set size bound as a fraction of n");
    g->add_option("--seed", gen.seed, "Base seed");
    g->add_option("--count", gen.count, "Number of files");
    g->add_option("--out-dir", gen.out_dir, "Output directory");
    g->add_option("--prefix", gen.prefix, "File name prefix");
    g->add_option("--mode", gen.mode, "hit-reward|cover-reward")->check(CLI::IsMember({"hit-reward", "cover-reward"}));
    g->add_flag("--laminar", gen.laminar, "Emit laminar hit-reward families (ignores --r, --p, --beta)");

    BenchOptions bench;
    auto* b = app.add_subcommand("bench", "LP rounding experiment, CSV output");
    b->add_option("--config", bench.configs, "n,r,p,beta (repeatable)");
    b->add_option("--n", bench.n, "Players");
    b->add_option("--r", bench.r, "Reward sets");
    b->add_option("--p", bench.p, "Penalty sets");
    b->add_option("--beta", bench.beta, "Set size bound as a fraction of n");
    b->add_option("--trials", bench.trials, "Instances per configuration");
    b->add_option("--exact", bench.exact, "brute|treedp")->check(CLI::IsMember({"brute", "treedp"}));
    b->add_option("--seed", bench.seed, "Base seed");
    b->add_option("-o,--output", bench.output, "CSV destination (default stdout)");

    std::string check_instance, check_selection;
    auto* c = app.add_subcommand("check", "Recompute the value of a selection");
    c->add_option("instance", check_instance, "Instance JSON file")->required();
    c->add_option("selection", check_selection, "Selection or run record JSON file")->required();

    std::string lp_instance, lp_output;
    bool lp_relaxed = false;
    auto* e = app.add_subcommand("export-lp", "Write the integer program in CPLEX-LP format");
    e->add_option("instance", lp_instance, "Instance JSON file")->required();
    e->add_flag("--relaxed", lp_relaxed, "Write [0,1] bounds instead of binaries");
    e->add_option("-o,--output", lp_output, "Destination (default stdout)");

    std::string rg_instance, rg_output, rg_td;
    auto* rg = app.add_subcommand("reduced-graph", "Write the reduced connection graph (PACE)");
    rg->add_option("instance", rg_instance, "Instance JSON file")->required();
    rg->add_option("-o,--output", rg_output, "Graph destination (default stdout)");
    rg->add_option("--td", rg_td, "Also write an exact decomposition (<= 20 nodes)");

    std::string dec_graph;
    auto* d = app.add_subcommand("decompose", "Exact tree decomposition of a small PACE graph");
    d->add_option("graph", dec_graph, "PACE graph file")->required();

    auto* sg = app.add_subcommand("sgsp", "Subgraph selection tools");
    sg->require_subcommand(1);
    std::string sg_file, sg_output, sg_graph_out;
    auto* sg_solve = sg->add_subcommand("solve", "Exhaustive optimum (<= 22 host nodes)");
    sg_solve->add_option("instance", sg_file, "Subgraph instance JSON")->required();
    auto* sg_star = sg->add_subcommand("star", "Star-host instance of a PACE graph");
    sg_star->add_option("graph", sg_file, "PACE graph file")->required();
    sg_star->add_option("-o,--output", sg_output, "Destination (default stdout)");
    auto* sg_dec = sg->add_subcommand("decompose", "Decomposition of the constraint graph for a tree host");
    sg_dec->add_option("instance", sg_file, "Subgraph instance JSON")->required();
    sg_dec->add_option("--graph", sg_graph_out, "Also write the constraint graph (PACE)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        int code = app.exit(ex, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*s) return cmd_solve(solve, out);
        if (*g) return cmd_gen(gen, out);
        if (*b) return cmd_bench(bench, out);
        if (*c) return cmd_check(check_instance, check_selection, out, err);
        if (*e) return cmd_export_lp(lp_instance, lp_relaxed, lp_output, out);
        if (*rg) return cmd_reduced_graph(rg_instance, rg_output, rg_td, out);
        if (*d) return cmd_decompose(dec_graph, out);
        if (*sg_solve) return cmd_sgsp_solve(sg_file, out);
        if (*sg_star) return cmd_sgsp_star(sg_file, sg_output, out);
        if (*sg_dec) return cmd_sgsp_decompose(sg_file, sg_graph_out, out);
    } catch (const NoExactAlgorithm& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitNoExactAlgorithm;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return exit_code_for(ex.kind());
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"rpsp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rpsp::cli
