#include "rpsp/flowsolve.hpp"

#include <algorithm>
#include <cmath>

#include "rpsp/error.hpp"

namespace rpsp::flowsolve {

namespace {

void require_cover_mode(const Instance& instance) {
    if (instance.mode != ObjectiveMode::CoverRewardHitPenalty) {
        throw Error(ErrorKind::Mode, "min-cut solver needs cover-reward mode");
    }
}

bool intersects(const std::vector<Player>& a, const std::vector<Player>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i; else ++j;
    }
    return false;
}

}  // namespace

RpsGraph build_rps_graph(const Instance& instance, std::optional<double> alpha) {
    require_cover_mode(instance);
    require_valid(instance);
    if (alpha && !(*alpha >= 0.0 && std::isfinite(*alpha))) {
        throw Error(ErrorKind::Structural, "decision threshold must be a finite value >= 0");
    }

    RpsGraph g;
    FlowNetwork& net = g.network;
    net.big = instance.total_reward() + instance.total_penalty() + (alpha ? std::abs(*alpha) : 0.0) + 1.0;
    net.source = net.add_node("s");
    net.sink = net.add_node("t");
    for (std::size_t j = 0; j < instance.penalty_sets.size(); ++j) {
        g.penalty_nodes.push_back(net.add_node("B" + std::to_string(j + 1)));
    }
    for (std::size_t i = 0; i < instance.reward_sets.size(); ++i) {
        g.reward_nodes.push_back(net.add_node("A" + std::to_string(i + 1)));
    }
    if (alpha) g.gadget_node = net.add_node("z");

    for (std::size_t j = 0; j < instance.penalty_sets.size(); ++j) {
        net.add_arc(net.source, g.penalty_nodes[j], instance.penalty_sets[j].weight);
    }
    for (std::size_t j = 0; j < instance.penalty_sets.size(); ++j) {
        for (std::size_t i = 0; i < instance.reward_sets.size(); ++i) {
            if (intersects(instance.penalty_sets[j].members, instance.reward_sets[i].members)) {
                net.add_big_arc(g.penalty_nodes[j], g.reward_nodes[i]);
            }
        }
    }
    for (std::size_t i = 0; i < instance.reward_sets.size(); ++i) {
        net.add_arc(g.reward_nodes[i], net.sink, instance.reward_sets[i].weight);
    }
    if (alpha) {
        net.add_arc(net.source, g.gadget_node, *alpha);
        net.add_big_arc(g.gadget_node, net.sink);
    }
    return g;
}

bool decide_max(const Instance& instance, double alpha) {
    require_cover_mode(instance);
    if (alpha <= 0.0) return true;  // the empty selection scores 0
    const RpsGraph g = build_rps_graph(instance, alpha);
    const MaxFlowResult flow = max_flow(g.network);
    if (flow.cut.severs_big_arc) throw Error(ErrorKind::Solver, "minimum cut severs a BIG arc");
    // Every finite cut pays the s -> z arc, so the gadget cut exceeds the plain
    // cut by exactly alpha: test (cut - alpha) <= sum a_i - alpha.
    const double total_reward = instance.total_reward();
    return flow.cut.capacity - alpha <= total_reward - alpha + kValueTolerance;
}

MaxSolution solve_max_detailed(const Instance& instance) {
    const RpsGraph g = build_rps_graph(instance);
    MaxSolution out;
    out.flow = max_flow(g.network);
    if (out.flow.cut.severs_big_arc) throw Error(ErrorKind::Solver, "minimum cut severs a BIG arc");
    out.min_cut = out.flow.cut.capacity;

    std::vector<char> on_source_side(static_cast<std::size_t>(g.network.node_count()), 0);
    for (int v : out.flow.cut.source_side) on_source_side[static_cast<std::size_t>(v)] = 1;
    std::vector<Player> members;
    for (std::size_t i = 0; i < g.reward_nodes.size(); ++i) {
        if (!on_source_side[static_cast<std::size_t>(g.reward_nodes[i])]) {
            out.chosen_rewards.push_back(static_cast<int>(i));
            const auto& set = instance.reward_sets[i].members;
            members.insert(members.end(), set.begin(), set.end());
        }
    }
    out.selection = make_selection(instance, std::move(members));
    const double optimum = instance.total_reward() - out.min_cut;
    if (std::abs(out.selection.value - optimum) > 1e-7 * std::max(1.0, std::abs(optimum))) {
        throw Error(ErrorKind::Solver, "selection recovered from the cut does not attain the cut bound");
    }
    return out;
}

Selection solve_max(const Instance& instance) { return solve_max_detailed(instance).selection; }

}  // namespace rpsp::flowsolve
