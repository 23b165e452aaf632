#include "rpsp/special.hpp"

#include <algorithm>
#include <cmath>

#include "rpsp/error.hpp"

namespace rpsp::special {

Instance mis_to_rpsp(const SimpleGraph& graph) {
    Instance out;
    out.n = graph.node_count();
    out.mode = ObjectiveMode::HitRewardCoverPenalty;
    for (int v = 0; v < graph.node_count(); ++v) out.reward_sets.push_back(make_set({v + 1}, 1.0));
    for (auto [u, v] : graph.edges()) out.penalty_sets.push_back(make_set({u + 1, v + 1}, 1.0));
    return out;
}

Selection repair(const Instance& instance, std::vector<Player> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    while (true) {
        const WeightedSet* covered = nullptr;
        for (const auto& s : instance.penalty_sets)
            if (std::includes(members.begin(), members.end(), s.members.begin(), s.members.end())) {
                covered = &s;
                break;
            }
        if (!covered) break;
        members.erase(std::find(members.begin(), members.end(), covered->members.back()));
    }
    return make_selection(instance, std::move(members));
}

SimpleGraph simplify_connection_graph(const Instance& instance) {
    require_valid(instance);
    SimpleGraph g(instance.n);
    for (int v = 0; v < instance.n; ++v) g.set_node_weight(v, 0.0);
    for (std::size_t i = 0; i < instance.reward_sets.size(); ++i) {
        const auto& s = instance.reward_sets[i];
        if (s.members.size() != 1)
            throw Error(ErrorKind::Shape, "reward set " + std::to_string(i + 1) + " is not a singleton");
        int v = s.members.front() - 1;
        g.set_node_weight(v, g.node_weight(v) + s.weight);
    }
    for (std::size_t j = 0; j < instance.penalty_sets.size(); ++j) {
        const auto& s = instance.penalty_sets[j];
        if (s.members.size() != 2)
            throw Error(ErrorKind::Shape, "penalty set " + std::to_string(j + 1) + " does not have exactly two members");
        int u = s.members[0] - 1;
        int v = s.members[1] - 1;
        if (!g.add_edge(u, v, s.weight)) g.set_edge_weight(u, v, g.edge_weight(u, v) + s.weight);
    }
    return g;
}

Instance graph_instance(const SimpleGraph& graph) {
    Instance out;
    out.n = graph.node_count();
    out.mode = ObjectiveMode::HitRewardCoverPenalty;
    for (int v = 0; v < graph.node_count(); ++v)
        if (graph.node_weight(v) != 0.0) out.reward_sets.push_back(make_set({v + 1}, graph.node_weight(v)));
    for (auto [u, v] : graph.edges()) out.penalty_sets.push_back(make_set({u + 1, v + 1}, graph.edge_weight(u, v)));
    return out;
}

ChordalResult is_chordal(const SimpleGraph& graph) {
    int n = graph.node_count();
    // Lexicographic BFS: labels are the visit numbers of visited neighbours, in visit order.
    std::vector<std::vector<int>> label(static_cast<std::size_t>(n));
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<int> visit;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            if (pick < 0 || label[static_cast<std::size_t>(v)] > label[static_cast<std::size_t>(pick)]) pick = v;
        }
        visited[static_cast<std::size_t>(pick)] = 1;
        visit.push_back(pick);
        for (int u : graph.neighbors(pick))
            if (!visited[static_cast<std::size_t>(u)]) label[static_cast<std::size_t>(u)].push_back(n - step);
    }
    ChordalResult out;
    out.elimination_order.assign(visit.rbegin(), visit.rend());
    out.chordal = is_perfect_elimination_order(graph, out.elimination_order);
    if (!out.chordal) out.elimination_order.clear();
    return out;
}

bool is_perfect_elimination_order(const SimpleGraph& graph, const std::vector<int>& order) {
    int n = graph.node_count();
    if (static_cast<int>(order.size()) != n) return false;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] >= 0) return false;
        pos[static_cast<std::size_t>(v)] = i;
    }
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        std::vector<int> later;
        for (int u : graph.neighbors(v))
            if (pos[static_cast<std::size_t>(u)] > i) later.push_back(u);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                if (!graph.has_edge(later[a], later[b])) return false;
    }
    return true;
}

std::vector<int> chordal_mis(const SimpleGraph& graph, const std::vector<int>& order) {
    std::vector<char> blocked(static_cast<std::size_t>(graph.node_count()), 0);
    std::vector<int> out;
    for (int v : order) {
        if (blocked[static_cast<std::size_t>(v)]) continue;
        out.push_back(v);
        blocked[static_cast<std::size_t>(v)] = 1;
        for (int u : graph.neighbors(v)) blocked[static_cast<std::size_t>(u)] = 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Instance uniform_instance(const SimpleGraph& graph, double a, double b) {
    Instance out;
    out.n = graph.node_count();
    out.mode = ObjectiveMode::HitRewardCoverPenalty;
    for (int v = 0; v < graph.node_count(); ++v) out.reward_sets.push_back(make_set({v + 1}, a));
    for (auto [u, v] : graph.edges()) out.penalty_sets.push_back(make_set({u + 1, v + 1}, b));
    return out;
}

UniformResult solve_uniform(const SimpleGraph& graph, double a, double b) {
    if (a < 0 || b < 0) throw Error(ErrorKind::InvalidInstance, "uniform weights must be non-negative");
    UniformResult out;
    Instance instance = uniform_instance(graph, a, b);
    if (b * graph.max_degree() <= a + kValueTolerance) {
        std::vector<Player> all;
        for (int v = 0; v < graph.node_count(); ++v) all.push_back(v + 1);
        out.status = UniformCase::AllNodes;
        out.selection = make_selection(instance, std::move(all));
        return out;
    }
    if (b >= a - kValueTolerance) {
        ChordalResult chordal = is_chordal(graph);
        if (chordal.chordal) {
            std::vector<Player> chosen;
            for (int v : chordal_mis(graph, chordal.elimination_order)) chosen.push_back(v + 1);
            out.status = UniformCase::ChordalIndependentSet;
            out.selection = make_selection(instance, std::move(chosen));
            return out;
        }
    }
    out.status = UniformCase::NotApplicable;
    return out;
}

std::optional<std::pair<double, double>> uniform_weights(const Instance& instance) {
    if (instance.mode != ObjectiveMode::HitRewardCoverPenalty || !validate(instance).empty()) return std::nullopt;
    SimpleGraph g;
    try {
        g = simplify_connection_graph(instance);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (g.node_count() == 0) return std::nullopt;
    double a = g.node_weight(0);
    for (int v = 1; v < g.node_count(); ++v)
        if (std::abs(g.node_weight(v) - a) > kValueTolerance) return std::nullopt;
    auto edges = g.edges();
    double b = edges.empty() ? 0.0 : g.edge_weight(edges.front().first, edges.front().second);
    for (auto [u, v] : edges)
        if (std::abs(g.edge_weight(u, v) - b) > kValueTolerance) return std::nullopt;
    return std::make_pair(a, b);
}

std::pair<SimpleGraph, Instance> chordal_gadget(const SimpleGraph& graph) {
    int n = graph.node_count();
    SimpleGraph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) out.add_edge(u, v, graph.has_edge(u, v) ? n + 1.0 : 0.0);
    Instance instance;
    instance.n = n;
    instance.mode = ObjectiveMode::HitRewardCoverPenalty;
    for (int v = 0; v < n; ++v) instance.reward_sets.push_back(make_set({v + 1}, 1.0));
    for (auto [u, v] : out.edges()) instance.penalty_sets.push_back(make_set({u + 1, v + 1}, out.edge_weight(u, v)));
    return {std::move(out), std::move(instance)};
}

}  // namespace rpsp::special
