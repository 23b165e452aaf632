#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rpsp {

struct CirculationArc {
    int from = 0;
    int to = 0;
    std::int64_t capacity = 0;
    double profit = 0.0;  // per unit of flow
    bool big = false;
};

/// Directed network with integral capacities and per-unit profits. The source
/// and sink are only labels here; a circulation conserves flow everywhere.
struct CirculationNetwork {
    std::vector<std::string> node_names;
    std::vector<CirculationArc> arcs;
    int source = -1;
    int sink = -1;
    std::int64_t big = 0;

    int add_node(std::string name);
    int add_arc(int from, int to, std::int64_t capacity, double profit);
    int add_big_arc(int from, int to, double profit);
    int node_count() const { return static_cast<int>(node_names.size()); }
};

struct Circulation {
    std::vector<std::int64_t> flow;  // parallel to arcs
    double profit = 0.0;
};

/// Maximum-profit circulation by negative-cycle canceling on the residual
/// graph with costs = -profit (Bellman-Ford cycle detection).
Circulation max_profit_circulation(const CirculationNetwork& network);

double circulation_profit(const CirculationNetwork& network, const std::vector<std::int64_t>& flow);

/// Conservation and capacity violations; empty for a feasible circulation.
std::vector<std::string> check_circulation(const CirculationNetwork& network,
                                           const std::vector<std::int64_t>& flow);

/// Graphviz rendering with arc labels "(capacity,profit)".
std::string to_dot(const CirculationNetwork& network, const std::string& graph_name = "circulation");

}  // namespace rpsp
