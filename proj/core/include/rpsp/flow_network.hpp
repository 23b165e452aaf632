#pragma once

#include <string>
#include <vector>

namespace rpsp {

struct FlowArc {
    int from = 0;
    int to = 0;
    double capacity = 0.0;
    /// Stands in for an infinite capacity; `capacity` then holds the network's BIG.
    bool big = false;
};

/// Directed capacitated network with a designated source and sink.
struct FlowNetwork {
    std::vector<std::string> node_names;
    std::vector<FlowArc> arcs;
    int source = -1;
    int sink = -1;
    double big = 0.0;

    int add_node(std::string name);
    void add_arc(int from, int to, double capacity);
    void add_big_arc(int from, int to);
    int node_count() const { return static_cast<int>(node_names.size()); }
};

struct Cut {
    std::vector<int> source_side;  // contains the source
    std::vector<int> sink_side;    // contains the sink
    std::vector<int> cut_arcs;     // indices of arcs from source side to sink side
    double capacity = 0.0;
    bool severs_big_arc = false;
};

struct MaxFlowResult {
    double value = 0.0;
    std::vector<double> arc_flow;  // parallel to FlowNetwork::arcs
    Cut cut;                       // minimum cut with the smallest source side
};

/// Dinic's algorithm. The returned cut's capacity equals the flow value, which
/// is checked before returning (ErrorKind::Solver otherwise).
MaxFlowResult max_flow(const FlowNetwork& network);

/// Graphviz rendering, one arc label "cap=..." per arc.
std::string to_dot(const FlowNetwork& network, const std::string& graph_name = "flow");

}  // namespace rpsp
