#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rpsp/decomposition.hpp"
#include "rpsp/graph.hpp"

/// Subgraph selection on a host graph: choose a node set S; a reward subgraph
/// pays when it meets S, a penalty subgraph costs when it lies inside G[S].
namespace rpsp::sgsp {

struct Subgraph {
    std::vector<int> nodes;                   // sorted host nodes (0-based)
    std::vector<std::pair<int, int>> edges;   // host edges, (u, v) with u < v
    double weight = 0.0;
};

struct SgspInstance {
    SimpleGraph host;
    std::vector<Subgraph> rewards;
    std::vector<Subgraph> penalties;
};

/// Builds a subgraph from nodes and edges; edge endpoints are added to the node set.
Subgraph make_subgraph(std::vector<int> nodes, std::vector<std::pair<int, int>> edges, double weight);

/// Empty iff every subgraph lives inside the host and weights are non-negative.
std::vector<std::string> validate(const SgspInstance& instance);
void require_valid(const SgspInstance& instance);

double evaluate_sgsp(const SgspInstance& instance, const std::vector<int>& nodes);

struct SgspSolution {
    std::vector<int> nodes;  // sorted
    double value = 0.0;
};

inline constexpr int kSgspBruteForceCap = 22;

/// Exhaustive optimum; ties go to the lexicographically smallest node list.
SgspSolution brute_force_sgsp(const SgspInstance& instance, int cap = kSgspBruteForceCap);

/// Star host: the graph's nodes around a new centre c = |V|. Unit rewards on
/// the original nodes, reward M = |V|+1 on c, and for every edge {u, v} the
/// path u-c-v as a penalty of weight |V|+1. Optimum = M + independence number.
struct StarReduction {
    SgspInstance instance;
    int center = 0;
    double big_m = 0.0;
};
StarReduction star_reduction(const SimpleGraph& graph);

struct FrequencyProfile {
    std::vector<int> per_node;  // number of penalty subgraphs containing the node
    int max = 0;
};
FrequencyProfile frequency(const SgspInstance& instance);

/// Bipartite variable/constraint graph of the restricted integer program.
/// Node numbering: x_v -> v, z_P -> n + j, constraint of P -> n + m + j
/// (n host nodes, m penalty subgraphs).
struct ConstraintGraph {
    int host_nodes = 0;
    int penalties = 0;
    SimpleGraph graph;

    int variable_count() const { return host_nodes + penalties; }
    int x_node(int v) const { return v; }
    int z_node(int j) const { return host_nodes + j; }
    int constraint_node(int j) const { return host_nodes + penalties + j; }
};
ConstraintGraph build_constraint_graph(const SgspInstance& instance);

/// Graph on the variable nodes; two variables are adjacent iff they share a constraint.
SimpleGraph build_interaction_graph(const ConstraintGraph& bp);

bool is_tree(const SimpleGraph& graph);
bool is_connected_within(const SimpleGraph& graph, const std::vector<int>& nodes);

/// Decomposition of the constraint graph for a tree host with node rewards and
/// connected penalties: bag {x_v} + {constraints of penalties containing v} per
/// host node, shaped like the host, plus a leaf bag {C_P, z_P} hanging off the
/// bag of P's smallest node. Width <= max frequency.
/// Throws ErrorKind::Structural if the host is not a tree or a penalty is
/// disconnected, ErrorKind::Shape if a reward is not a single node.
TreeDecomposition lemma_decomposition(const SgspInstance& instance);

/// Random tree host with single-node rewards and connected penalty subtrees
/// whose node frequency stays at most max_frequency.
struct SgspTreeConfig {
    int n = 8;
    int penalties = 4;
    int max_penalty_size = 4;
    int max_frequency = 4;
    std::uint64_t seed = 0;
};
SgspInstance random_tree_instance(const SgspTreeConfig& config);

/// JSON with keys "n", "host_edges", "rewards", "penalties"; each subgraph is
/// {"nodes": [...], "edges": [[u, v], ...], "weight": w}. Nodes are 1-based.
SgspInstance parse_sgsp(const std::string& text);
std::string sgsp_to_json(const SgspInstance& instance, int indent = 2);

}  // namespace rpsp::sgsp
