#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rpsp/graph.hpp"
#include "rpsp/instance.hpp"

/// Graph-shaped instances: every reward set a singleton, every penalty set a pair.
namespace rpsp::special {

/// Node v becomes player v+1 with a unit singleton reward; each edge becomes a
/// unit penalty pair. Hit-reward mode. The optimum equals the independence number.
Instance mis_to_rpsp(const SimpleGraph& graph);

/// Repeatedly drops the largest member of the lowest-indexed fully selected
/// penalty set until no penalty set is fully selected.
Selection repair(const Instance& instance, std::vector<Player> members);

/// Node per player weighted by its summed singleton rewards; edge per penalty
/// pair, parallel pairs merged with summed weight. Throws ErrorKind::Shape when
/// a reward set is not a singleton or a penalty set is not a pair.
SimpleGraph simplify_connection_graph(const Instance& instance);

/// Instance of a weighted simple graph: node weights as singleton rewards
/// (zero weights omitted), edge weights as penalty pairs.
Instance graph_instance(const SimpleGraph& graph);

struct ChordalResult {
    bool chordal = false;
    std::vector<int> elimination_order;  // perfect elimination ordering when chordal
};

/// Lexicographic BFS followed by a perfect-elimination check.
ChordalResult is_chordal(const SimpleGraph& graph);

/// Each node's neighbours that come later in `order` form a clique.
bool is_perfect_elimination_order(const SimpleGraph& graph, const std::vector<int>& order);

/// Maximum independent set of a chordal graph by a greedy pass over a perfect
/// elimination ordering.
std::vector<int> chordal_mis(const SimpleGraph& graph, const std::vector<int>& order);

enum class UniformCase { AllNodes, ChordalIndependentSet, NotApplicable };

struct UniformResult {
    UniformCase status = UniformCase::NotApplicable;
    Selection selection;  // players are nodes + 1
};

/// Unit-shape instance with reward a on every node and penalty b on every
/// edge: all nodes when b * maxdeg <= a; a maximum independent set when b >= a
/// and the graph is chordal; otherwise NotApplicable.
UniformResult solve_uniform(const SimpleGraph& graph, double a, double b);

/// Instance of `graph` with reward a per node and penalty b per edge.
Instance uniform_instance(const SimpleGraph& graph, double a, double b);

/// Detects the uniform shape (all node rewards equal, all edge penalties equal,
/// every player rewarded). Returns (a, b); b is 0 for an edgeless graph.
std::optional<std::pair<double, double>> uniform_weights(const Instance& instance);

/// Complete graph on the same nodes: original edges weigh |V|+1, added edges 0;
/// unit node weights. The optimum of the instance equals the independence
/// number of the input graph.
std::pair<SimpleGraph, Instance> chordal_gadget(const SimpleGraph& graph);

}  // namespace rpsp::special
