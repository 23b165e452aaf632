#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rpsp/graph.hpp"

namespace rpsp {

enum class BagKind { Plain, Leaf, Introduce, Forget, Join };

/// Tree decomposition over graph nodes 0..N-1. The plain form is an unrooted
/// tree of bags; make_nice() fills the rooted fields.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // each sorted, duplicate free
    std::vector<std::pair<int, int>> edges;

    bool nice = false;
    int root = -1;
    std::vector<BagKind> kinds;
    std::vector<int> pivot;  // introduced or forgotten node, -1 otherwise
    std::vector<std::vector<int>> children;

    int bag_count() const { return static_cast<int>(bags.size()); }
    /// max |bag| - 1; -1 for no bags.
    int width() const;
    int add_bag(std::vector<int> bag);
};

/// Violations of: bag tree is a tree, node coverage, edge coverage, and the
/// path condition (bags holding a node are connected). Empty iff valid.
std::vector<std::string> validate_decomposition(const SimpleGraph& graph, const TreeDecomposition& td);
/// Throws ErrorKind::Decomposition listing every violation.
void require_valid_decomposition(const SimpleGraph& graph, const TreeDecomposition& td);

/// Violations of the nice form: leaves hold one node, introduce/forget change
/// exactly the pivot, joins have two children with the parent's bag.
std::vector<std::string> check_nice(const TreeDecomposition& td);

/// Rooted nice decomposition with the same width. Empty bags are dropped first.
TreeDecomposition make_nice(const SimpleGraph& graph, const TreeDecomposition& td, int root = 0);

/// Adds forget nodes above the root until the root bag is empty.
TreeDecomposition with_forget_chain(const TreeDecomposition& nice_td);

/// Nodes of the subtree below each bag of a nice decomposition (V_i).
std::vector<std::vector<int>> subtree_nodes(const TreeDecomposition& nice_td);

/// Exact minimum-width decomposition from an optimal elimination ordering
/// (subset dynamic program). Limited to 20 nodes.
TreeDecomposition exact_decomposition(const SimpleGraph& graph);
int treewidth(const SimpleGraph& graph);

/// Decomposition from an elimination ordering (fill-in bags).
TreeDecomposition decomposition_from_order(const SimpleGraph& graph, const std::vector<int>& order);

/// Random k-tree on n nodes with a width-k decomposition (one clique bag per
/// added node). With edge_keep < 1 edges are dropped independently, giving a
/// partial k-tree for which the decomposition stays valid.
struct KTree {
    SimpleGraph graph;
    TreeDecomposition decomposition;
};
KTree random_ktree(int n, int k, std::uint64_t seed, double edge_keep = 1.0);

/// PACE-style decomposition text: "s td <bags> <max bag size> <nodes>", one
/// "b <id> <v...>" line per bag, then one "<i> <j>" line per tree edge; all ids 1-based.
std::string to_pace_td(const TreeDecomposition& td, int node_count);
TreeDecomposition parse_pace_td(const std::string& text, int* node_count = nullptr);

std::string to_dot(const TreeDecomposition& td, const std::string& graph_name = "td");

}  // namespace rpsp
