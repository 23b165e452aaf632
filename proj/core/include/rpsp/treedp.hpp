#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "rpsp/decomposition.hpp"
#include "rpsp/graph.hpp"
#include "rpsp/instance.hpp"

/// Dynamic program over a nice tree decomposition of the reduced connection
/// graph, for hit-reward instances whose reward sets are singletons.
namespace rpsp::treedp {

/// Nodes 0..players-1 are players (node v is player v+1); nodes
/// players..players+penalties-1 are the penalty sets in instance order.
struct ReducedGraph {
    int players = 0;
    std::vector<double> reward;   // per player, summed singleton rewards
    std::vector<double> penalty;  // per penalty set
    SimpleGraph graph;

    int node_count() const { return graph.node_count(); }
    bool is_penalty(int v) const { return v >= players; }
    /// p(v): reward of a player node, penalty of a penalty node.
    double profit(int v) const;
};

/// Throws ErrorKind::Shape on a non-singleton reward set and ErrorKind::Mode
/// outside hit-reward mode.
ReducedGraph build_reduced_graph(const Instance& instance);

inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

/// Key entries follow the bag order: a player maps to 1 if selected (in S),
/// else 0; a penalty P maps to n_P, the number of selected neighbours of P
/// that were already forgotten below this bag.
using TableKey = std::vector<int>;

struct TableEntry {
    double value = kMinusInfinity;
    TableKey left;   // child key (the only child for introduce/forget)
    TableKey right;  // second child key at a join
};

/// Sparse table; absent keys stand for minus infinity.
struct DPTable {
    std::vector<int> bag;  // sorted
    std::map<TableKey, TableEntry> entries;

    double value(const TableKey& key) const;
};

/// Penalty P leaves the bag: it is charged iff every neighbour is selected,
/// that is forgotten_count + |N(P) and S| = |P|.
double forget_charge(const ReducedGraph& g, int penalty, int forgotten_count, int selected_in_bag);

DPTable dp_leaf(const ReducedGraph& g, int v);
DPTable dp_introduce(const ReducedGraph& g, const DPTable& child, int v);
DPTable dp_forget(const ReducedGraph& g, const DPTable& child, int v);
DPTable dp_join(const ReducedGraph& g, const DPTable& left, const DPTable& right);

/// Tables of every bag of a nice decomposition, indexed like its bags.
std::vector<DPTable> compute_tables(const ReducedGraph& g, const TreeDecomposition& nice_td);

struct TreeDpResult {
    Selection selection;
    double table_value = 0.0;
    TreeDecomposition nice_decomposition;  // with the forget chain
    std::size_t table_entries = 0;
};

/// `decomposition` is over the reduced graph's node numbering. Throws
/// ErrorKind::Decomposition when it is invalid.
TreeDpResult solve_treedp_detailed(const Instance& instance, const TreeDecomposition& decomposition);
Selection solve_treedp(const Instance& instance, const TreeDecomposition& decomposition);

/// Random singleton-reward instance whose reduced graph is a partial k-tree,
/// together with a decomposition of width <= k of that graph.
struct TreeDpConfig {
    int nodes = 12;   // nodes of the underlying k-tree before labeling
    int k = 3;
    double penalty_fraction = 0.4;
    std::uint64_t seed = 0;
};
struct TreeDpCase {
    Instance instance;
    TreeDecomposition decomposition;
};
TreeDpCase generate_treedp_case(const TreeDpConfig& config);

}  // namespace rpsp::treedp
