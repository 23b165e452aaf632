#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rpsp/circulation.hpp"
#include "rpsp/instance.hpp"

/// Exact solver for laminar hit-reward instances: containment DAG, its
/// transitive reduction (the tree representation), nice-tree rewriting and a
/// maximum-profit circulation.
namespace rpsp::laminar {

enum class SetKind { Reward, Penalty };

struct LaminarNode {
    std::vector<Player> members;  // sorted
    SetKind kind = SetKind::Reward;
    double weight = 0.0;
    int parent = -1;
    std::vector<int> children;
    /// Index into the source instance's reward or penalty sets; -1 for nodes
    /// created during rewriting (virtual root, contracted leaves, fillers).
    int origin = -1;
    std::string label;
};

/// Rooted tree over the sets of a laminar family. Only players flagged in
/// `selectable` may be chosen; rewriting retires players that are dominated by
/// an equivalent player so that the tree's value stays exact.
struct LaminarTree {
    int n = 0;
    std::vector<LaminarNode> nodes;
    int root = -1;
    std::vector<char> selectable;  // indexed by player, size n + 1

    bool empty() const { return root < 0; }
    bool is_leaf(int v) const { return nodes[static_cast<std::size_t>(v)].children.empty(); }
    std::vector<int> leaves() const;
};

struct Digraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> arcs;
};

/// Every pair of sets is either disjoint or nested.
bool is_laminar(const std::vector<std::vector<Player>>& sets);
bool is_laminar(const Instance& instance);

/// Node per reward set (labels A1..) then per penalty set (B1..). Arc u -> v
/// iff S_v is a proper subset of S_u, or S_v = S_u with u a penalty and v a
/// reward (equal reward and penalty sets nest with the penalty above).
struct ContainmentDag {
    int n = 0;
    std::vector<LaminarNode> nodes;
    Digraph graph;
};
ContainmentDag build_containment_dag(const Instance& instance);

/// Subgraph with the same reachability and no removable arc. Throws
/// ErrorKind::Structural on a cyclic input.
Digraph transitive_reduction(const Digraph& dag);

/// Reachability closure as an adjacency matrix (test and diagnostics helper).
std::vector<std::vector<char>> transitive_closure(const Digraph& graph);

/// Tree representation of a laminar family: transitive reduction of the
/// containment DAG, plus a virtual root (set 1..n, reward 0) when the reduction
/// has several maximal sets. Throws ErrorKind::DuplicateSet on repeated reward
/// (or penalty) sets and ErrorKind::Laminarity if the reduction is not a forest.
LaminarTree irreducible_core(const ContainmentDag& dag);
LaminarTree tree_from_instance(const Instance& instance);

/// Invariant violations (parent contains child, siblings disjoint, links consistent).
std::vector<std::string> check_tree(const LaminarTree& tree);

/// Every leaf is a singleton reward set.
bool is_nice(const LaminarTree& tree);

/// Multi-element reward leaf A: contract A together with the chain of
/// single-child ancestors below the first branching node (or the root) into a
/// singleton reward {x}, x = smallest selectable member of A, whose weight is
/// the sum of the rewards on that chain. Players of the chain other than x are
/// retired.
LaminarTree contract_reward_leaf(const LaminarTree& tree, int leaf);

/// Penalty leaf B1 under a penalty parent B2: if B1 = B2 the two nodes merge
/// with summed penalty, otherwise B1 is deleted (requires |B1| >= 2 or an
/// unselectable member; other members of B1 but one are retired).
LaminarTree reduce_penalty_pair(const LaminarTree& tree, int leaf);

/// Penalty leaf B: deleted when it can never be profitably covered (|B| >= 2,
/// or some member is unselectable); a singleton B = {x} is swapped with an
/// equal reward parent, or else receives a zero-weight reward child {x}.
LaminarTree resolve_penalty_leaf(const LaminarTree& tree, int leaf);

/// Gives each selectable player that belongs to some set its own singleton
/// reward leaf (weight 0 unless such a leaf already exists) under the deepest
/// set containing it, and prunes leaves without selectable players.
LaminarTree attach_player_leaves(const LaminarTree& tree);

/// Applies the three leaf rewrites until every leaf is a singleton reward,
/// then attaches player leaves. Preserves the optimal value.
LaminarTree to_nice_tree(const LaminarTree& tree);

/// Profit of a selection under the tree's sets (hit rewards, covered penalties).
double evaluate_tree(const LaminarTree& tree, const std::vector<Player>& members);

/// Exhaustive optimum over selectable players (test oracle).
Selection brute_force_tree(const LaminarTree& tree, int cap = 24);

struct CirculationModel {
    CirculationNetwork network;
    std::vector<int> tree_node_of;  // circulation node -> tree node (-1 for s, t)
    std::vector<int> leaf_arcs;     // s -> leaf arcs
    std::vector<Player> leaf_players;
};

/// s -> leaf (1, 0); node -> parent (or t for the root): reward pair
/// (1, a), (BIG, 0), penalty pair (|B| - 1, 0), (1, -b); t -> s (BIG, 0).
/// Throws ErrorKind::Structural for a tree that is not nice.
CirculationModel build_circulation(const LaminarTree& nice_tree);

struct LaminarSolution {
    Selection selection;
    double circulation_profit = 0.0;
    LaminarTree tree;
    LaminarTree nice_tree;
    CirculationModel model;
    Circulation circulation;
};

LaminarSolution solve_laminar_detailed(const Instance& instance);
Selection solve_laminar(const Instance& instance);

std::string to_dot(const LaminarTree& tree, const std::string& graph_name = "tree");

/// Random laminar hit-reward instance built by recursively partitioning 1..n
/// into nested blocks; each block becomes a reward set, a penalty set, both or
/// neither. Reward (penalty) sets are pairwise distinct.
struct LaminarConfig {
    int n = 8;
    std::uint64_t seed = 0;
    double set_probability = 0.65;
    double both_kinds_probability = 0.15;
    double penalty_probability = 0.5;
};
Instance generate_laminar(const LaminarConfig& config);

}  // namespace rpsp::laminar
