#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rpsp {

/// Undirected simple graph on nodes 0..n-1 with optional node and edge weights
/// (1 when unset).
class SimpleGraph {
public:
    explicit SimpleGraph(int n = 0);

    int node_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return static_cast<int>(edge_weight_.size()); }

    /// Adds {u, v}. Returns false if the edge already exists. Throws on self-loops
    /// or out-of-range endpoints.
    bool add_edge(int u, int v, double weight = 1.0);
    bool has_edge(int u, int v) const;

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    int max_degree() const;

    /// Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const;

    double node_weight(int v) const;
    void set_node_weight(int v, double w);
    double edge_weight(int u, int v) const;
    void set_edge_weight(int u, int v, double w);

    /// Neighbourhood as a bit mask (node_count() <= 64).
    std::uint64_t neighbor_mask(int v) const;

private:
    void check_node(int v) const;

    std::vector<std::vector<int>> adj_;
    std::vector<double> node_weight_;
    std::map<std::pair<int, int>, double> edge_weight_;
};

/// Erdos-Renyi G(n, p).
SimpleGraph random_gnp(int n, double p, std::uint64_t seed);

/// Uniform random recursive tree (each node attaches to an earlier one).
SimpleGraph random_tree(int n, std::uint64_t seed);

SimpleGraph complete_graph(int n);
SimpleGraph path_graph(int n);
SimpleGraph cycle_graph(int n);

/// Exhaustive maximum independent set (n <= 40, branching on bit masks).
std::vector<int> maximum_independent_set(const SimpleGraph& graph);

/// Independent: no edge between two members.
bool is_independent(const SimpleGraph& graph, const std::vector<int>& nodes);

/// PACE-style text: "p tw <nodes> <edges>" then one "e u v" line per edge, 1-based.
std::string to_pace_graph(const SimpleGraph& graph);
/// Accepts the format above; lines starting with 'c' are comments and the
/// leading "e" of edge lines is optional.
SimpleGraph parse_pace_graph(const std::string& text);

std::string to_dot(const SimpleGraph& graph, const std::string& graph_name = "G");

}  // namespace rpsp
