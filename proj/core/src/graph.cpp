#include "rpsp/graph.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

#include "rpsp/error.hpp"

namespace rpsp {

SimpleGraph::SimpleGraph(int n) {
    if (n < 0) throw Error(ErrorKind::InvalidInstance, "negative node count");
    adj_.resize(static_cast<std::size_t>(n));
    node_weight_.assign(static_cast<std::size_t>(n), 1.0);
}

void SimpleGraph::check_node(int v) const {
    if (v < 0 || v >= node_count())
        throw Error(ErrorKind::InvalidInstance, "node " + std::to_string(v) + " out of range");
}

bool SimpleGraph::add_edge(int u, int v, double weight) {
    check_node(u);
    check_node(v);
    if (u == v) throw Error(ErrorKind::InvalidInstance, "self-loop at node " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (edge_weight_.count(key)) return false;
    edge_weight_[key] = weight;
    auto insert = [](std::vector<int>& list, int x) { list.insert(std::lower_bound(list.begin(), list.end(), x), x); };
    insert(adj_[static_cast<std::size_t>(u)], v);
    insert(adj_[static_cast<std::size_t>(v)], u);
    return true;
}

bool SimpleGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= node_count() || v >= node_count()) return false;
    return edge_weight_.count(std::minmax(u, v)) > 0;
}

int SimpleGraph::max_degree() const {
    int best = 0;
    for (const auto& list : adj_) best = std::max(best, static_cast<int>(list.size()));
    return best;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_weight_.size());
    for (const auto& [key, w] : edge_weight_) out.push_back(key);
    return out;
}

double SimpleGraph::node_weight(int v) const {
    check_node(v);
    return node_weight_[static_cast<std::size_t>(v)];
}

void SimpleGraph::set_node_weight(int v, double w) {
    check_node(v);
    node_weight_[static_cast<std::size_t>(v)] = w;
}

double SimpleGraph::edge_weight(int u, int v) const {
    auto it = edge_weight_.find(std::minmax(u, v));
    if (it == edge_weight_.end())
        throw Error(ErrorKind::InvalidInstance, "no edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    return it->second;
}

void SimpleGraph::set_edge_weight(int u, int v, double w) {
    auto it = edge_weight_.find(std::minmax(u, v));
    if (it == edge_weight_.end())
        throw Error(ErrorKind::InvalidInstance, "no edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    it->second = w;
}

std::uint64_t SimpleGraph::neighbor_mask(int v) const {
    std::uint64_t mask = 0;
    for (int u : neighbors(v)) mask |= std::uint64_t{1} << u;
    return mask;
}

SimpleGraph random_gnp(int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution edge(p);
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (edge(rng)) g.add_edge(u, v);
    return g;
}

SimpleGraph random_tree(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SimpleGraph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
    return g;
}

SimpleGraph complete_graph(int n) {
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

SimpleGraph path_graph(int n) {
    SimpleGraph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v - 1, v);
    return g;
}

SimpleGraph cycle_graph(int n) {
    SimpleGraph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

namespace {

// Largest independent subset of `candidates`; branches on a max-degree node.
std::uint64_t mis_mask(const std::vector<std::uint64_t>& nbr, std::uint64_t candidates) {
    if (candidates == 0) return 0;
    int pick = -1;
    int pick_degree = -1;
    for (std::uint64_t rest = candidates; rest; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        int d = std::popcount(nbr[static_cast<std::size_t>(v)] & candidates);
        if (d <= 1) {
            // A node of degree <= 1 is always in some maximum independent set.
            std::uint64_t bit = std::uint64_t{1} << v;
            return bit | mis_mask(nbr, candidates & ~bit & ~nbr[static_cast<std::size_t>(v)]);
        }
        if (d > pick_degree) {
            pick = v;
            pick_degree = d;
        }
    }
    std::uint64_t bit = std::uint64_t{1} << pick;
    std::uint64_t with = bit | mis_mask(nbr, candidates & ~bit & ~nbr[static_cast<std::size_t>(pick)]);
    std::uint64_t without = mis_mask(nbr, candidates & ~bit);
    return std::popcount(with) >= std::popcount(without) ? with : without;
}

}  // namespace

std::vector<int> maximum_independent_set(const SimpleGraph& graph) {
    int n = graph.node_count();
    if (n > 40) throw Error(ErrorKind::SizeLimit, "exhaustive independent set is limited to 40 nodes");
    std::vector<std::uint64_t> nbr(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) nbr[static_cast<std::size_t>(v)] = graph.neighbor_mask(v);
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::uint64_t best = mis_mask(nbr, all);
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if ((best >> v) & 1U) out.push_back(v);
    return out;
}

bool is_independent(const SimpleGraph& graph, const std::vector<int>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (graph.has_edge(nodes[i], nodes[j])) return false;
    return true;
}

std::string to_pace_graph(const SimpleGraph& graph) {
    std::ostringstream os;
    os << "p tw " << graph.node_count() << ' ' << graph.edge_count() << '\n';
    for (auto [u, v] : graph.edges()) os << "e " << u + 1 << ' ' << v + 1 << '\n';
    return os.str();
}

SimpleGraph parse_pace_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_header = false;
    int declared_edges = 0;
    SimpleGraph g;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::Parse, "graph line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream fields(line);
        std::string head;
        if (!(fields >> head) || head == "c") continue;
        if (head == "p") {
            std::string kind;
            int nodes = 0;
            if (have_header) fail("second header");
            if (!(fields >> kind >> nodes >> declared_edges) || kind != "tw" || nodes < 0 || declared_edges < 0)
                fail("expected 'p tw <nodes> <edges>'");
            g = SimpleGraph(nodes);
            have_header = true;
            continue;
        }
        if (!have_header) fail("edge before header");
        int u = 0;
        int v = 0;
        bool ok;
        if (head == "e") {
            ok = static_cast<bool>(fields >> u >> v);
        } else {
            std::istringstream first(head);
            ok = static_cast<bool>(first >> u) && static_cast<bool>(fields >> v);
        }
        std::string extra;
        if (!ok || (fields >> extra)) fail("expected 'e <u> <v>'");
        if (u < 1 || v < 1 || u > g.node_count() || v > g.node_count()) fail("endpoint out of range");
        if (u == v) fail("self-loop");
        if (!g.add_edge(u - 1, v - 1)) fail("duplicate edge");
    }
    if (!have_header) throw Error(ErrorKind::Parse, "graph has no 'p tw' header");
    if (g.edge_count() != declared_edges)
        throw Error(ErrorKind::Parse, "header declares " + std::to_string(declared_edges) + " edges, found " +
                                          std::to_string(g.edge_count()));
    return g;
}

std::string to_dot(const SimpleGraph& graph, const std::string& graph_name) {
    std::ostringstream os;
    os << "graph " << graph_name << " {\n";
    for (int v = 0; v < graph.node_count(); ++v) os << "  " << v + 1 << ";\n";
    for (auto [u, v] : graph.edges())
        os << "  " << u + 1 << " -- " << v + 1 << " [label=\"" << graph.edge_weight(u, v) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace rpsp
