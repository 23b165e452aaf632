#include "rpsp/sgsp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "json.hpp"
#include "rpsp/error.hpp"
#include "rpsp/brute_force.hpp"
#include "rpsp/instance.hpp"

namespace rpsp::sgsp {

using nlohmann::json;

Subgraph make_subgraph(std::vector<int> nodes, std::vector<std::pair<int, int>> edges, double weight) {
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
        nodes.push_back(u);
        nodes.push_back(v);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Subgraph{std::move(nodes), std::move(edges), weight};
}

std::vector<std::string> validate(const SgspInstance& instance) {
    std::vector<std::string> issues;
    int n = instance.host.node_count();
    auto check = [&](const std::vector<Subgraph>& list, const char* kind) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            std::string name = std::string(kind) + " " + std::to_string(i + 1);
            const auto& s = list[i];
            if (s.nodes.empty()) issues.push_back(name + " has no nodes");
            for (int v : s.nodes)
                if (v < 0 || v >= n) issues.push_back(name + " uses unknown node " + std::to_string(v + 1));
            for (auto [u, v] : s.edges) {
                if (!instance.host.has_edge(u, v))
                    issues.push_back(name + " uses non-host edge {" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "}");
                if (!std::binary_search(s.nodes.begin(), s.nodes.end(), u) ||
                    !std::binary_search(s.nodes.begin(), s.nodes.end(), v))
                    issues.push_back(name + " has an edge whose endpoint is not one of its nodes");
            }
            if (!std::isfinite(s.weight) || s.weight < 0) issues.push_back(name + " has an invalid weight");
        }
    };
    check(instance.rewards, "reward");
    check(instance.penalties, "penalty");
    return issues;
}

void require_valid(const SgspInstance& instance) {
    auto issues = validate(instance);
    if (issues.empty()) return;
    std::string msg;
    for (const auto& s : issues) msg += (msg.empty() ? "" : "; ") + s;
    throw Error(ErrorKind::InvalidInstance, msg);
}

double evaluate_sgsp(const SgspInstance& instance, const std::vector<int>& nodes) {
    std::vector<char> in(static_cast<std::size_t>(instance.host.node_count()), 0);
    for (int v : nodes) {
        if (v < 0 || v >= instance.host.node_count())
            throw Error(ErrorKind::InvalidSelection, "node " + std::to_string(v + 1) + " is not in the host");
        in[static_cast<std::size_t>(v)] = 1;
    }
    double value = 0.0;
    for (const auto& r : instance.rewards)
        if (std::any_of(r.nodes.begin(), r.nodes.end(), [&](int v) { return in[static_cast<std::size_t>(v)]; }))
            value += r.weight;
    // Penalty edges are host edges, so node containment implies edge containment in G[S].
    for (const auto& p : instance.penalties)
        if (std::all_of(p.nodes.begin(), p.nodes.end(), [&](int v) { return in[static_cast<std::size_t>(v)]; }))
            value -= p.weight;
    return value;
}

SgspSolution brute_force_sgsp(const SgspInstance& instance, int cap) {
    int n = instance.host.node_count();
    if (n > cap) throw Error(ErrorKind::SizeLimit, "subgraph brute force limited to " + std::to_string(cap) + " nodes");
    require_valid(instance);
    auto mask_of = [](const Subgraph& s) {
        std::uint64_t m = 0;
        for (int v : s.nodes) m |= std::uint64_t{1} << v;
        return m;
    };
    std::vector<std::pair<std::uint64_t, double>> rewards, penalties;
    for (const auto& r : instance.rewards) rewards.emplace_back(mask_of(r), r.weight);
    for (const auto& p : instance.penalties) penalties.emplace_back(mask_of(p), p.weight);
    std::uint64_t best = 0;
    double best_value = 0.0;
    for (std::uint64_t x = 1; x < (std::uint64_t{1} << n); ++x) {
        double value = 0.0;
        for (auto [m, w] : rewards)
            if (m & x) value += w;
        for (auto [m, w] : penalties)
            if ((m & x) == m) value -= w;
        if (value > best_value + kValueTolerance ||
            (value >= best_value - kValueTolerance && lex_less(x, best))) {
            best_value = value;
            best = x;
        }
    }
    SgspSolution out;
    for (int v = 0; v < n; ++v)
        if ((best >> v) & 1U) out.nodes.push_back(v);
    out.value = best_value;
    return out;
}

StarReduction star_reduction(const SimpleGraph& graph) {
    int n = graph.node_count();
    StarReduction out;
    out.center = n;
    out.big_m = n + 1.0;
    out.instance.host = SimpleGraph(n + 1);
    for (int v = 0; v < n; ++v) {
        out.instance.host.add_edge(v, n);
        out.instance.rewards.push_back(make_subgraph({v}, {}, 1.0));
    }
    out.instance.rewards.push_back(make_subgraph({n}, {}, out.big_m));
    for (auto [u, v] : graph.edges())
        out.instance.penalties.push_back(make_subgraph({u, n, v}, {{u, n}, {v, n}}, n + 1.0));
    return out;
}

FrequencyProfile frequency(const SgspInstance& instance) {
    FrequencyProfile out;
    out.per_node.assign(static_cast<std::size_t>(instance.host.node_count()), 0);
    for (const auto& p : instance.penalties)
        for (int v : p.nodes) out.max = std::max(out.max, ++out.per_node[static_cast<std::size_t>(v)]);
    return out;
}

ConstraintGraph build_constraint_graph(const SgspInstance& instance) {
    require_valid(instance);
    ConstraintGraph bp;
    bp.host_nodes = instance.host.node_count();
    bp.penalties = static_cast<int>(instance.penalties.size());
    bp.graph = SimpleGraph(bp.host_nodes + 2 * bp.penalties);
    for (int j = 0; j < bp.penalties; ++j) {
        int c = bp.constraint_node(j);
        for (int v : instance.penalties[static_cast<std::size_t>(j)].nodes) bp.graph.add_edge(bp.x_node(v), c);
        bp.graph.add_edge(bp.z_node(j), c);
    }
    return bp;
}

SimpleGraph build_interaction_graph(const ConstraintGraph& bp) {
    SimpleGraph ig(bp.variable_count());
    for (int j = 0; j < bp.penalties; ++j) {
        const auto& vars = bp.graph.neighbors(bp.constraint_node(j));
        for (std::size_t a = 0; a < vars.size(); ++a)
            for (std::size_t b = a + 1; b < vars.size(); ++b) ig.add_edge(vars[a], vars[b]);
    }
    return ig;
}

bool is_connected_within(const SimpleGraph& graph, const std::vector<int>& nodes) {
    if (nodes.empty()) return true;
    std::set<int> allowed(nodes.begin(), nodes.end());
    std::set<int> seen{nodes.front()};
    std::vector<int> stack{nodes.front()};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : graph.neighbors(v))
            if (allowed.count(u) && seen.insert(u).second) stack.push_back(u);
    }
    return seen.size() == allowed.size();
}

bool is_tree(const SimpleGraph& graph) {
    int n = graph.node_count();
    if (n == 0) return true;
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
    return graph.edge_count() == n - 1 && is_connected_within(graph, all);
}

TreeDecomposition lemma_decomposition(const SgspInstance& instance) {
    require_valid(instance);
    const auto& host = instance.host;
    if (!is_tree(host)) throw Error(ErrorKind::Structural, "host graph is not a tree");
    for (std::size_t i = 0; i < instance.rewards.size(); ++i)
        if (instance.rewards[i].nodes.size() != 1 || !instance.rewards[i].edges.empty())
            throw Error(ErrorKind::Shape, "reward " + std::to_string(i + 1) + " is not a single node");
    for (std::size_t j = 0; j < instance.penalties.size(); ++j)
        if (!is_connected_within(host, instance.penalties[j].nodes))
            throw Error(ErrorKind::Structural, "penalty " + std::to_string(j + 1) + " is not connected");
    ConstraintGraph bp;
    bp.host_nodes = host.node_count();
    bp.penalties = static_cast<int>(instance.penalties.size());

    TreeDecomposition td;
    for (int v = 0; v < host.node_count(); ++v) {
        std::vector<int> bag{bp.x_node(v)};
        for (int j = 0; j < bp.penalties; ++j) {
            const auto& nodes = instance.penalties[static_cast<std::size_t>(j)].nodes;
            if (std::binary_search(nodes.begin(), nodes.end(), v)) bag.push_back(bp.constraint_node(j));
        }
        td.add_bag(std::move(bag));
    }
    td.edges = host.edges();
    for (int j = 0; j < bp.penalties; ++j) {
        int leaf = td.add_bag({bp.constraint_node(j), bp.z_node(j)});
        td.edges.emplace_back(instance.penalties[static_cast<std::size_t>(j)].nodes.front(), leaf);
    }
    return td;
}

SgspInstance random_tree_instance(const SgspTreeConfig& config) {
    if (config.n < 1 || config.penalties < 0 || config.max_penalty_size < 1 || config.max_frequency < 0)
        throw Error(ErrorKind::InfeasibleConfig, "invalid subgraph instance configuration");
    std::mt19937_64 rng(config.seed);
    SgspInstance out;
    out.host = random_tree(config.n, rng());
    std::uniform_int_distribution<int> weight(1, 100);
    std::bernoulli_distribution rewarded(0.8);
    for (int v = 0; v < config.n; ++v)
        if (rewarded(rng)) out.rewards.push_back(make_subgraph({v}, {}, weight(rng)));
    std::vector<int> load(static_cast<std::size_t>(config.n), 0);
    std::uniform_int_distribution<int> pick(0, config.n - 1);
    for (int j = 0; j < config.penalties; ++j) {
        int target = std::uniform_int_distribution<int>(1, config.max_penalty_size)(rng);
        int start = pick(rng);
        if (load[static_cast<std::size_t>(start)] >= config.max_frequency) continue;
        std::vector<int> nodes{start};
        std::vector<std::pair<int, int>> edges;
        std::set<int> inside{start};
        while (static_cast<int>(nodes.size()) < target) {
            std::vector<std::pair<int, int>> frontier;
            for (int v : nodes)
                for (int u : out.host.neighbors(v))
                    if (!inside.count(u) && load[static_cast<std::size_t>(u)] < config.max_frequency)
                        frontier.emplace_back(v, u);
            if (frontier.empty()) break;
            auto [from, to] = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)];
            nodes.push_back(to);
            inside.insert(to);
            edges.emplace_back(from, to);
        }
        for (int v : nodes) ++load[static_cast<std::size_t>(v)];
        out.penalties.push_back(make_subgraph(std::move(nodes), std::move(edges), weight(rng)));
    }
    return out;
}

namespace {

Subgraph parse_subgraph(const json& node, int n, const std::string& where) {
    if (!node.is_object()) throw Error(ErrorKind::Parse, where + " must be an object");
    for (const auto& item : node.items())
        if (item.key() != "nodes" && item.key() != "edges" && item.key() != "weight")
            throw Error(ErrorKind::Parse, "unknown key '" + item.key() + "' in " + where);
    if (!node.contains("weight") || !node.at("weight").is_number())
        throw Error(ErrorKind::Parse, where + " needs a numeric \"weight\"");
    auto read_node = [&](const json& v) {
        if (!v.is_number_integer()) throw Error(ErrorKind::Parse, where + ": node ids must be integers");
        int id = v.get<int>();
        if (id < 1 || id > n) throw Error(ErrorKind::Parse, where + ": node " + std::to_string(id) + " out of range");
        return id - 1;
    };
    std::vector<int> nodes;
    std::vector<std::pair<int, int>> edges;
    if (node.contains("nodes")) {
        if (!node.at("nodes").is_array()) throw Error(ErrorKind::Parse, where + ": \"nodes\" must be an array");
        for (const auto& v : node.at("nodes")) nodes.push_back(read_node(v));
    }
    if (node.contains("edges")) {
        if (!node.at("edges").is_array()) throw Error(ErrorKind::Parse, where + ": \"edges\" must be an array");
        for (const auto& e : node.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::Parse, where + ": edges are [u, v] pairs");
            edges.emplace_back(read_node(e[0]), read_node(e[1]));
        }
    }
    return make_subgraph(std::move(nodes), std::move(edges), node.at("weight").get<double>());
}

json subgraph_to_json(const Subgraph& s) {
    json nodes = json::array();
    for (int v : s.nodes) nodes.push_back(v + 1);
    json edges = json::array();
    for (auto [u, v] : s.edges) edges.push_back({u + 1, v + 1});
    return {{"nodes", nodes}, {"edges", edges}, {"weight", s.weight}};
}

}  // namespace

SgspInstance parse_sgsp(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
    if (!root.is_object()) throw Error(ErrorKind::Parse, "subgraph instance must be a JSON object");
    for (const auto& item : root.items())
        if (item.key() != "n" && item.key() != "host_edges" && item.key() != "rewards" && item.key() != "penalties")
            throw Error(ErrorKind::Parse, "unknown key '" + item.key() + "'");
    if (!root.contains("n") || !root.at("n").is_number_integer() || root.at("n").get<int>() < 0)
        throw Error(ErrorKind::Parse, "\"n\" must be a non-negative integer");
    int n = root.at("n").get<int>();
    SgspInstance out;
    out.host = SimpleGraph(n);
    if (root.contains("host_edges")) {
        for (const auto& e : root.at("host_edges")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw Error(ErrorKind::Parse, "host edges are [u, v] integer pairs");
            int u = e[0].get<int>();
            int v = e[1].get<int>();
            if (u < 1 || v < 1 || u > n || v > n || u == v) throw Error(ErrorKind::Parse, "host edge out of range");
            if (!out.host.add_edge(u - 1, v - 1)) throw Error(ErrorKind::Parse, "duplicate host edge");
        }
    }
    auto read_list = [&](const char* key, std::vector<Subgraph>& into) {
        if (!root.contains(key)) return;
        if (!root.at(key).is_array()) throw Error(ErrorKind::Parse, std::string("\"") + key + "\" must be an array");
        std::size_t i = 0;
        for (const auto& s : root.at(key)) into.push_back(parse_subgraph(s, n, std::string(key) + "[" + std::to_string(i++) + "]"));
    };
    read_list("rewards", out.rewards);
    read_list("penalties", out.penalties);
    require_valid(out);
    return out;
}

std::string sgsp_to_json(const SgspInstance& instance, int indent) {
    json root;
    root["n"] = instance.host.node_count();
    json edges = json::array();
    for (auto [u, v] : instance.host.edges()) edges.push_back({u + 1, v + 1});
    root["host_edges"] = edges;
    root["rewards"] = json::array();
    for (const auto& r : instance.rewards) root["rewards"].push_back(subgraph_to_json(r));
    root["penalties"] = json::array();
    for (const auto& p : instance.penalties) root["penalties"].push_back(subgraph_to_json(p));
    return root.dump(indent) + "\n";
}

}  // namespace rpsp::sgsp
