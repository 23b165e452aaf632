#include "rpsp/circulation.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rpsp/error.hpp"

namespace rpsp {

int CirculationNetwork::add_node(std::string name) {
    node_names.push_back(std::move(name));
    return node_count() - 1;
}

int CirculationNetwork::add_arc(int from, int to, std::int64_t capacity, double profit) {
    if (capacity < 0) throw Error(ErrorKind::Structural, "negative arc capacity");
    arcs.push_back({from, to, capacity, profit, false});
    return static_cast<int>(arcs.size()) - 1;
}

int CirculationNetwork::add_big_arc(int from, int to, double profit) {
    arcs.push_back({from, to, big, profit, true});
    return static_cast<int>(arcs.size()) - 1;
}

namespace {

constexpr double kCycleEps = 1e-9;

struct Residual {
    int to;
    int arc;       // index into network arcs
    bool forward;  // forward residual (push more) or backward (cancel)
};

}  // namespace

Circulation max_profit_circulation(const CirculationNetwork& network) {
    const int n = network.node_count();
    Circulation out;
    out.flow.assign(network.arcs.size(), 0);
    if (n == 0) return out;

    auto residual_cap = [&](const Residual& r) {
        const auto& a = network.arcs[static_cast<std::size_t>(r.arc)];
        return r.forward ? a.capacity - out.flow[static_cast<std::size_t>(r.arc)]
                         : out.flow[static_cast<std::size_t>(r.arc)];
    };
    auto residual_cost = [&](const Residual& r) {
        const double p = network.arcs[static_cast<std::size_t>(r.arc)].profit;
        return r.forward ? -p : p;
    };

    std::vector<std::vector<Residual>> adj(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < network.arcs.size(); ++i) {
        const auto& a = network.arcs[i];
        adj[static_cast<std::size_t>(a.from)].push_back({a.to, static_cast<int>(i), true});
        adj[static_cast<std::size_t>(a.to)].push_back({a.from, static_cast<int>(i), false});
    }

    std::vector<double> dist(static_cast<std::size_t>(n));
    std::vector<int> pred_node(static_cast<std::size_t>(n));
    std::vector<const Residual*> pred_edge(static_cast<std::size_t>(n));
    const std::size_t max_rounds = 1'000'000;
    for (std::size_t round = 0;; ++round) {
        if (round == max_rounds) throw Error(ErrorKind::Solver, "cycle canceling did not converge");
        std::fill(dist.begin(), dist.end(), 0.0);
        std::fill(pred_node.begin(), pred_node.end(), -1);
        int last_relaxed = -1;
        for (int pass = 0; pass < n; ++pass) {
            last_relaxed = -1;
            for (int u = 0; u < n; ++u) {
                for (const auto& r : adj[static_cast<std::size_t>(u)]) {
                    if (residual_cap(r) <= 0) continue;
                    const double cand = dist[static_cast<std::size_t>(u)] + residual_cost(r);
                    if (cand < dist[static_cast<std::size_t>(r.to)] - kCycleEps) {
                        dist[static_cast<std::size_t>(r.to)] = cand;
                        pred_node[static_cast<std::size_t>(r.to)] = u;
                        pred_edge[static_cast<std::size_t>(r.to)] = &r;
                        last_relaxed = r.to;
                    }
                }
            }
            if (last_relaxed < 0) break;
        }
        if (last_relaxed < 0) break;

        // A relaxation in the n-th pass means a negative cycle is reachable
        // along predecessor links; walking n steps lands inside it.
        int v = last_relaxed;
        for (int i = 0; i < n; ++i) v = pred_node[static_cast<std::size_t>(v)];
        std::vector<const Residual*> cycle;
        int u = v;
        do {
            cycle.push_back(pred_edge[static_cast<std::size_t>(u)]);
            u = pred_node[static_cast<std::size_t>(u)];
        } while (u != v);

        std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
        for (const Residual* r : cycle) bottleneck = std::min(bottleneck, residual_cap(*r));
        for (const Residual* r : cycle) {
            out.flow[static_cast<std::size_t>(r->arc)] += r->forward ? bottleneck : -bottleneck;
        }
    }
    out.profit = circulation_profit(network, out.flow);
    return out;
}

double circulation_profit(const CirculationNetwork& network, const std::vector<std::int64_t>& flow) {
    double profit = 0.0;
    for (std::size_t i = 0; i < network.arcs.size(); ++i) {
        profit += network.arcs[i].profit * static_cast<double>(flow[i]);
    }
    return profit;
}

std::vector<std::string> check_circulation(const CirculationNetwork& network,
                                           const std::vector<std::int64_t>& flow) {
    std::vector<std::string> issues;
    if (flow.size() != network.arcs.size()) {
        issues.push_back("flow vector length does not match arc count");
        return issues;
    }
    std::vector<std::int64_t> balance(static_cast<std::size_t>(network.node_count()), 0);
    for (std::size_t i = 0; i < network.arcs.size(); ++i) {
        const auto& a = network.arcs[i];
        if (flow[i] < 0 || flow[i] > a.capacity) {
            issues.push_back("arc " + std::to_string(i) + " flow " + std::to_string(flow[i]) +
                             " outside [0," + std::to_string(a.capacity) + "]");
        }
        balance[static_cast<std::size_t>(a.from)] -= flow[i];
        balance[static_cast<std::size_t>(a.to)] += flow[i];
    }
    for (std::size_t v = 0; v < balance.size(); ++v) {
        if (balance[v] != 0) {
            issues.push_back("node " + network.node_names[v] + " violates conservation by " +
                             std::to_string(balance[v]));
        }
    }
    return issues;
}

std::string to_dot(const CirculationNetwork& network, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << graph_name << " {\n";
    for (int v = 0; v < network.node_count(); ++v) {
        out << "  n" << v << " [label=\"" << network.node_names[static_cast<std::size_t>(v)] << "\"];\n";
    }
    for (const auto& a : network.arcs) {
        out << "  n" << a.from << " -> n" << a.to << " [label=\"(";
        if (a.big) out << "BIG"; else out << a.capacity;
        out << "," << a.profit << ")\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace rpsp
