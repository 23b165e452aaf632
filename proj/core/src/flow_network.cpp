#include "rpsp/flow_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "rpsp/error.hpp"

namespace rpsp {

int FlowNetwork::add_node(std::string name) {
    node_names.push_back(std::move(name));
    return node_count() - 1;
}

void FlowNetwork::add_arc(int from, int to, double capacity) {
    if (capacity < 0.0) throw Error(ErrorKind::Structural, "negative arc capacity");
    arcs.push_back({from, to, capacity, false});
}

void FlowNetwork::add_big_arc(int from, int to) { arcs.push_back({from, to, big, true}); }

namespace {

class Dinic {
public:
    explicit Dinic(const FlowNetwork& net) : n_(net.node_count()), head_(static_cast<std::size_t>(n_), -1) {
        double scale = 1.0;
        for (const auto& a : net.arcs) scale = std::max(scale, a.capacity);
        eps_ = 1e-12 * scale;
        for (const auto& a : net.arcs) {
            add_edge(a.from, a.to, a.capacity);
        }
    }

    double run(int s, int t) {
        double total = 0.0;
        while (bfs(s, t)) {
            iter_ = head_;
            while (true) {
                const double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
                if (pushed <= eps_) break;
                total += pushed;
            }
        }
        return total;
    }

    std::vector<char> reachable_from(int s) const {
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
                const int v = to_[static_cast<std::size_t>(e)];
                if (!seen[static_cast<std::size_t>(v)] && residual(e) > eps_) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    stack.push_back(v);
                }
            }
        }
        return seen;
    }

    /// Flow on the forward edge created for the i-th input arc.
    double flow_of(int arc_index) const { return flow_[static_cast<std::size_t>(2 * arc_index)]; }

private:
    double residual(int e) const { return cap_[static_cast<std::size_t>(e)] - flow_[static_cast<std::size_t>(e)]; }

    void add_edge(int u, int v, double c) {
        push(u, v, c);
        push(v, u, 0.0);
    }

    void push(int u, int v, double c) {
        to_.push_back(v);
        cap_.push_back(c);
        flow_.push_back(0.0);
        next_.push_back(head_[static_cast<std::size_t>(u)]);
        head_[static_cast<std::size_t>(u)] = static_cast<int>(to_.size()) - 1;
    }

    bool bfs(int s, int t) {
        level_.assign(static_cast<std::size_t>(n_), -1);
        std::queue<int> q;
        level_[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
                const int v = to_[static_cast<std::size_t>(e)];
                if (level_[static_cast<std::size_t>(v)] < 0 && residual(e) > eps_) {
                    level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    double dfs(int u, int t, double limit) {
        if (u == t) return limit;
        for (int& e = iter_[static_cast<std::size_t>(u)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
            const int v = to_[static_cast<std::size_t>(e)];
            if (level_[static_cast<std::size_t>(v)] != level_[static_cast<std::size_t>(u)] + 1 || residual(e) <= eps_) continue;
            const double got = dfs(v, t, std::min(limit, residual(e)));
            if (got > eps_) {
                flow_[static_cast<std::size_t>(e)] += got;
                flow_[static_cast<std::size_t>(e ^ 1)] -= got;
                return got;
            }
        }
        return 0.0;
    }

    int n_;
    double eps_ = 1e-12;
    std::vector<int> head_, next_, to_, level_, iter_;
    std::vector<double> cap_, flow_;
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& network) {
    if (network.source < 0 || network.sink < 0 || network.source == network.sink) {
        throw Error(ErrorKind::Structural, "network needs distinct source and sink");
    }
    Dinic dinic(network);
    MaxFlowResult result;
    result.value = dinic.run(network.source, network.sink);

    const auto side = dinic.reachable_from(network.source);
    for (int v = 0; v < network.node_count(); ++v) {
        (side[static_cast<std::size_t>(v)] ? result.cut.source_side : result.cut.sink_side).push_back(v);
    }
    result.arc_flow.resize(network.arcs.size());
    for (std::size_t i = 0; i < network.arcs.size(); ++i) {
        const auto& a = network.arcs[i];
        result.arc_flow[i] = dinic.flow_of(static_cast<int>(i));
        if (side[static_cast<std::size_t>(a.from)] && !side[static_cast<std::size_t>(a.to)]) {
            result.cut.cut_arcs.push_back(static_cast<int>(i));
            result.cut.capacity += a.capacity;
            result.cut.severs_big_arc = result.cut.severs_big_arc || a.big;
        }
    }
    const double scale = std::max(1.0, std::abs(result.value));
    if (std::abs(result.cut.capacity - result.value) > 1e-9 * scale) {
        throw Error(ErrorKind::Solver, "max-flow/min-cut certificate mismatch");
    }
    return result;
}

std::string to_dot(const FlowNetwork& network, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << graph_name << " {\n  rankdir=LR;\n";
    for (int v = 0; v < network.node_count(); ++v) {
        out << "  n" << v << " [label=\"" << network.node_names[static_cast<std::size_t>(v)] << "\"];\n";
    }
    for (const auto& a : network.arcs) {
        out << "  n" << a.from << " -> n" << a.to << " [label=\"cap=";
        if (a.big) {
            out << "BIG";
        } else {
            out << a.capacity;
        }
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace rpsp
