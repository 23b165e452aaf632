#include "rpsp/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "rpsp/error.hpp"

namespace rpsp {

int TreeDecomposition::width() const {
    int best = -1;
    for (const auto& b : bags) best = std::max(best, static_cast<int>(b.size()) - 1);
    return best;
}

int TreeDecomposition::add_bag(std::vector<int> bag) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    bags.push_back(std::move(bag));
    return bag_count() - 1;
}

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

bool bag_has(const std::vector<int>& bag, int v) { return std::binary_search(bag.begin(), bag.end(), v); }

std::vector<std::vector<int>> bag_adjacency(const TreeDecomposition& td) {
    std::vector<std::vector<int>> adj(td.bags.size());
    for (auto [a, b] : td.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
}

std::string bag_text(const std::vector<int>& bag) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < bag.size(); ++i) os << (i ? "," : "") << bag[i];
    os << '}';
    return os.str();
}

}  // namespace

std::vector<std::string> validate_decomposition(const SimpleGraph& graph, const TreeDecomposition& td) {
    std::vector<std::string> issues;
    int nodes = graph.node_count();
    int count = td.bag_count();
    for (int i = 0; i < count; ++i) {
        const auto& bag = td.bags[static_cast<std::size_t>(i)];
        if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            issues.push_back("bag " + std::to_string(i) + " is not sorted and duplicate free");
        for (int v : bag)
            if (v < 0 || v >= nodes) issues.push_back("bag " + std::to_string(i) + " holds unknown node " + std::to_string(v));
    }
    if (!issues.empty()) return issues;

    bool edges_ok = true;
    for (auto [a, b] : td.edges)
        if (a < 0 || b < 0 || a >= count || b >= count || a == b) {
            issues.push_back("tree edge (" + std::to_string(a) + "," + std::to_string(b) + ") is invalid");
            edges_ok = false;
        }
    if (edges_ok) {
        if (static_cast<int>(td.edges.size()) != std::max(count - 1, 0)) {
            issues.push_back("bag graph has " + std::to_string(td.edges.size()) + " edges for " +
                             std::to_string(count) + " bags, so it is not a tree");
        } else {
            DisjointSets ds(count);
            for (auto [a, b] : td.edges)
                if (!ds.unite(a, b)) issues.push_back("bag graph has a cycle");
        }
    }

    std::vector<std::vector<int>> holders(static_cast<std::size_t>(nodes));
    for (int i = 0; i < count; ++i)
        for (int v : td.bags[static_cast<std::size_t>(i)]) holders[static_cast<std::size_t>(v)].push_back(i);
    for (int v = 0; v < nodes; ++v)
        if (holders[static_cast<std::size_t>(v)].empty()) issues.push_back("node " + std::to_string(v) + " is in no bag");
    for (auto [u, v] : graph.edges()) {
        bool covered = false;
        for (int i : holders[static_cast<std::size_t>(u)])
            if (bag_has(td.bags[static_cast<std::size_t>(i)], v)) {
                covered = true;
                break;
            }
        if (!covered) issues.push_back("edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag");
    }
    if (edges_ok) {
        for (int v = 0; v < nodes; ++v) {
            const auto& h = holders[static_cast<std::size_t>(v)];
            if (h.size() < 2) continue;
            DisjointSets ds(count);
            int components = static_cast<int>(h.size());
            for (auto [a, b] : td.edges)
                if (bag_has(td.bags[static_cast<std::size_t>(a)], v) && bag_has(td.bags[static_cast<std::size_t>(b)], v) &&
                    ds.unite(a, b))
                    --components;
            if (components != 1)
                issues.push_back("bags holding node " + std::to_string(v) + " are not connected");
        }
    }
    return issues;
}

void require_valid_decomposition(const SimpleGraph& graph, const TreeDecomposition& td) {
    auto issues = validate_decomposition(graph, td);
    if (issues.empty()) return;
    std::string msg = "invalid tree decomposition";
    for (const auto& s : issues) msg += "; " + s;
    throw Error(ErrorKind::Decomposition, msg);
}

std::vector<std::string> check_nice(const TreeDecomposition& td) {
    std::vector<std::string> issues;
    int count = td.bag_count();
    if (!td.nice) issues.push_back("not tagged nice");
    if (count == 0) return issues;
    if (td.root < 0 || td.root >= count) {
        issues.push_back("root out of range");
        return issues;
    }
    if (td.kinds.size() != td.bags.size() || td.pivot.size() != td.bags.size() || td.children.size() != td.bags.size()) {
        issues.push_back("per-bag fields have the wrong size");
        return issues;
    }
    std::vector<int> seen(static_cast<std::size_t>(count), 0);
    std::vector<int> stack{td.root};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(i)]++) {
            issues.push_back("bag " + std::to_string(i) + " reached twice");
            continue;
        }
        const auto& bag = td.bags[static_cast<std::size_t>(i)];
        const auto& ch = td.children[static_cast<std::size_t>(i)];
        BagKind kind = td.kinds[static_cast<std::size_t>(i)];
        int piv = td.pivot[static_cast<std::size_t>(i)];
        std::string name = "bag " + std::to_string(i);
        for (int c : ch) {
            if (c < 0 || c >= count) {
                issues.push_back(name + " has an invalid child");
                continue;
            }
            stack.push_back(c);
        }
        switch (kind) {
            case BagKind::Leaf:
                if (!ch.empty() || bag.size() != 1) issues.push_back(name + ": leaf must be a single node without children");
                break;
            case BagKind::Introduce: {
                if (ch.size() != 1) { issues.push_back(name + ": introduce needs one child"); break; }
                auto expect = td.bags[static_cast<std::size_t>(ch[0])];
                if (bag_has(expect, piv)) issues.push_back(name + ": introduced node already in child");
                expect.push_back(piv);
                std::sort(expect.begin(), expect.end());
                if (expect != bag) issues.push_back(name + ": introduce bag mismatch");
                break;
            }
            case BagKind::Forget: {
                if (ch.size() != 1) { issues.push_back(name + ": forget needs one child"); break; }
                auto expect = td.bags[static_cast<std::size_t>(ch[0])];
                if (!bag_has(expect, piv)) issues.push_back(name + ": forgotten node not in child");
                expect.erase(std::remove(expect.begin(), expect.end(), piv), expect.end());
                if (expect != bag) issues.push_back(name + ": forget bag mismatch");
                break;
            }
            case BagKind::Join:
                if (ch.size() != 2) { issues.push_back(name + ": join needs two children"); break; }
                for (int c : ch)
                    if (td.bags[static_cast<std::size_t>(c)] != bag) issues.push_back(name + ": join child bag differs");
                break;
            case BagKind::Plain:
                issues.push_back(name + " has no nice kind");
                break;
        }
    }
    for (int i = 0; i < count; ++i)
        if (!seen[static_cast<std::size_t>(i)]) issues.push_back("bag " + std::to_string(i) + " unreachable from root");
    return issues;
}

namespace {

struct NiceBuilder {
    TreeDecomposition out;

    int add(std::vector<int> bag, BagKind kind, int pivot, std::vector<int> children) {
        int id = out.add_bag(std::move(bag));
        out.kinds.push_back(kind);
        out.pivot.push_back(pivot);
        for (int c : children) out.edges.emplace_back(c, id);
        out.children.push_back(std::move(children));
        return id;
    }

    int introduce(int child, int v) {
        auto bag = out.bags[static_cast<std::size_t>(child)];
        bag.push_back(v);
        return add(std::move(bag), BagKind::Introduce, v, {child});
    }

    int forget(int child, int v) {
        auto bag = out.bags[static_cast<std::size_t>(child)];
        bag.erase(std::remove(bag.begin(), bag.end(), v), bag.end());
        return add(std::move(bag), BagKind::Forget, v, {child});
    }

    // Morphs node `id` (bag `from`) into bag `to`: forgets first, then introduces.
    int morph(int id, const std::vector<int>& to) {
        std::vector<int> from = out.bags[static_cast<std::size_t>(id)];
        for (int v : from)
            if (!bag_has(to, v)) id = forget(id, v);
        for (int v : to)
            if (!bag_has(from, v)) id = introduce(id, v);
        return id;
    }
};

}  // namespace

TreeDecomposition make_nice(const SimpleGraph& graph, const TreeDecomposition& td, int root) {
    require_valid_decomposition(graph, td);
    // Drop empty bags, reconnecting their neighbours through one of them.
    int count = td.bag_count();
    auto adj = bag_adjacency(td);
    std::vector<std::set<int>> nb(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) nb[static_cast<std::size_t>(i)].insert(adj[static_cast<std::size_t>(i)].begin(), adj[static_cast<std::size_t>(i)].end());
    std::vector<char> alive(static_cast<std::size_t>(count), 1);
    for (int i = 0; i < count; ++i) {
        if (!td.bags[static_cast<std::size_t>(i)].empty()) continue;
        alive[static_cast<std::size_t>(i)] = 0;
        std::vector<int> around(nb[static_cast<std::size_t>(i)].begin(), nb[static_cast<std::size_t>(i)].end());
        for (int a : around) nb[static_cast<std::size_t>(a)].erase(i);
        for (std::size_t k = 1; k < around.size(); ++k) {
            nb[static_cast<std::size_t>(around[0])].insert(around[k]);
            nb[static_cast<std::size_t>(around[k])].insert(around[0]);
        }
        nb[static_cast<std::size_t>(i)].clear();
    }
    NiceBuilder b;
    b.out.nice = true;
    int start = (root >= 0 && root < count && alive[static_cast<std::size_t>(root)]) ? root : -1;
    for (int i = 0; i < count && start < 0; ++i)
        if (alive[static_cast<std::size_t>(i)]) start = i;
    if (start < 0) return b.out;

    std::function<int(int, int)> build = [&](int bag, int parent) -> int {
        const auto& target = td.bags[static_cast<std::size_t>(bag)];
        std::vector<int> parts;
        for (int c : nb[static_cast<std::size_t>(bag)]) {
            if (c == parent) continue;
            parts.push_back(b.morph(build(c, bag), target));
        }
        if (parts.empty()) {
            int id = b.add({target.front()}, BagKind::Leaf, -1, {});
            return b.morph(id, target);
        }
        int acc = parts.front();
        for (std::size_t k = 1; k < parts.size(); ++k)
            acc = b.add(target, BagKind::Join, -1, {acc, parts[k]});
        return acc;
    };
    b.out.root = build(start, -1);
    return b.out;
}

TreeDecomposition with_forget_chain(const TreeDecomposition& nice_td) {
    NiceBuilder b;
    b.out = nice_td;
    if (b.out.root < 0) return b.out;
    int id = b.out.root;
    while (!b.out.bags[static_cast<std::size_t>(id)].empty())
        id = b.forget(id, b.out.bags[static_cast<std::size_t>(id)].back());
    b.out.root = id;
    return b.out;
}

std::vector<std::vector<int>> subtree_nodes(const TreeDecomposition& nice_td) {
    std::vector<std::vector<int>> out(nice_td.bags.size());
    if (nice_td.root < 0) return out;
    std::function<void(int)> visit = [&](int i) {
        std::set<int> acc(nice_td.bags[static_cast<std::size_t>(i)].begin(), nice_td.bags[static_cast<std::size_t>(i)].end());
        for (int c : nice_td.children[static_cast<std::size_t>(i)]) {
            visit(c);
            acc.insert(out[static_cast<std::size_t>(c)].begin(), out[static_cast<std::size_t>(c)].end());
        }
        out[static_cast<std::size_t>(i)].assign(acc.begin(), acc.end());
    };
    visit(nice_td.root);
    return out;
}

TreeDecomposition decomposition_from_order(const SimpleGraph& graph, const std::vector<int>& order) {
    int n = graph.node_count();
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    if (static_cast<int>(order.size()) != n)
        throw Error(ErrorKind::Decomposition, "elimination order must list every node once");
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] >= 0)
            throw Error(ErrorKind::Decomposition, "elimination order must list every node once");
        pos[static_cast<std::size_t>(v)] = i;
    }
    std::vector<std::set<int>> fill(static_cast<std::size_t>(n));
    for (auto [u, v] : graph.edges()) {
        fill[static_cast<std::size_t>(u)].insert(v);
        fill[static_cast<std::size_t>(v)].insert(u);
    }
    TreeDecomposition td;
    std::vector<int> parent_node(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        std::vector<int> later;
        for (int u : fill[static_cast<std::size_t>(v)])
            if (pos[static_cast<std::size_t>(u)] > i) later.push_back(u);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t c = a + 1; c < later.size(); ++c) {
                fill[static_cast<std::size_t>(later[a])].insert(later[c]);
                fill[static_cast<std::size_t>(later[c])].insert(later[a]);
            }
        int first = -1;
        for (int u : later)
            if (first < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(first)]) first = u;
        parent_node[static_cast<std::size_t>(v)] = first;
        later.push_back(v);
        td.add_bag(std::move(later));  // bag i belongs to order[i]
    }
    for (int i = 0; i + 1 < n; ++i) {
        int p = parent_node[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        td.edges.emplace_back(i, p >= 0 ? pos[static_cast<std::size_t>(p)] : n - 1);
    }
    return td;
}

TreeDecomposition exact_decomposition(const SimpleGraph& graph) {
    int n = graph.node_count();
    if (n > 20) throw Error(ErrorKind::SizeLimit, "exact decomposition is limited to 20 nodes");
    if (n == 0) return {};
    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) nbr[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(graph.neighbor_mask(v));
    std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::uint8_t> best(std::size_t{1} << n, 0);
    std::vector<std::uint8_t> last(std::size_t{1} << n, 0);
    // Nodes outside S + v reachable from v through S: v's neighbours once S is eliminated.
    auto q_size = [&](std::uint32_t s, int v) {
        std::uint32_t seen = std::uint32_t{1} << v;
        std::uint32_t frontier = seen;
        std::uint32_t reach = 0;
        while (frontier) {
            int u = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint32_t next = nbr[static_cast<std::size_t>(u)] & ~seen;
            seen |= next;
            reach |= next;
            frontier |= next & s;
        }
        return std::popcount(reach & ~s);
    };
    for (std::uint32_t s = 1; s <= full; ++s) {
        int value = 255;
        for (std::uint32_t rest = s; rest; rest &= rest - 1) {
            int v = std::countr_zero(rest);
            std::uint32_t prev = s & ~(std::uint32_t{1} << v);
            int cost = std::max<int>(best[prev], q_size(prev, v));
            if (cost < value) {
                value = cost;
                last[s] = static_cast<std::uint8_t>(v);
            }
        }
        best[s] = static_cast<std::uint8_t>(value);
    }
    std::vector<int> order;
    for (std::uint32_t s = full; s; s &= ~(std::uint32_t{1} << last[s])) order.push_back(last[s]);
    std::reverse(order.begin(), order.end());
    return decomposition_from_order(graph, order);
}

int treewidth(const SimpleGraph& graph) { return exact_decomposition(graph).width(); }

KTree random_ktree(int n, int k, std::uint64_t seed, double edge_keep) {
    if (n < 0 || k < 0) throw Error(ErrorKind::InfeasibleConfig, "k-tree needs n >= 0 and k >= 0");
    std::mt19937_64 rng(seed);
    std::vector<int> label(static_cast<std::size_t>(n));
    std::iota(label.begin(), label.end(), 0);
    std::shuffle(label.begin(), label.end(), rng);
    TreeDecomposition td;
    std::set<std::pair<int, int>> edges;
    auto link = [&](int a, int b) { edges.insert(std::minmax(label[static_cast<std::size_t>(a)], label[static_cast<std::size_t>(b)])); };
    int base = std::min(n, k + 1);
    if (n > 0) {
        std::vector<int> first;
        for (int v = 0; v < base; ++v) {
            first.push_back(v);
            for (int u = 0; u < v; ++u) link(u, v);
        }
        td.add_bag(first);
    }
    for (int v = base; v < n; ++v) {
        int host = std::uniform_int_distribution<int>(0, td.bag_count() - 1)(rng);
        std::vector<int> clique = td.bags[static_cast<std::size_t>(host)];
        std::shuffle(clique.begin(), clique.end(), rng);
        clique.resize(static_cast<std::size_t>(k));
        for (int u : clique) link(u, v);
        clique.push_back(v);
        int id = td.add_bag(clique);
        td.edges.emplace_back(host, id);
    }
    for (auto& bag : td.bags) {
        for (int& v : bag) v = label[static_cast<std::size_t>(v)];
        std::sort(bag.begin(), bag.end());
    }
    KTree out{SimpleGraph(n), std::move(td)};
    std::bernoulli_distribution keep(std::clamp(edge_keep, 0.0, 1.0));
    for (auto [u, v] : edges)
        if (edge_keep >= 1.0 || keep(rng)) out.graph.add_edge(u, v);
    return out;
}

std::string to_pace_td(const TreeDecomposition& td, int node_count) {
    std::ostringstream os;
    os << "s td " << td.bag_count() << ' ' << td.width() + 1 << ' ' << node_count << '\n';
    for (int i = 0; i < td.bag_count(); ++i) {
        os << "b " << i + 1;
        for (int v : td.bags[static_cast<std::size_t>(i)]) os << ' ' << v + 1;
        os << '\n';
    }
    for (auto [a, b] : td.edges) os << a + 1 << ' ' << b + 1 << '\n';
    return os.str();
}

TreeDecomposition parse_pace_td(const std::string& text, int* node_count) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_header = false;
    int declared_bags = 0;
    int declared_size = 0;
    int nodes = 0;
    TreeDecomposition td;
    std::vector<char> defined;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::Parse, "decomposition line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream fields(line);
        std::string head;
        if (!(fields >> head) || head == "c") continue;
        if (head == "s") {
            std::string kind;
            if (have_header) fail("second header");
            if (!(fields >> kind >> declared_bags >> declared_size >> nodes) || kind != "td" || declared_bags < 0 ||
                declared_size < 0 || nodes < 0)
                fail("expected 's td <bags> <max bag size> <nodes>'");
            td.bags.assign(static_cast<std::size_t>(declared_bags), {});
            defined.assign(static_cast<std::size_t>(declared_bags), 0);
            have_header = true;
            continue;
        }
        if (!have_header) fail("content before header");
        if (head == "b") {
            int id = 0;
            if (!(fields >> id) || id < 1 || id > declared_bags) fail("bag id out of range");
            if (defined[static_cast<std::size_t>(id - 1)]) fail("bag " + std::to_string(id) + " defined twice");
            defined[static_cast<std::size_t>(id - 1)] = 1;
            std::vector<int> bag;
            int v = 0;
            while (fields >> v) {
                if (v < 1 || v > nodes) fail("node " + std::to_string(v) + " out of range");
                bag.push_back(v - 1);
            }
            if (!fields.eof()) fail("non-numeric bag entry");
            std::sort(bag.begin(), bag.end());
            if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) fail("repeated node in bag");
            td.bags[static_cast<std::size_t>(id - 1)] = std::move(bag);
            continue;
        }
        std::istringstream first(head);
        int a = 0;
        int b = 0;
        std::string extra;
        if (!(first >> a) || !(fields >> b) || (fields >> extra)) fail("expected '<bag> <bag>' edge");
        if (a < 1 || b < 1 || a > declared_bags || b > declared_bags) fail("edge bag id out of range");
        td.edges.emplace_back(a - 1, b - 1);
    }
    if (!have_header) throw Error(ErrorKind::Parse, "decomposition has no 's td' header");
    for (int i = 0; i < declared_bags; ++i)
        if (!defined[static_cast<std::size_t>(i)]) throw Error(ErrorKind::Parse, "bag " + std::to_string(i + 1) + " missing");
    if (td.width() + 1 != declared_size)
        throw Error(ErrorKind::Parse, "header declares max bag size " + std::to_string(declared_size) + ", found " +
                                          std::to_string(td.width() + 1));
    if (node_count) *node_count = nodes;
    return td;
}

std::string to_dot(const TreeDecomposition& td, const std::string& graph_name) {
    std::ostringstream os;
    os << "graph " << graph_name << " {\n";
    for (int i = 0; i < td.bag_count(); ++i)
        os << "  b" << i << " [label=\"" << bag_text(td.bags[static_cast<std::size_t>(i)]) << "\"];\n";
    for (auto [a, b] : td.edges) os << "  b" << a << " -- b" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace rpsp
