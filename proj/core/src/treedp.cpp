#include "rpsp/treedp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "rpsp/error.hpp"

namespace rpsp::treedp {

double ReducedGraph::profit(int v) const {
    return is_penalty(v) ? penalty[static_cast<std::size_t>(v - players)] : reward[static_cast<std::size_t>(v)];
}

ReducedGraph build_reduced_graph(const Instance& instance) {
    require_valid(instance);
    if (instance.mode != ObjectiveMode::HitRewardCoverPenalty)
        throw Error(ErrorKind::Mode, "the tree-decomposition solver needs hit-reward mode");
    ReducedGraph g;
    g.players = instance.n;
    g.reward.assign(static_cast<std::size_t>(instance.n), 0.0);
    for (std::size_t i = 0; i < instance.reward_sets.size(); ++i) {
        const auto& s = instance.reward_sets[i];
        if (s.members.size() != 1)
            throw Error(ErrorKind::Shape, "reward set " + std::to_string(i + 1) + " is not a singleton");
        g.reward[static_cast<std::size_t>(s.members.front() - 1)] += s.weight;
    }
    g.graph = SimpleGraph(instance.n + static_cast<int>(instance.penalty_sets.size()));
    for (std::size_t j = 0; j < instance.penalty_sets.size(); ++j) {
        const auto& s = instance.penalty_sets[j];
        g.penalty.push_back(s.weight);
        int node = instance.n + static_cast<int>(j);
        for (Player p : s.members) g.graph.add_edge(p - 1, node);
    }
    for (int v = 0; v < g.graph.node_count(); ++v) g.graph.set_node_weight(v, g.profit(v));
    return g;
}

double DPTable::value(const TableKey& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? kMinusInfinity : it->second.value;
}

double forget_charge(const ReducedGraph& g, int penalty, int forgotten_count, int selected_in_bag) {
    return forgotten_count + selected_in_bag == g.graph.degree(penalty) ? g.profit(penalty) : 0.0;
}

namespace {

void offer(DPTable& table, TableKey key, double value, const TableKey& left, const TableKey& right = {}) {
    auto [it, fresh] = table.entries.try_emplace(std::move(key));
    if (fresh || value > it->second.value) it->second = TableEntry{value, left, right};
}

std::size_t position_of(const std::vector<int>& bag, int v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw Error(ErrorKind::Structural, "node " + std::to_string(v) + " is not in the bag");
    return static_cast<std::size_t>(it - bag.begin());
}

}  // namespace

DPTable dp_leaf(const ReducedGraph& g, int v) {
    DPTable t;
    t.bag = {v};
    if (g.is_penalty(v)) {
        offer(t, {0}, 0.0, {});
    } else {
        offer(t, {0}, 0.0, {});
        offer(t, {1}, g.profit(v), {});
    }
    return t;
}

DPTable dp_introduce(const ReducedGraph& g, const DPTable& child, int v) {
    if (std::binary_search(child.bag.begin(), child.bag.end(), v))
        throw Error(ErrorKind::Structural, "introduced node " + std::to_string(v) + " is already in the bag");
    DPTable t;
    t.bag = child.bag;
    auto at = std::lower_bound(t.bag.begin(), t.bag.end(), v);
    auto pos = at - t.bag.begin();
    t.bag.insert(at, v);
    for (const auto& [key, entry] : child.entries) {
        TableKey out = key;
        out.insert(out.begin() + pos, 0);
        offer(t, out, entry.value, key);
        if (!g.is_penalty(v)) {
            out[static_cast<std::size_t>(pos)] = 1;
            offer(t, out, entry.value + g.profit(v), key);
        }
    }
    return t;
}

DPTable dp_forget(const ReducedGraph& g, const DPTable& child, int v) {
    std::size_t pos = position_of(child.bag, v);
    DPTable t;
    t.bag = child.bag;
    t.bag.erase(t.bag.begin() + static_cast<std::ptrdiff_t>(pos));
    for (const auto& [key, entry] : child.entries) {
        TableKey out = key;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
        double value = entry.value;
        if (g.is_penalty(v)) {
            int selected = 0;
            for (std::size_t i = 0; i < child.bag.size(); ++i) {
                int u = child.bag[i];
                if (!g.is_penalty(u) && key[i] == 1 && g.graph.has_edge(u, v)) ++selected;
            }
            value -= forget_charge(g, v, key[pos], selected);
        } else if (key[pos] == 1) {
            for (std::size_t i = 0; i < t.bag.size(); ++i)
                if (g.is_penalty(t.bag[i]) && g.graph.has_edge(v, t.bag[i])) ++out[i];
        }
        offer(t, std::move(out), value, key);
    }
    return t;
}

DPTable dp_join(const ReducedGraph& g, const DPTable& left, const DPTable& right) {
    if (left.bag != right.bag) throw Error(ErrorKind::Structural, "join children have different bags");
    DPTable t;
    t.bag = left.bag;
    auto selection_part = [&](const TableKey& key) {
        TableKey s;
        for (std::size_t i = 0; i < t.bag.size(); ++i) s.push_back(g.is_penalty(t.bag[i]) ? 0 : key[i]);
        return s;
    };
    std::map<TableKey, std::vector<const std::pair<const TableKey, TableEntry>*>> by_selection;
    for (const auto& item : right.entries) by_selection[selection_part(item.first)].push_back(&item);
    for (const auto& [lkey, lentry] : left.entries) {
        TableKey s = selection_part(lkey);
        auto it = by_selection.find(s);
        if (it == by_selection.end()) continue;
        double counted_twice = 0.0;
        for (std::size_t i = 0; i < t.bag.size(); ++i)
            if (!g.is_penalty(t.bag[i]) && s[i] == 1) counted_twice += g.profit(t.bag[i]);
        for (const auto* r : it->second) {
            TableKey out = lkey;
            for (std::size_t i = 0; i < t.bag.size(); ++i)
                if (g.is_penalty(t.bag[i])) out[i] += r->first[i];
            offer(t, std::move(out), lentry.value + r->second.value - counted_twice, lkey, r->first);
        }
    }
    return t;
}

std::vector<DPTable> compute_tables(const ReducedGraph& g, const TreeDecomposition& nice_td) {
    auto issues = check_nice(nice_td);
    if (!issues.empty()) throw Error(ErrorKind::Decomposition, "decomposition is not nice: " + issues.front());
    std::vector<DPTable> tables(nice_td.bags.size());
    if (nice_td.root < 0) return tables;
    std::function<void(int)> visit = [&](int i) {
        const auto& ch = nice_td.children[static_cast<std::size_t>(i)];
        for (int c : ch) visit(c);
        int piv = nice_td.pivot[static_cast<std::size_t>(i)];
        auto& out = tables[static_cast<std::size_t>(i)];
        switch (nice_td.kinds[static_cast<std::size_t>(i)]) {
            case BagKind::Leaf: out = dp_leaf(g, nice_td.bags[static_cast<std::size_t>(i)].front()); break;
            case BagKind::Introduce: out = dp_introduce(g, tables[static_cast<std::size_t>(ch[0])], piv); break;
            case BagKind::Forget: out = dp_forget(g, tables[static_cast<std::size_t>(ch[0])], piv); break;
            case BagKind::Join:
                out = dp_join(g, tables[static_cast<std::size_t>(ch[0])], tables[static_cast<std::size_t>(ch[1])]);
                break;
            case BagKind::Plain: throw Error(ErrorKind::Decomposition, "bag without nice kind");
        }
    };
    visit(nice_td.root);
    return tables;
}

TreeDpResult solve_treedp_detailed(const Instance& instance, const TreeDecomposition& decomposition) {
    ReducedGraph g = build_reduced_graph(instance);
    require_valid_decomposition(g.graph, decomposition);
    TreeDpResult out;
    out.nice_decomposition = with_forget_chain(make_nice(g.graph, decomposition));
    const auto& td = out.nice_decomposition;
    if (td.root < 0) {
        out.selection = make_selection(instance, {});
        return out;
    }
    auto tables = compute_tables(g, td);
    for (const auto& t : tables) out.table_entries += t.entries.size();
    const auto& top = tables[static_cast<std::size_t>(td.root)];
    if (top.entries.size() != 1) throw Error(ErrorKind::Solver, "root table must hold exactly the empty key");
    out.table_value = top.entries.begin()->second.value;

    std::vector<Player> chosen;
    std::function<void(int, const TableKey&)> trace = [&](int i, const TableKey& key) {
        const auto& table = tables[static_cast<std::size_t>(i)];
        auto it = table.entries.find(key);
        if (it == table.entries.end()) throw Error(ErrorKind::Solver, "broken back-pointer");
        for (std::size_t k = 0; k < table.bag.size(); ++k)
            if (!g.is_penalty(table.bag[k]) && key[k] == 1) chosen.push_back(table.bag[k] + 1);
        const auto& ch = td.children[static_cast<std::size_t>(i)];
        if (!ch.empty()) trace(ch[0], it->second.left);
        if (ch.size() == 2) trace(ch[1], it->second.right);
    };
    trace(td.root, {});
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    out.selection = make_selection(instance, std::move(chosen));
    if (std::abs(out.selection.value - out.table_value) > 1e-6)
        throw Error(ErrorKind::Solver, "reconstructed selection value " + std::to_string(out.selection.value) +
                                           " differs from table optimum " + std::to_string(out.table_value));
    return out;
}

Selection solve_treedp(const Instance& instance, const TreeDecomposition& decomposition) {
    return solve_treedp_detailed(instance, decomposition).selection;
}

TreeDpCase generate_treedp_case(const TreeDpConfig& config) {
    KTree base = random_ktree(config.nodes, config.k, config.seed);
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::bernoulli_distribution is_penalty(config.penalty_fraction);
    std::bernoulli_distribution has_reward(0.85);
    std::uniform_int_distribution<int> weight(1, 100);
    int nodes = base.graph.node_count();
    std::vector<char> penalty(static_cast<std::size_t>(nodes));
    for (auto& p : penalty) p = is_penalty(rng) ? 1 : 0;

    // Players first, then penalties with at least one player neighbour.
    std::vector<int> id(static_cast<std::size_t>(nodes), -1);
    int players = 0;
    for (int v = 0; v < nodes; ++v)
        if (!penalty[static_cast<std::size_t>(v)]) id[static_cast<std::size_t>(v)] = players++;
    TreeDpCase out;
    out.instance.n = players;
    out.instance.mode = ObjectiveMode::HitRewardCoverPenalty;
    int next = players;
    for (int v = 0; v < nodes; ++v) {
        if (!penalty[static_cast<std::size_t>(v)]) continue;
        std::vector<Player> members;
        for (int u : base.graph.neighbors(v))
            if (!penalty[static_cast<std::size_t>(u)]) members.push_back(id[static_cast<std::size_t>(u)] + 1);
        if (members.empty()) continue;
        id[static_cast<std::size_t>(v)] = next++;
        out.instance.penalty_sets.push_back(make_set(std::move(members), weight(rng)));
    }
    for (Player p = 1; p <= players; ++p)
        if (has_reward(rng)) out.instance.reward_sets.push_back(make_set({p}, weight(rng)));
    for (const auto& bag : base.decomposition.bags) {
        std::vector<int> mapped;
        for (int v : bag)
            if (id[static_cast<std::size_t>(v)] >= 0) mapped.push_back(id[static_cast<std::size_t>(v)]);
        out.decomposition.add_bag(std::move(mapped));
    }
    out.decomposition.edges = base.decomposition.edges;
    return out;
}

}  // namespace rpsp::treedp
