#include "rpsp/laminar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "rpsp/error.hpp"

namespace rpsp::laminar {

namespace {

bool is_subset(const std::vector<Player>& a, const std::vector<Player>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const std::vector<Player>& a, const std::vector<Player>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i; else ++j;
    }
    return false;
}

std::string set_text(const std::vector<Player>& members) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < members.size(); ++i) os << (i ? "," : "") << members[i];
    os << '}';
    return os.str();
}

LaminarNode& node(LaminarTree& t, int v) { return t.nodes[static_cast<std::size_t>(v)]; }
const LaminarNode& node(const LaminarTree& t, int v) { return t.nodes[static_cast<std::size_t>(v)]; }

bool all_selectable(const LaminarTree& t, const std::vector<Player>& members) {
    for (Player p : members)
        if (!t.selectable[static_cast<std::size_t>(p)]) return false;
    return true;
}

std::vector<Player> selectable_members(const LaminarTree& t, const std::vector<Player>& members) {
    std::vector<Player> out;
    for (Player p : members)
        if (t.selectable[static_cast<std::size_t>(p)]) out.push_back(p);
    return out;
}

void retire_all_but(LaminarTree& t, const std::vector<Player>& members, Player keep) {
    for (Player p : members)
        if (p != keep) t.selectable[static_cast<std::size_t>(p)] = 0;
}

void replace_child(LaminarTree& t, int parent, int old_child, int new_child) {
    if (parent < 0) {
        t.root = new_child;
        return;
    }
    for (int& c : node(t, parent).children)
        if (c == old_child) c = new_child;
}

// Unlinks v, handing its children to its parent. A removed root must have at
// most one child. Marks v dead by clearing its links; compact() drops it.
void splice_out(LaminarTree& t, int v, std::vector<char>& dead) {
    LaminarNode& x = node(t, v);
    int parent = x.parent;
    if (parent < 0) {
        if (x.children.size() > 1)
            throw Error(ErrorKind::Structural, "cannot remove a root with several children");
        t.root = x.children.empty() ? -1 : x.children.front();
        if (t.root >= 0) node(t, t.root).parent = -1;
    } else {
        auto& siblings = node(t, parent).children;
        auto it = std::find(siblings.begin(), siblings.end(), v);
        it = siblings.erase(it);
        siblings.insert(it, x.children.begin(), x.children.end());
        for (int c : x.children) node(t, c).parent = parent;
    }
    x.children.clear();
    x.parent = -1;
    dead[static_cast<std::size_t>(v)] = 1;
}

LaminarTree compact(const LaminarTree& t, const std::vector<char>& dead) {
    std::vector<int> remap(t.nodes.size(), -1);
    LaminarTree out;
    out.n = t.n;
    out.selectable = t.selectable;
    for (std::size_t v = 0; v < t.nodes.size(); ++v) {
        if (v < dead.size() && dead[v]) continue;
        remap[v] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(t.nodes[v]);
    }
    for (auto& x : out.nodes) {
        if (x.parent >= 0) x.parent = remap[static_cast<std::size_t>(x.parent)];
        for (int& c : x.children) c = remap[static_cast<std::size_t>(c)];
    }
    out.root = t.root >= 0 ? remap[static_cast<std::size_t>(t.root)] : -1;
    return out;
}

void require_node(const LaminarTree& t, int v) {
    if (v < 0 || v >= static_cast<int>(t.nodes.size()))
        throw Error(ErrorKind::Structural, "tree node " + std::to_string(v) + " does not exist");
}

int add_child(LaminarTree& t, int parent, LaminarNode x) {
    x.parent = parent;
    x.children.clear();
    int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back(std::move(x));
    if (parent >= 0) node(t, parent).children.push_back(id);
    else t.root = id;
    return id;
}

}  // namespace

std::vector<int> LaminarTree::leaves() const {
    std::vector<int> out;
    if (root < 0) return out;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const auto& x = nodes[static_cast<std::size_t>(v)];
        if (x.children.empty()) out.push_back(v);
        for (auto it = x.children.rbegin(); it != x.children.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

bool is_laminar(const std::vector<std::vector<Player>>& sets) {
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const auto& a = sets[i];
            const auto& b = sets[j];
            if (intersects(a, b) && !is_subset(a, b) && !is_subset(b, a)) return false;
        }
    return true;
}

bool is_laminar(const Instance& instance) {
    std::vector<std::vector<Player>> sets;
    for (const auto& s : instance.reward_sets) sets.push_back(s.members);
    for (const auto& s : instance.penalty_sets) sets.push_back(s.members);
    return is_laminar(sets);
}

ContainmentDag build_containment_dag(const Instance& instance) {
    require_valid(instance);
    if (!is_laminar(instance))
        throw Error(ErrorKind::Laminarity, "reward and penalty sets do not form a laminar family");
    ContainmentDag dag;
    dag.n = instance.n;
    for (std::size_t i = 0; i < instance.reward_sets.size(); ++i) {
        LaminarNode x;
        x.members = instance.reward_sets[i].members;
        x.kind = SetKind::Reward;
        x.weight = instance.reward_sets[i].weight;
        x.origin = static_cast<int>(i);
        x.label = "A" + std::to_string(i + 1);
        dag.nodes.push_back(std::move(x));
    }
    for (std::size_t j = 0; j < instance.penalty_sets.size(); ++j) {
        LaminarNode x;
        x.members = instance.penalty_sets[j].members;
        x.kind = SetKind::Penalty;
        x.weight = instance.penalty_sets[j].weight;
        x.origin = static_cast<int>(j);
        x.label = "B" + std::to_string(j + 1);
        dag.nodes.push_back(std::move(x));
    }
    int count = static_cast<int>(dag.nodes.size());
    dag.graph.node_count = count;
    for (int u = 0; u < count; ++u)
        for (int v = 0; v < count; ++v) {
            if (u == v) continue;
            const auto& su = dag.nodes[static_cast<std::size_t>(u)];
            const auto& sv = dag.nodes[static_cast<std::size_t>(v)];
            if (!is_subset(sv.members, su.members)) continue;
            bool proper = sv.members.size() < su.members.size();
            if (proper || (su.kind == SetKind::Penalty && sv.kind == SetKind::Reward))
                dag.graph.arcs.emplace_back(u, v);
        }
    return dag;
}

namespace {

std::vector<int> topological_order(const Digraph& g) {
    std::vector<int> indegree(static_cast<std::size_t>(g.node_count), 0);
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(g.node_count));
    for (auto [u, v] : g.arcs) {
        if (u < 0 || v < 0 || u >= g.node_count || v >= g.node_count)
            throw Error(ErrorKind::Structural, "arc endpoint out of range");
        succ[static_cast<std::size_t>(u)].push_back(v);
        ++indegree[static_cast<std::size_t>(v)];
    }
    std::vector<int> order;
    std::vector<int> ready;
    for (int v = g.node_count - 1; v >= 0; --v)
        if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
    while (!ready.empty()) {
        int u = ready.back();
        ready.pop_back();
        order.push_back(u);
        for (int v : succ[static_cast<std::size_t>(u)])
            if (--indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
    }
    if (static_cast<int>(order.size()) != g.node_count)
        throw Error(ErrorKind::Structural, "graph has a directed cycle");
    return order;
}

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, int i) { return (b[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1U; }
void set_bit(Bits& b, int i) { b[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64); }

// reach[u] holds every node reachable from u by a path of length >= 1.
std::vector<Bits> reachability(const Digraph& g, const std::vector<std::vector<int>>& succ) {
    std::vector<int> order = topological_order(g);
    std::size_t words = (static_cast<std::size_t>(g.node_count) + 63) / 64;
    std::vector<Bits> reach(static_cast<std::size_t>(g.node_count), Bits(words, 0));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Bits& r = reach[static_cast<std::size_t>(*it)];
        for (int v : succ[static_cast<std::size_t>(*it)]) {
            set_bit(r, v);
            const Bits& rv = reach[static_cast<std::size_t>(v)];
            for (std::size_t w = 0; w < words; ++w) r[w] |= rv[w];
        }
    }
    return reach;
}

std::vector<std::vector<int>> successors(const Digraph& g) {
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(g.node_count));
    for (auto [u, v] : g.arcs) {
        if (u < 0 || v < 0 || u >= g.node_count || v >= g.node_count)
            throw Error(ErrorKind::Structural, "arc endpoint out of range");
        succ[static_cast<std::size_t>(u)].push_back(v);
    }
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return succ;
}

}  // namespace

Digraph transitive_reduction(const Digraph& dag) {
    auto succ = successors(dag);
    auto reach = reachability(dag, succ);
    Digraph out;
    out.node_count = dag.node_count;
    for (int u = 0; u < dag.node_count; ++u) {
        const auto& s = succ[static_cast<std::size_t>(u)];
        for (int v : s) {
            bool redundant = false;
            for (int w : s)
                if (w != v && test_bit(reach[static_cast<std::size_t>(w)], v)) {
                    redundant = true;
                    break;
                }
            if (!redundant) out.arcs.emplace_back(u, v);
        }
    }
    return out;
}

std::vector<std::vector<char>> transitive_closure(const Digraph& graph) {
    auto succ = successors(graph);
    auto reach = reachability(graph, succ);
    std::vector<std::vector<char>> out(static_cast<std::size_t>(graph.node_count),
                                       std::vector<char>(static_cast<std::size_t>(graph.node_count), 0));
    for (int u = 0; u < graph.node_count; ++u)
        for (int v = 0; v < graph.node_count; ++v)
            out[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                test_bit(reach[static_cast<std::size_t>(u)], v) ? 1 : 0;
    return out;
}

LaminarTree irreducible_core(const ContainmentDag& dag) {
    int count = static_cast<int>(dag.nodes.size());
    std::map<std::pair<int, std::vector<Player>>, int> seen;
    for (int v = 0; v < count; ++v) {
        const auto& x = dag.nodes[static_cast<std::size_t>(v)];
        auto key = std::make_pair(x.kind == SetKind::Reward ? 0 : 1, x.members);
        auto [it, fresh] = seen.emplace(key, v);
        if (!fresh)
            throw Error(ErrorKind::DuplicateSet, x.label + " repeats " +
                                                     dag.nodes[static_cast<std::size_t>(it->second)].label);
    }
    Digraph reduced = transitive_reduction(dag.graph);

    LaminarTree tree;
    tree.n = dag.n;
    tree.selectable.assign(static_cast<std::size_t>(dag.n) + 1, 1);
    tree.selectable[0] = 0;
    tree.nodes = dag.nodes;
    for (auto& x : tree.nodes) {
        x.parent = -1;
        x.children.clear();
    }
    for (auto [u, v] : reduced.arcs) {
        auto& child = tree.nodes[static_cast<std::size_t>(v)];
        if (child.parent >= 0)
            throw Error(ErrorKind::Laminarity, child.label + " has two maximal supersets");
        child.parent = u;
        tree.nodes[static_cast<std::size_t>(u)].children.push_back(v);
    }
    std::vector<int> roots;
    for (int v = 0; v < count; ++v)
        if (tree.nodes[static_cast<std::size_t>(v)].parent < 0) roots.push_back(v);
    if (roots.size() == 1) {
        tree.root = roots.front();
    } else if (!roots.empty() || dag.n > 0) {
        LaminarNode top;
        top.members.resize(static_cast<std::size_t>(dag.n));
        std::iota(top.members.begin(), top.members.end(), 1);
        top.kind = SetKind::Reward;
        top.weight = 0.0;
        top.label = "root";
        top.children = roots;
        tree.root = static_cast<int>(tree.nodes.size());
        for (int r : roots) tree.nodes[static_cast<std::size_t>(r)].parent = tree.root;
        tree.nodes.push_back(std::move(top));
    }
    return tree;
}

LaminarTree tree_from_instance(const Instance& instance) {
    return irreducible_core(build_containment_dag(instance));
}

std::vector<std::string> check_tree(const LaminarTree& tree) {
    std::vector<std::string> issues;
    int count = static_cast<int>(tree.nodes.size());
    if (tree.selectable.size() != static_cast<std::size_t>(tree.n) + 1)
        issues.push_back("selectable flags have the wrong size");
    if (tree.root < 0) {
        if (count != 0) issues.push_back("nodes present without a root");
        return issues;
    }
    if (tree.root >= count) {
        issues.push_back("root out of range");
        return issues;
    }
    if (node(tree, tree.root).parent != -1) issues.push_back("root has a parent");
    std::vector<int> visits(static_cast<std::size_t>(count), 0);
    std::vector<int> stack{tree.root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (++visits[static_cast<std::size_t>(v)] > 1) {
            issues.push_back("node " + std::to_string(v) + " reached twice");
            continue;
        }
        const auto& x = node(tree, v);
        for (Player p : x.members)
            if (p < 1 || p > tree.n) issues.push_back(x.label + " has member out of range");
        for (std::size_t i = 0; i < x.children.size(); ++i) {
            int c = x.children[i];
            if (c < 0 || c >= count) {
                issues.push_back(x.label + " has an invalid child");
                continue;
            }
            const auto& y = node(tree, c);
            if (y.parent != v) issues.push_back(y.label + " parent link mismatch");
            if (!is_subset(y.members, x.members))
                issues.push_back(y.label + " is not contained in " + x.label);
            else if (y.members == x.members && !(x.kind == SetKind::Penalty && y.kind == SetKind::Reward) &&
                     !(x.kind == SetKind::Reward && y.kind == SetKind::Penalty))
                issues.push_back(y.label + " equals its parent " + x.label);
            for (std::size_t j = i + 1; j < x.children.size(); ++j) {
                int d = x.children[j];
                if (d >= 0 && d < count && intersects(y.members, node(tree, d).members))
                    issues.push_back(y.label + " and " + node(tree, d).label + " overlap");
            }
            stack.push_back(c);
        }
    }
    for (int v = 0; v < count; ++v)
        if (visits[static_cast<std::size_t>(v)] == 0) issues.push_back("node " + std::to_string(v) + " unreachable");
    return issues;
}

bool is_nice(const LaminarTree& tree) {
    for (int v : tree.leaves()) {
        const auto& x = node(tree, v);
        if (x.kind != SetKind::Reward || x.members.size() != 1) return false;
    }
    return true;
}

LaminarTree contract_reward_leaf(const LaminarTree& tree, int leaf) {
    require_node(tree, leaf);
    const auto& a = node(tree, leaf);
    if (!a.children.empty() || a.kind != SetKind::Reward || a.members.size() < 2)
        throw Error(ErrorKind::Structural, a.label + " is not a multi-element reward leaf");
    LaminarTree t = tree;
    std::vector<char> dead(t.nodes.size(), 0);
    auto sel = selectable_members(t, a.members);
    if (sel.empty()) {
        splice_out(t, leaf, dead);
        return compact(t, dead);
    }
    Player x = sel.front();
    std::vector<int> path{leaf};
    int cur = leaf;
    while (true) {
        int p = node(t, cur).parent;
        if (p < 0 || p == t.root || node(t, p).children.size() != 1) break;
        cur = p;
        path.push_back(cur);
    }
    int top = path.back();
    double weight = 0.0;
    for (int v : path)
        if (node(t, v).kind == SetKind::Reward) weight += node(t, v).weight;
    retire_all_but(t, node(t, top).members, x);

    LaminarNode merged;
    merged.members = {x};
    merged.kind = SetKind::Reward;
    merged.weight = weight;
    merged.label = a.label + "'";
    int above = node(t, top).parent;
    merged.parent = above;
    int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back(std::move(merged));
    dead.push_back(0);
    replace_child(t, above, top, id);
    for (int v : path) {
        node(t, v).children.clear();
        node(t, v).parent = -1;
        dead[static_cast<std::size_t>(v)] = 1;
    }
    return compact(t, dead);
}

LaminarTree reduce_penalty_pair(const LaminarTree& tree, int leaf) {
    require_node(tree, leaf);
    const auto& b1 = node(tree, leaf);
    if (!b1.children.empty() || b1.kind != SetKind::Penalty || b1.parent < 0 ||
        node(tree, b1.parent).kind != SetKind::Penalty)
        throw Error(ErrorKind::Structural, b1.label + " is not a penalty leaf under a penalty set");
    LaminarTree t = tree;
    std::vector<char> dead(t.nodes.size(), 0);
    int parent = b1.parent;
    if (b1.members == node(t, parent).members) {
        node(t, parent).weight += b1.weight;
        splice_out(t, leaf, dead);
        return compact(t, dead);
    }
    if (all_selectable(t, b1.members)) {
        if (b1.members.size() < 2)
            throw Error(ErrorKind::Structural, b1.label + " is a selectable singleton");
        retire_all_but(t, b1.members, b1.members.front());
    }
    splice_out(t, leaf, dead);
    return compact(t, dead);
}

LaminarTree resolve_penalty_leaf(const LaminarTree& tree, int leaf) {
    require_node(tree, leaf);
    const auto& b = node(tree, leaf);
    if (!b.children.empty() || b.kind != SetKind::Penalty)
        throw Error(ErrorKind::Structural, b.label + " is not a penalty leaf");
    LaminarTree t = tree;
    std::vector<char> dead(t.nodes.size(), 0);
    if (!all_selectable(t, b.members) || b.members.size() >= 2) {
        if (all_selectable(t, b.members)) retire_all_but(t, b.members, b.members.front());
        splice_out(t, leaf, dead);
        return compact(t, dead);
    }
    Player x = b.members.front();
    int parent = b.parent;
    if (parent >= 0 && node(t, parent).kind == SetKind::Reward && node(t, parent).members == b.members) {
        // Swap positions: the penalty moves up, the reward becomes its leaf.
        int grand = node(t, parent).parent;
        if (grand >= 0 && node(t, grand).kind == SetKind::Penalty && node(t, grand).members == b.members) {
            node(t, grand).weight += b.weight;
            splice_out(t, leaf, dead);
            return compact(t, dead);
        }
        replace_child(t, grand, parent, leaf);
        node(t, leaf).parent = grand;
        node(t, leaf).children = {parent};
        node(t, parent).parent = leaf;
        node(t, parent).children.clear();
        return t;
    }
    LaminarNode filler;
    filler.members = {x};
    filler.kind = SetKind::Reward;
    filler.weight = 0.0;
    filler.label = "e" + std::to_string(x);
    add_child(t, leaf, std::move(filler));
    return t;
}

LaminarTree attach_player_leaves(const LaminarTree& tree) {
    LaminarTree t = tree;
    if (t.empty()) return t;
    std::vector<char> present(static_cast<std::size_t>(t.n) + 1, 0);
    for (const auto& x : t.nodes)
        for (Player p : x.members) present[static_cast<std::size_t>(p)] = 1;
    for (Player e = 1; e <= t.n; ++e) {
        if (!present[static_cast<std::size_t>(e)] || !t.selectable[static_cast<std::size_t>(e)]) continue;
        const std::vector<Player> single{e};
        int deepest = t.root;
        if (!std::binary_search(node(t, deepest).members.begin(), node(t, deepest).members.end(), e)) continue;
        while (true) {
            int next = -1;
            for (int c : node(t, deepest).children)
                if (std::binary_search(node(t, c).members.begin(), node(t, c).members.end(), e)) {
                    next = c;
                    break;
                }
            if (next < 0) break;
            deepest = next;
        }
        const auto& d = node(t, deepest);
        if (d.kind == SetKind::Reward && d.members == single && d.children.empty()) continue;
        LaminarNode filler;
        filler.members = single;
        filler.kind = SetKind::Reward;
        filler.weight = 0.0;
        filler.label = "e" + std::to_string(e);
        add_child(t, deepest, std::move(filler));
    }
    // Leaves with no selectable player can never be hit or covered.
    std::vector<char> dead(t.nodes.size(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : t.leaves())
            if (selectable_members(t, node(t, v).members).empty()) {
                splice_out(t, v, dead);
                changed = true;
                break;
            }
    }
    return compact(t, dead);
}

LaminarTree to_nice_tree(const LaminarTree& tree) {
    LaminarTree t = tree;
    while (true) {
        int target = -1;
        for (int v : t.leaves()) {
            const auto& x = node(t, v);
            if (x.kind == SetKind::Penalty || x.members.size() >= 2) {
                target = v;
                break;
            }
        }
        if (target < 0) break;
        const auto& x = node(t, target);
        if (x.kind == SetKind::Reward) {
            t = contract_reward_leaf(t, target);
        } else if (x.parent >= 0 && node(t, x.parent).kind == SetKind::Penalty &&
                   (x.members == node(t, x.parent).members || x.members.size() >= 2 ||
                    !all_selectable(t, x.members))) {
            t = reduce_penalty_pair(t, target);
        } else {
            t = resolve_penalty_leaf(t, target);
        }
    }
    return attach_player_leaves(t);
}

double evaluate_tree(const LaminarTree& tree, const std::vector<Player>& members) {
    std::vector<char> in(static_cast<std::size_t>(tree.n) + 1, 0);
    for (Player p : members) {
        if (p < 1 || p > tree.n) throw Error(ErrorKind::InvalidSelection, "player out of range");
        in[static_cast<std::size_t>(p)] = 1;
    }
    double value = 0.0;
    for (const auto& x : tree.nodes) {
        std::size_t hits = 0;
        for (Player p : x.members) hits += in[static_cast<std::size_t>(p)];
        if (x.kind == SetKind::Reward && hits > 0) value += x.weight;
        if (x.kind == SetKind::Penalty && hits == x.members.size() && !x.members.empty()) value -= x.weight;
    }
    return value;
}

Selection brute_force_tree(const LaminarTree& tree, int cap) {
    std::vector<char> present(static_cast<std::size_t>(tree.n) + 1, 0);
    for (const auto& x : tree.nodes)
        for (Player p : x.members) present[static_cast<std::size_t>(p)] = 1;
    std::vector<Player> pool;
    for (Player p = 1; p <= tree.n; ++p)
        if (present[static_cast<std::size_t>(p)] && tree.selectable[static_cast<std::size_t>(p)]) pool.push_back(p);
    if (static_cast<int>(pool.size()) > cap)
        throw Error(ErrorKind::SizeLimit, "tree has " + std::to_string(pool.size()) +
                                              " selectable players, above the brute-force cap");
    Selection best;
    best.value = evaluate_tree(tree, {});
    std::uint64_t limit = std::uint64_t{1} << pool.size();
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
        std::vector<Player> members;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if ((mask >> i) & 1U) members.push_back(pool[i]);
        double v = evaluate_tree(tree, members);
        if (v > best.value + kValueTolerance ||
            (v > best.value - kValueTolerance && members < best.members)) {
            best.value = v;
            best.members = std::move(members);
        }
    }
    return best;
}

CirculationModel build_circulation(const LaminarTree& nice_tree) {
    if (!is_nice(nice_tree)) throw Error(ErrorKind::Structural, "circulation needs a nice tree");
    CirculationModel model;
    auto& net = model.network;
    net.source = net.add_node("s");
    net.sink = net.add_node("t");
    model.tree_node_of = {-1, -1};
    auto leaves = nice_tree.leaves();
    net.big = static_cast<std::int64_t>(leaves.size()) + 1;
    std::vector<int> id(nice_tree.nodes.size(), -1);
    for (std::size_t v = 0; v < nice_tree.nodes.size(); ++v) {
        id[v] = net.add_node(nice_tree.nodes[v].label + " " + set_text(nice_tree.nodes[v].members));
        model.tree_node_of.push_back(static_cast<int>(v));
    }
    for (int leaf : leaves) {
        model.leaf_arcs.push_back(net.add_arc(net.source, id[static_cast<std::size_t>(leaf)], 1, 0.0));
        model.leaf_players.push_back(node(nice_tree, leaf).members.front());
    }
    for (std::size_t v = 0; v < nice_tree.nodes.size(); ++v) {
        const auto& x = nice_tree.nodes[v];
        int to = x.parent >= 0 ? id[static_cast<std::size_t>(x.parent)] : net.sink;
        if (x.kind == SetKind::Reward) {
            net.add_arc(id[v], to, 1, x.weight);
            net.add_big_arc(id[v], to, 0.0);
        } else {
            net.add_arc(id[v], to, static_cast<std::int64_t>(x.members.size()) - 1, 0.0);
            net.add_arc(id[v], to, 1, -x.weight);
        }
    }
    net.add_big_arc(net.sink, net.source, 0.0);
    return model;
}

LaminarSolution solve_laminar_detailed(const Instance& instance) {
    if (instance.mode != ObjectiveMode::HitRewardCoverPenalty)
        throw Error(ErrorKind::Mode, "the laminar solver needs hit-reward mode");
    LaminarSolution out;
    out.tree = tree_from_instance(instance);
    out.nice_tree = to_nice_tree(out.tree);
    out.model = build_circulation(out.nice_tree);
    out.circulation = max_profit_circulation(out.model.network);
    out.circulation_profit = out.circulation.profit;
    std::vector<Player> chosen;
    for (std::size_t i = 0; i < out.model.leaf_arcs.size(); ++i)
        if (out.circulation.flow[static_cast<std::size_t>(out.model.leaf_arcs[i])] > 0)
            chosen.push_back(out.model.leaf_players[i]);
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    out.selection = make_selection(instance, std::move(chosen));
    if (std::abs(out.selection.value - out.circulation_profit) > 1e-6)
        throw Error(ErrorKind::Solver, "circulation profit " + std::to_string(out.circulation_profit) +
                                           " differs from selection value " + std::to_string(out.selection.value));
    return out;
}

Selection solve_laminar(const Instance& instance) { return solve_laminar_detailed(instance).selection; }

std::string to_dot(const LaminarTree& tree, const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << graph_name << " {\n";
    for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
        const auto& x = tree.nodes[v];
        os << "  n" << v << " [label=\"" << x.label << ' ' << set_text(x.members)
           << (x.kind == SetKind::Reward ? " a=" : " b=") << x.weight << "\""
           << (x.kind == SetKind::Penalty ? ", shape=box" : "") << "];\n";
    }
    for (std::size_t v = 0; v < tree.nodes.size(); ++v)
        for (int c : tree.nodes[v].children) os << "  n" << v << " -> n" << c << ";\n";
    os << "}\n";
    return os.str();
}

namespace {

void partition_blocks(std::vector<Player> block, const LaminarConfig& config, std::mt19937_64& rng,
                      Instance& out) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> weight(1, 100);
    std::sort(block.begin(), block.end());
    if (coin(rng) < config.set_probability) {
        bool both = coin(rng) < config.both_kinds_probability;
        bool penalty = coin(rng) < config.penalty_probability;
        if (both || !penalty) out.reward_sets.push_back(make_set(block, weight(rng)));
        if (both || penalty) out.penalty_sets.push_back(make_set(block, weight(rng)));
    }
    if (block.size() < 2) return;
    std::shuffle(block.begin(), block.end(), rng);
    int max_parts = std::min<int>(3, static_cast<int>(block.size()));
    int parts = std::uniform_int_distribution<int>(2, max_parts)(rng);
    std::vector<std::size_t> cuts;
    for (std::size_t i = 1; i < block.size(); ++i) cuts.push_back(i);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(static_cast<std::size_t>(parts - 1));
    std::sort(cuts.begin(), cuts.end());
    std::size_t start = 0;
    cuts.push_back(block.size());
    for (std::size_t cut : cuts) {
        std::vector<Player> part(block.begin() + static_cast<std::ptrdiff_t>(start),
                                 block.begin() + static_cast<std::ptrdiff_t>(cut));
        partition_blocks(std::move(part), config, rng, out);
        start = cut;
    }
}

}  // namespace

Instance generate_laminar(const LaminarConfig& config) {
    if (config.n < 0) throw Error(ErrorKind::InfeasibleConfig, "n must be non-negative");
    Instance out;
    out.n = config.n;
    out.mode = ObjectiveMode::HitRewardCoverPenalty;
    if (config.n == 0) return out;
    std::mt19937_64 rng(config.seed);
    std::vector<Player> all(static_cast<std::size_t>(config.n));
    std::iota(all.begin(), all.end(), 1);
    partition_blocks(std::move(all), config, rng, out);
    return out;
}

}  // namespace rpsp::laminar
