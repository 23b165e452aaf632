#include <algorithm>
#include <set>

#include "doctest.h"
#include "laminar_cases.hpp"
#include "rpsp/brute_force.hpp"
#include "rpsp/error.hpp"
#include "rpsp/laminar.hpp"
#include "test_support.hpp"

using namespace rpsp;
using namespace rpsp::laminar;
using rpsp::test::make_instance;

namespace {

std::set<std::pair<int, int>> arc_set(const Digraph& g) { return {g.arcs.begin(), g.arcs.end()}; }

int find_label(const LaminarTree& t, const std::string& label) {
    for (int v = 0; v < static_cast<int>(t.nodes.size()); ++v)
        if (t.nodes[static_cast<std::size_t>(v)].label == label) return v;
    return -1;
}

}  // namespace

TEST_CASE("is_laminar") {
    CHECK(is_laminar(std::vector<std::vector<Player>>{{1, 2}, {1, 2, 3}, {4}}));
    CHECK_FALSE(is_laminar(std::vector<std::vector<Player>>{{1, 2}, {2, 3}}));
    // Nine players: {1,2} inside {1,2,3} inside {1..5}; {6,7} inside {6..9}.
    CHECK(is_laminar(std::vector<std::vector<Player>>{{1, 2}, {1, 2, 3}, {1, 2, 3, 4, 5}, {6, 7}, {6, 7, 8, 9}}));
}

TEST_CASE("transitive reduction of a six-node containment DAG") {
    // 0 = A1, 1 = B1, 2 = B2', 3 = A3, 4 = A2, 5 = A4
    Digraph g{6, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {2, 5}, {0, 4}, {0, 3}, {0, 5}}};
    auto r = transitive_reduction(g);
    CHECK(arc_set(r) == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 4}, {2, 5}});
    CHECK(transitive_closure(r) == transitive_closure(g));

    Digraph chain{3, {{0, 1}, {1, 2}, {0, 2}}};
    CHECK(arc_set(transitive_reduction(chain)) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}});

    Digraph cyclic{2, {{0, 1}, {1, 0}}};
    CHECK_THROWS_AS(transitive_reduction(cyclic), Error);
}

TEST_CASE("disjoint sets hang under a virtual root") {
    auto inst = make_instance(4, {{{1}, 1}, {{2, 3}, 2}}, {{{4}, 3}});
    auto t = tree_from_instance(inst);
    REQUIRE_FALSE(t.empty());
    const auto& root = t.nodes[static_cast<std::size_t>(t.root)];
    CHECK(root.label == "root");
    CHECK(root.weight == 0);
    CHECK(root.members == std::vector<Player>{1, 2, 3, 4});
    CHECK(root.children.size() == 3);
    CHECK(check_tree(t).empty());
}

TEST_CASE("duplicate sets and crossing sets are rejected") {
    auto dup = make_instance(2, {{{1, 2}, 1}, {{1, 2}, 2}}, {});
    try {
        tree_from_instance(dup);
        FAIL("expected a duplicate-set error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DuplicateSet);
    }
    auto crossing = make_instance(3, {{{1, 2}, 1}}, {{{2, 3}, 1}});
    try {
        solve_laminar(crossing);
        FAIL("expected a laminarity error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Laminarity);
    }
    auto same = make_instance(2, {{{1, 2}, 1}}, {{{1, 2}, 1}});
    auto t = tree_from_instance(same);
    CHECK(t.nodes[static_cast<std::size_t>(t.root)].kind == SetKind::Penalty);
}

TEST_CASE("solve_laminar examples") {
    auto a = make_instance(2, {{{1}, 2}, {{2}, 3}}, {{{1, 2}, 4}});
    auto s = solve_laminar(a);
    CHECK(s.value == 3);
    CHECK(s.members == std::vector<Player>{2});

    auto b = make_instance(2, {{{1}, 2}, {{2}, 3}}, {{{1, 2}, 1}});
    s = solve_laminar(b);
    CHECK(s.value == 4);
    CHECK(s.members == std::vector<Player>{1, 2});

    auto c = make_instance(5, {{{1, 2}, 2}, {{3}, 4}, {{1, 2, 3, 4, 5}, 1}}, {});
    CHECK(solve_laminar(c).value == 7);

    auto cover = a;
    cover.mode = ObjectiveMode::CoverRewardHitPenalty;
    CHECK_THROWS_AS(solve_laminar(cover), Error);
}

TEST_CASE("inner-only players stay reachable") {
    auto inst = make_instance(2, {{{1, 2}, 10}, {{1}, 1}}, {{{1}, 100}});
    auto s = solve_laminar(inst);
    CHECK(s.value == 10);
    CHECK(s.members == std::vector<Player>{2});
}

TEST_CASE("contracting a reward leaf") {
    auto inst = make_instance(3, {{{1, 2}, 4}, {{3}, 1}}, {});
    auto t = tree_from_instance(inst);
    int leaf = find_label(t, "A1");
    auto out = contract_reward_leaf(t, leaf);
    int merged = find_label(out, "A1'");
    REQUIRE(merged >= 0);
    CHECK(out.nodes[static_cast<std::size_t>(merged)].members == std::vector<Player>{1});
    CHECK(out.nodes[static_cast<std::size_t>(merged)].weight == 4);
    CHECK(out.nodes[static_cast<std::size_t>(merged)].parent == out.root);
    CHECK_FALSE(out.selectable[2]);
    CHECK(brute_force_tree(out).value == brute_force_tree(t).value);

    // Chain {1,2,3} (2) > {1,2} (3), the rewards along it are summed.
    auto chain = make_instance(4, {{{1, 2, 3}, 2}, {{1, 2}, 3}, {{4}, 1}}, {});
    t = tree_from_instance(chain);
    out = contract_reward_leaf(t, find_label(t, "A2"));
    merged = find_label(out, "A2'");
    REQUIRE(merged >= 0);
    CHECK(out.nodes[static_cast<std::size_t>(merged)].weight == 5);
    CHECK(brute_force_tree(out).value == brute_force_tree(t).value);

    CHECK_THROWS_AS(contract_reward_leaf(t, find_label(t, "A3")), Error);
}

TEST_CASE("penalty pair rewrites") {
    // Singleton penalty under a penalty: deleting it would change the optimum.
    auto inst = make_instance(4, {{{1, 2, 3, 4}, 10}, {{1}, 5}, {{2}, 5}, {{3}, 5}, {{4}, 5}},
                              {{{1, 2}, 0}, {{3, 4}, 0}});
    auto t = tree_from_instance(inst);
    auto nice = to_nice_tree(t);
    CHECK(brute_force_tree(nice).value == brute_force_tree(t).value);
    CHECK(solve_laminar(inst).value == brute_force(inst).value);

    LaminarTree manual;
    manual.n = 3;
    manual.selectable = {0, 1, 1, 1};
    manual.nodes.push_back({{1, 2, 3}, SetKind::Penalty, 4, -1, {}, -1, "B1"});
    manual.root = 0;
    int b2 = rpsp::test::add_leaf(manual, 0, {1, 2}, SetKind::Penalty, 3, "B2");
    rpsp::test::add_leaf(manual, 0, {3}, SetKind::Reward, 2, "A1");
    REQUIRE(check_tree(manual).empty());
    auto out = reduce_penalty_pair(manual, b2);
    CHECK(find_label(out, "B2") < 0);
    CHECK(out.selectable[1] + out.selectable[2] == 1);
    CHECK(brute_force_tree(out).value == brute_force_tree(manual).value);

    int b2_copy = rpsp::test::add_leaf(manual, b2, {1, 2}, SetKind::Penalty, 7, "B2=");
    out = reduce_penalty_pair(manual, b2_copy);
    CHECK(out.nodes[static_cast<std::size_t>(find_label(out, "B2"))].weight == 10);
    CHECK(brute_force_tree(out).value == brute_force_tree(manual).value);

    int single = rpsp::test::add_leaf(manual, b2, {1}, SetKind::Penalty, 1, "B3");
    CHECK_THROWS_AS(reduce_penalty_pair(manual, single), Error);
}

TEST_CASE("penalty leaf rewrites") {
    // |B| >= 2 under a larger reward parent is deleted.
    auto del = make_instance(3, {{{1, 2, 3}, 5}}, {{{1, 2}, 4}});
    auto t = tree_from_instance(del);
    auto out = resolve_penalty_leaf(t, find_label(t, "B1"));
    CHECK(find_label(out, "B1") < 0);
    CHECK(brute_force_tree(out).value == brute_force_tree(t).value);

    // Singleton penalty under an equal reward: the two swap.
    auto inst = make_instance(2, {{{1}, 5}, {{2}, 1}}, {});
    t = tree_from_instance(inst);
    int a = find_label(t, "A1");
    int b = rpsp::test::add_leaf(t, a, {1}, SetKind::Penalty, 3, "B1");
    out = resolve_penalty_leaf(t, b);
    int nb = find_label(out, "B1");
    int na = find_label(out, "A1");
    CHECK(out.nodes[static_cast<std::size_t>(na)].parent == nb);
    CHECK(brute_force_tree(out).value == brute_force_tree(t).value);

    // Equal penalty above the reward: the new penalty merges into it.
    auto stacked = make_instance(2, {{{1}, 5}, {{2}, 1}}, {{{1}, 2}});
    t = tree_from_instance(stacked);
    b = rpsp::test::add_leaf(t, find_label(t, "A1"), {1}, SetKind::Penalty, 3, "Bs");
    out = resolve_penalty_leaf(t, b);
    CHECK(check_tree(out).empty());
    CHECK(find_label(out, "Bs") < 0);
    CHECK(out.nodes[static_cast<std::size_t>(find_label(out, "B1"))].weight == 5);
    CHECK(brute_force_tree(out).value == brute_force_tree(t).value);

    // Singleton penalty under a larger reward keeps a zero-weight reward child.
    auto filler = make_instance(2, {{{1, 2}, 10}}, {{{1}, 5}, {{2}, 5}});
    t = tree_from_instance(filler);
    out = resolve_penalty_leaf(t, find_label(t, "B1"));
    CHECK(find_label(out, "e1") >= 0);
    CHECK(brute_force_tree(out).value == brute_force_tree(t).value);
    CHECK(brute_force_tree(out).value == 5);
}

TEST_CASE("each tree rewrite preserves the tree optimum") {
    int counted[3] = {0, 0, 0};
    for (std::uint64_t seed = 0; seed < 3000; ++seed) {
        if (auto c = rpsp::test::contraction_case(seed)) {
            CHECK(brute_force_tree(contract_reward_leaf(c->tree, c->leaf)).value ==
                  doctest::Approx(brute_force_tree(c->tree).value));
            ++counted[0];
        }
        if (seed >= 300) continue;
        if (auto c = rpsp::test::penalty_pair_case(seed)) {
            auto out = reduce_penalty_pair(c->tree, c->leaf);
            CHECK(check_tree(out).empty());
            CHECK(brute_force_tree(out).value == doctest::Approx(brute_force_tree(c->tree).value));
            ++counted[1];
        }
        if (auto c = rpsp::test::penalty_leaf_case(seed)) {
            auto out = resolve_penalty_leaf(c->tree, c->leaf);
            CHECK(check_tree(out).empty());
            CHECK(brute_force_tree(out).value == doctest::Approx(brute_force_tree(c->tree).value));
            ++counted[2];
        }
    }
    CHECK(counted[0] >= 50);
    CHECK(counted[1] >= 50);
    CHECK(counted[2] >= 50);
}

TEST_CASE("nice trees and idempotence") {
    auto inst = make_instance(3, {{{1}, 1}, {{2}, 2}, {{3}, 3}, {{1, 2, 3}, 1}}, {{{1, 2}, 2}});
    auto t = tree_from_instance(inst);
    // {1,2} penalty has reward leaf children, so every leaf is already a singleton reward.
    CHECK(is_nice(t));
    auto nice = to_nice_tree(t);
    CHECK(nice.nodes.size() == t.nodes.size());
    CHECK(to_nice_tree(nice).nodes.size() == nice.nodes.size());
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto lam = generate_laminar({9, seed});
        auto tree = tree_from_instance(lam);
        auto n1 = to_nice_tree(tree);
        CHECK(is_nice(n1));
        CHECK(check_tree(n1).empty());
        CHECK(brute_force_tree(n1).value == doctest::Approx(brute_force_tree(tree).value));
    }
}

TEST_CASE("circulation network of the five-set tree") {
    LaminarTree t;
    t.n = 4;
    t.selectable.assign(5, 1);
    t.selectable[0] = 0;
    t.nodes.push_back({{1, 2, 3, 4}, SetKind::Reward, 9, -1, {}, 0, "A1"});
    t.root = 0;
    int b1 = rpsp::test::add_leaf(t, 0, {1, 2}, SetKind::Penalty, 4, "B1");
    int b2 = rpsp::test::add_leaf(t, 0, {3, 4}, SetKind::Penalty, 6, "B2");
    rpsp::test::add_leaf(t, b1, {1}, SetKind::Reward, 3, "A3");
    rpsp::test::add_leaf(t, b2, {3}, SetKind::Reward, 2, "A2");
    rpsp::test::add_leaf(t, b2, {4}, SetKind::Reward, 5, "A4");
    REQUIRE(is_nice(t));
    REQUIRE(check_tree(t).empty());

    auto model = build_circulation(t);
    const auto& net = model.network;
    auto id = [&](const std::string& label) {
        for (std::size_t v = 0; v < model.tree_node_of.size(); ++v)
            if (model.tree_node_of[v] >= 0 && t.nodes[static_cast<std::size_t>(model.tree_node_of[v])].label == label)
                return static_cast<int>(v);
        return -1;
    };
    auto has = [&](int from, int to, std::int64_t cap, double profit, bool big) {
        return std::any_of(net.arcs.begin(), net.arcs.end(), [&](const CirculationArc& a) {
            return a.from == from && a.to == to && a.big == big && (big || a.capacity == cap) && a.profit == profit;
        });
    };
    CHECK(net.arcs.size() == 16);
    CHECK(has(id("B1"), id("A1"), 1, 0, false));
    CHECK(has(id("B1"), id("A1"), 1, -4, false));
    CHECK(has(id("B2"), id("A1"), 1, -6, false));
    CHECK(has(id("A3"), id("B1"), 1, 3, false));
    CHECK(has(id("A3"), id("B1"), 0, 0, true));
    CHECK(has(id("A4"), id("B2"), 1, 5, false));
    CHECK(has(net.source, id("A3"), 1, 0, false));
    CHECK(has(net.source, id("A2"), 1, 0, false));
    CHECK(has(net.source, id("A4"), 1, 0, false));
    CHECK(has(id("A1"), net.sink, 1, 9, false));
    CHECK(has(id("A1"), net.sink, 0, 0, true));
    CHECK(has(net.sink, net.source, 0, 0, true));

    auto circ = max_profit_circulation(net);
    CHECK(check_circulation(net, circ.flow).empty());
    std::vector<Player> chosen;
    for (std::size_t i = 0; i < model.leaf_arcs.size(); ++i)
        if (circ.flow[static_cast<std::size_t>(model.leaf_arcs[i])] > 0) chosen.push_back(model.leaf_players[i]);
    CHECK(circ.profit == doctest::Approx(evaluate_tree(t, chosen)));
    CHECK(circ.profit == doctest::Approx(brute_force_tree(t).value));

    LaminarTree not_nice = t;
    rpsp::test::add_leaf(not_nice, b1, {2}, SetKind::Penalty, 1, "B3");
    CHECK_THROWS_AS(build_circulation(not_nice), Error);
}

TEST_CASE("small circulation cases") {
    auto single = make_instance(1, {{{1}, 4}}, {});
    auto d = solve_laminar_detailed(single);
    CHECK(d.circulation_profit == 4);

    auto pen = make_instance(1, {{{1}, 4}}, {{{1}, 9}});
    d = solve_laminar_detailed(pen);
    CHECK(d.selection.value == 0);
    bool zero_pair = false;
    for (const auto& a : d.model.network.arcs)
        if (a.capacity == 0 && a.profit == 0 && !a.big) zero_pair = true;
    CHECK(zero_pair);
}

TEST_CASE("random laminar instances match brute force") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto inst = generate_laminar({static_cast<int>(2 + seed % 11), seed});
        REQUIRE(is_laminar(inst));
        auto d = solve_laminar_detailed(inst);
        auto oracle = brute_force(inst);
        CHECK(d.selection.value == oracle.value);
        CHECK(check_circulation(d.model.network, d.circulation.flow).empty());
        CHECK(d.circulation_profit == doctest::Approx(evaluate(inst, d.selection.members)));
    }
}

TEST_CASE("dot output") {
    auto t = tree_from_instance(make_instance(2, {{{1}, 2}}, {{{1, 2}, 1}}));
    auto dot = to_dot(t);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("shape=box") != std::string::npos);
}
