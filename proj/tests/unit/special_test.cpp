#include "doctest.h"
#include "rpsp/brute_force.hpp"
#include "rpsp/decomposition.hpp"
#include "rpsp/error.hpp"
#include "rpsp/graph.hpp"
#include "rpsp/special.hpp"
#include "test_support.hpp"

using namespace rpsp;
using namespace rpsp::special;
using rpsp::test::make_instance;

namespace {

SimpleGraph star(int leaves) {
    SimpleGraph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

}  // namespace

TEST_CASE("simple graph basics") {
    SimpleGraph g(3);
    CHECK(g.add_edge(0, 1, 2.5));
    CHECK_FALSE(g.add_edge(1, 0));
    CHECK(g.has_edge(1, 0));
    CHECK(g.edge_weight(1, 0) == 2.5);
    CHECK(g.node_weight(2) == 1);
    CHECK_THROWS(g.add_edge(2, 2));
    CHECK_THROWS(g.add_edge(0, 3));
    CHECK(g.max_degree() == 1);
    CHECK(maximum_independent_set(cycle_graph(5)).size() == 2);
    CHECK(is_independent(path_graph(3), {0, 2}));
    CHECK_FALSE(is_independent(path_graph(3), {0, 1}));
}

TEST_CASE("MIS reduction examples") {
    auto k3 = mis_to_rpsp(complete_graph(3));
    CHECK(k3.mode == ObjectiveMode::HitRewardCoverPenalty);
    CHECK(k3.penalty_sets.size() == 3);
    CHECK(brute_force(k3).value == 1);
    CHECK(brute_force(mis_to_rpsp(path_graph(3))).value == 2);
    CHECK(brute_force(mis_to_rpsp(SimpleGraph(1))).value == 1);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto g = random_gnp(static_cast<int>(2 + seed % 10), 0.35, seed);
        CHECK(brute_force(mis_to_rpsp(g)).value == maximum_independent_set(g).size());
    }
}

TEST_CASE("repair") {
    auto k2 = mis_to_rpsp(complete_graph(2));
    auto r = repair(k2, {1, 2});
    CHECK(r.members.size() == 1);
    CHECK(r.value == 1);
    CHECK(evaluate(k2, {1, 2}) == 1);

    auto p3 = mis_to_rpsp(path_graph(3));
    CHECK(repair(p3, {1, 3}).members == std::vector<Player>{1, 3});

    auto k3 = mis_to_rpsp(complete_graph(3));
    CHECK(evaluate(k3, {1, 2, 3}) == 0);
    r = repair(k3, {1, 2, 3});
    CHECK(r.members == std::vector<Player>{1});
    CHECK(r.value == 1);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = random_gnp(9, 0.4, seed);
        auto inst = mis_to_rpsp(g);
        std::vector<Player> all{1, 2, 3, 4, 5, 6, 7, 8, 9};
        auto out = repair(inst, all);
        std::vector<int> nodes;
        for (Player p : out.members) nodes.push_back(p - 1);
        CHECK(is_independent(g, nodes));
        CHECK(out.value >= evaluate(inst, all));
    }
}

TEST_CASE("simplified connection graph") {
    auto g = simplify_connection_graph(make_instance(2, {}, {{{1, 2}, 7}}));
    CHECK(g.edge_count() == 1);
    CHECK(g.edge_weight(0, 1) == 7);

    auto parallel = make_instance(2, {{{1}, 4}, {{2}, 3}}, {{{1, 2}, 2}, {{1, 2}, 3}});
    auto merged = simplify_connection_graph(parallel);
    CHECK(merged.edge_weight(0, 1) == 5);
    CHECK(merged.node_weight(0) == 4);
    CHECK(brute_force(graph_instance(merged)).value == brute_force(parallel).value);
    CHECK(brute_force(parallel).value == 4);

    CHECK(simplify_connection_graph(make_instance(3, {{{1}, 1}}, {})).edge_count() == 0);
    CHECK_THROWS_AS(simplify_connection_graph(make_instance(3, {}, {{{1, 2, 3}, 1}})), Error);
    CHECK_THROWS_AS(simplify_connection_graph(make_instance(3, {{{1, 2}, 1}}, {})), Error);
}

TEST_CASE("chordality") {
    CHECK_FALSE(is_chordal(cycle_graph(4)).chordal);
    CHECK(is_chordal(cycle_graph(3)).chordal);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto t = random_tree(10, seed);
        auto r = is_chordal(t);
        CHECK(r.chordal);
        CHECK(is_perfect_elimination_order(t, r.elimination_order));
        auto kt = random_ktree(10, 2, seed);
        r = is_chordal(kt.graph);
        CHECK(r.chordal);
        CHECK(is_perfect_elimination_order(kt.graph, r.elimination_order));
        CHECK(chordal_mis(kt.graph, r.elimination_order).size() == maximum_independent_set(kt.graph).size());
    }
}

TEST_CASE("uniform cases") {
    auto s = solve_uniform(star(3), 1, 1.0 / 3);
    CHECK(s.status == UniformCase::AllNodes);
    CHECK(s.selection.members.size() == 4);
    CHECK(s.selection.value == doctest::Approx(3));
    CHECK(brute_force(uniform_instance(star(3), 1, 1.0 / 3)).value == doctest::Approx(3));

    s = solve_uniform(path_graph(3), 1, 1);
    CHECK(s.status == UniformCase::ChordalIndependentSet);
    CHECK(s.selection.members == std::vector<Player>{1, 3});
    CHECK(s.selection.value == 2);

    s = solve_uniform(complete_graph(5), 1, 1);
    CHECK(s.selection.members.size() == 1);
    CHECK(s.selection.value == 1);

    CHECK(solve_uniform(cycle_graph(4), 1, 1).status == UniformCase::NotApplicable);
    CHECK(solve_uniform(star(3), 1, 0.5).status == UniformCase::NotApplicable);

    auto w = uniform_weights(uniform_instance(path_graph(3), 2, 5));
    REQUIRE(w);
    CHECK(w->first == 2);
    CHECK(w->second == 5);
    CHECK_FALSE(uniform_weights(make_instance(2, {{{1}, 1}, {{2}, 2}}, {})));
}

TEST_CASE("chordal gadget") {
    auto [k3, inst] = chordal_gadget(path_graph(3));
    CHECK(k3.edge_count() == 3);
    CHECK(k3.edge_weight(0, 2) == 0);
    CHECK(k3.edge_weight(0, 1) == 4);
    CHECK(brute_force(inst).value == 2);
    CHECK(is_chordal(k3).chordal);

    auto [k2, inst2] = chordal_gadget(complete_graph(2));
    CHECK(k2.edge_count() == 1);
    CHECK(k2.edge_weight(0, 1) == 3);
    CHECK(brute_force(inst2).value == 1);

    auto [full, inst3] = chordal_gadget(SimpleGraph(3));
    CHECK(full.edge_count() == 3);
    CHECK(brute_force(inst3).value == 3);
}
