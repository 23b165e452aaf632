#include <algorithm>

#include "doctest.h"
#include "rpsp/brute_force.hpp"
#include "rpsp/error.hpp"
#include "rpsp/flowsolve.hpp"
#include "rpsp/generate.hpp"
#include "test_support.hpp"

using namespace rpsp;
using rpsp::test::make_instance;

namespace {

constexpr auto kCover = ObjectiveMode::CoverRewardHitPenalty;

int count_arcs(const FlowNetwork& net, int from, int to) {
    return static_cast<int>(std::count_if(net.arcs.begin(), net.arcs.end(),
                                          [&](const FlowArc& a) { return a.from == from && a.to == to; }));
}

}  // namespace

TEST_CASE("max flow on small networks") {
    FlowNetwork single;
    single.source = single.add_node("s");
    single.sink = single.add_node("t");
    single.add_arc(0, 1, 4);
    auto r = max_flow(single);
    CHECK(r.value == 4);
    CHECK(r.cut.source_side == std::vector<int>{0});
    CHECK(r.cut.sink_side == std::vector<int>{1});

    FlowNetwork parallel;
    parallel.source = parallel.add_node("s");
    parallel.sink = parallel.add_node("t");
    int a = parallel.add_node("a");
    int b = parallel.add_node("b");
    parallel.add_arc(0, a, 2);
    parallel.add_arc(a, 1, 2);
    parallel.add_arc(0, b, 3);
    parallel.add_arc(b, 1, 3);
    r = max_flow(parallel);
    CHECK(r.value == 5);
    CHECK(r.cut.capacity == 5);
}

TEST_CASE("rps graph topology with the decision gadget") {
    auto inst = make_instance(3, {{{1, 2}, 4}, {{2, 3}, 6}}, {{{2}, 1}, {{1, 2}, 2}, {{2, 3}, 3}}, kCover);
    auto g = flowsolve::build_rps_graph(inst, 5.0);
    const auto& net = g.network;
    CHECK(net.node_count() == 2 + 3 + 2 + 1);
    int s = net.source, t = net.sink;
    int s_arcs = 0, t_arcs = 0, middle = 0;
    for (int p : g.penalty_nodes) s_arcs += count_arcs(net, s, p);
    for (int a : g.reward_nodes) t_arcs += count_arcs(net, a, t);
    for (int p : g.penalty_nodes)
        for (int a : g.reward_nodes) middle += count_arcs(net, p, a);
    CHECK(s_arcs == 3);
    CHECK(t_arcs == 2);
    CHECK(middle == 6);
    CHECK(count_arcs(net, s, g.gadget_node) == 1);
    CHECK(count_arcs(net, g.gadget_node, t) == 1);
    CHECK(net.arcs.size() == 13);
    CHECK(net.big == doctest::Approx(10 + 6 + 5 + 1));
    for (const auto& arc : net.arcs) {
        CHECK(arc.capacity >= 0);
        if (arc.big) CHECK(arc.capacity == net.big);
    }
}

TEST_CASE("disjoint sets get no middle arc") {
    auto inst = make_instance(2, {{{1}, 3}}, {{{2}, 1}}, kCover);
    auto g = flowsolve::build_rps_graph(inst);
    CHECK(count_arcs(g.network, g.penalty_nodes[0], g.reward_nodes[0]) == 0);
    CHECK(g.gadget_node == -1);
}

TEST_CASE("rps graph requires cover-reward mode") {
    auto inst = make_instance(1, {{{1}, 3}}, {});
    CHECK_THROWS_AS(flowsolve::build_rps_graph(inst), Error);
    CHECK_THROWS_AS(flowsolve::solve_max(inst), Error);
}

TEST_CASE("solve_max examples") {
    auto a = make_instance(1, {{{1}, 3}}, {{{1}, 1}}, kCover);
    auto s = flowsolve::solve_max(a);
    CHECK(s.value == 2);
    CHECK(s.members == std::vector<Player>{1});
    CHECK(flowsolve::decide_max(a, 2));
    CHECK_FALSE(flowsolve::decide_max(a, 3));
    CHECK(flowsolve::decide_max(a, 0));

    auto b = make_instance(2, {{{1, 2}, 2}}, {{{1}, 5}}, kCover);
    s = flowsolve::solve_max(b);
    CHECK(s.value == 0);
    CHECK(s.members.empty());

    auto c = make_instance(4, {{{1, 2}, 2}, {{3}, 7}}, {}, kCover);
    auto d = flowsolve::solve_max_detailed(c);
    CHECK(d.min_cut == 0);
    CHECK(d.selection.value == 9);
}

TEST_CASE("min cut certificate and oracle equivalence on random instances") {
    for (int t = 0; t < 150; ++t) {
        InstanceConfig cfg{1 + t % 8, t % 6, t % 7, 0.6, derive_seed(404, static_cast<std::uint64_t>(t)), kCover};
        auto inst = generate(cfg);
        auto d = flowsolve::solve_max_detailed(inst);
        auto oracle = brute_force(inst);
        CHECK(d.selection.value == oracle.value);
        CHECK(evaluate(inst, d.selection.members) == d.selection.value);
        CHECK(d.flow.value == doctest::Approx(d.flow.cut.capacity));
        CHECK_FALSE(d.flow.cut.severs_big_arc);
        CHECK(inst.total_reward() - d.min_cut == doctest::Approx(oracle.value));
        CHECK(flowsolve::decide_max(inst, oracle.value));
        CHECK_FALSE(flowsolve::decide_max(inst, oracle.value + 1));
    }
}

TEST_CASE("dot dump labels capacities") {
    auto inst = make_instance(1, {{{1}, 3}}, {{{1}, 1}}, kCover);
    auto dot = to_dot(flowsolve::build_rps_graph(inst).network);
    CHECK(dot.find("cap=3") != std::string::npos);
    CHECK(dot.find("digraph") != std::string::npos);
}
