#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "rpsp/brute_force.hpp"
#include "rpsp/error.hpp"
#include "rpsp/generate.hpp"
#include "rpsp/instance.hpp"
#include "rpsp/instance_io.hpp"
#include "test_support.hpp"

using namespace rpsp;
using rpsp::test::make_instance;

namespace {

bool throws_kind(ErrorKind kind, auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace

TEST_CASE("evaluate follows the mode") {
    auto cover = make_instance(2, {{{1, 2}, 3}}, {{{2}, 1}}, ObjectiveMode::CoverRewardHitPenalty);
    CHECK(evaluate(cover, {1, 2}) == doctest::Approx(2));
    CHECK(evaluate(cover, {}) == 0);

    auto hit = make_instance(2, {{{1}, 1}, {{2}, 1}}, {{{1, 2}, 1}});
    CHECK(evaluate(hit, {1, 2}) == doctest::Approx(1));
    CHECK(evaluate(hit, {}) == 0);

    CHECK(throws_kind(ErrorKind::InvalidSelection, [&] { evaluate(hit, {3}); }));
    CHECK(throws_kind(ErrorKind::InvalidSelection, [&] { evaluate(hit, {0}); }));
}

TEST_CASE("cover-reward value is the negated minimisation objective") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto inst = generate({6, 4, 4, 0.7, derive_seed(5, t), ObjectiveMode::CoverRewardHitPenalty});
        std::uint64_t mask = rng() & 63;
        auto x = from_mask(mask);
        double min_obj = 0;
        for (const auto& b : inst.penalty_sets)
            if (std::any_of(b.members.begin(), b.members.end(), [&](int p) { return mask >> (p - 1) & 1; }))
                min_obj += b.weight;
        for (const auto& a : inst.reward_sets)
            if (std::all_of(a.members.begin(), a.members.end(), [&](int p) { return mask >> (p - 1) & 1; }))
                min_obj -= a.weight;
        CHECK(evaluate(inst, x) == doctest::Approx(-min_obj));
    }
}

TEST_CASE("evaluate is invariant under relabeling") {
    auto inst = generate({7, 5, 5, 0.6, 77, ObjectiveMode::HitRewardCoverPenalty});
    std::vector<int> perm{0, 3, 1, 7, 2, 6, 5, 4};
    auto relabel = [&](std::vector<Player> v) {
        for (auto& p : v) p = perm[static_cast<std::size_t>(p)];
        std::sort(v.begin(), v.end());
        return v;
    };
    Instance moved = inst;
    for (auto& s : moved.reward_sets) s.members = relabel(s.members);
    for (auto& s : moved.penalty_sets) s.members = relabel(s.members);
    for (std::uint64_t mask = 0; mask < 128; ++mask) {
        auto x = from_mask(mask);
        CHECK(evaluate(inst, x) == doctest::Approx(evaluate(moved, relabel(x))));
    }
}

TEST_CASE("validate reports each violation") {
    auto ok = make_instance(3, {{{1, 2}, 1}}, {{{3}, 2}});
    CHECK(validate(ok).empty());

    Instance empty_set = ok;
    empty_set.reward_sets.push_back({{}, 1});
    auto v = validate(empty_set);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("empty set") != std::string::npos);

    auto range = make_instance(5, {{{7}, 1}}, {});
    v = validate(range);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("out of range") != std::string::npos);

    Instance negative = ok;
    negative.penalty_sets[0].weight = -1;
    CHECK(validate(negative).size() == 1);
    CHECK(throws_kind(ErrorKind::InvalidInstance, [&] { require_valid(negative); }));
}

TEST_CASE("generate is deterministic and respects the size bound") {
    InstanceConfig c{5, 2, 2, 1.0, 1234};
    CHECK(generate(c) == generate(c));
    CHECK(instance_to_json(generate(c)) == instance_to_json(generate(c)));

    auto big = generate({100, 100, 100, 0.25, 9});
    CHECK(big.reward_sets.size() == 100);
    CHECK(big.penalty_sets.size() == 100);
    CHECK(max_set_size({100, 100, 100, 0.25, 9}) == 25);
    for (const auto* family : {&big.reward_sets, &big.penalty_sets})
        for (const auto& s : *family) {
            CHECK(s.members.size() >= 1);
            CHECK(s.members.size() <= 25);
            CHECK(s.weight >= 1);
            CHECK(s.weight <= 100);
            CHECK(s.weight == std::floor(s.weight));
        }
    CHECK(validate(big).empty());

    auto none = generate({5, 0, 0, 1.0, 3});
    CHECK(none.reward_sets.empty());
    CHECK(brute_force(none).value == 0);

    CHECK(throws_kind(ErrorKind::InfeasibleConfig, [] { generate({0, 1, 0, 1.0, 1}); }));
    CHECK(throws_kind(ErrorKind::InfeasibleConfig, [] { generate({4, 1, 0, 0.0, 1}); }));
    CHECK_NOTHROW(generate({0, 0, 0, 1.0, 1}));
}

TEST_CASE("brute force examples") {
    auto single = make_instance(1, {{{1}, 5}}, {});
    auto s = brute_force(single);
    CHECK(s.members == std::vector<Player>{1});
    CHECK(s.value == 5);

    auto p3 = make_instance(3, {{{1}, 1}, {{2}, 1}, {{3}, 1}}, {{{1, 2}, 1}, {{2, 3}, 1}});
    s = brute_force(p3);
    CHECK(s.value == 2);
    CHECK(s.members == std::vector<Player>{1, 3});

    s = brute_force(Instance{4, {}, {}, ObjectiveMode::HitRewardCoverPenalty});
    CHECK(s.members.empty());
    CHECK(s.value == 0);

    Instance huge{25, {}, {}, ObjectiveMode::HitRewardCoverPenalty};
    CHECK(throws_kind(ErrorKind::SizeLimit, [&] { brute_force(huge); }));
}

TEST_CASE("brute force ties go to the lexicographically smallest selection") {
    // Player 1 is in no set, so {1,2} ties with {2} and sorts first.
    auto inst = make_instance(3, {{{2}, 1}, {{3}, 1}}, {{{2, 3}, 1}});
    auto s = brute_force(inst);
    CHECK(s.value == 1);
    CHECK(s.members == std::vector<Player>{1, 2});
    CHECK(lex_less(to_mask({1, 3}), to_mask({2})));
    CHECK(lex_less(to_mask({1}), to_mask({1, 2})));
    CHECK_FALSE(lex_less(to_mask({2}), to_mask({2})));
}

TEST_CASE("brute force value is nonnegative and monotone in rewards") {
    for (int t = 0; t < 40; ++t) {
        auto inst = generate({8, 5, 5, 0.5, derive_seed(21, t)});
        auto base = brute_force(inst).value;
        CHECK(base >= 0);
        CHECK(evaluate(inst, brute_force(inst).members) == doctest::Approx(base));
        inst.reward_sets[static_cast<std::size_t>(t % 5)].weight += 17;
        CHECK(brute_force(inst).value >= base - kValueTolerance);
    }
}

TEST_CASE("instance JSON round trip and strict keys") {
    auto inst = generate({6, 3, 3, 0.5, 8, ObjectiveMode::CoverRewardHitPenalty});
    CHECK(parse_instance(instance_to_json(inst)) == inst);
    CHECK(instance_digest(inst) == instance_digest(parse_instance(instance_to_json(inst, 0))));

    CHECK(throws_kind(ErrorKind::Parse, [] {
        parse_instance(R"({"n":1,"mode":"hit-reward","reward_sets":[],"penalty_sets":[],"extra":1})");
    }));
    CHECK(throws_kind(ErrorKind::Parse, [] {
        parse_instance(R"({"n":1,"mode":"both","reward_sets":[],"penalty_sets":[]})");
    }));
    CHECK(throws_kind(ErrorKind::Parse, [] {
        parse_instance(R"({"n":1,"mode":"hit-reward","reward_sets":[{"members":[1],"weight":1,"x":0}],"penalty_sets":[]})");
    }));
    auto claimed = parse_selection(R"({"members":[3,1],"value":2.5})");
    CHECK(claimed.members == std::vector<Player>{3, 1});
    REQUIRE(claimed.value);
    CHECK(*claimed.value == 2.5);
}
