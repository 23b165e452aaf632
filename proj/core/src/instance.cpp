#include "rpsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rpsp/error.hpp"

namespace rpsp {

std::string_view to_string(ObjectiveMode mode) {
    return mode == ObjectiveMode::CoverRewardHitPenalty ? "cover-reward" : "hit-reward";
}

ObjectiveMode parse_mode(std::string_view text) {
    if (text == "cover-reward") return ObjectiveMode::CoverRewardHitPenalty;
    if (text == "hit-reward") return ObjectiveMode::HitRewardCoverPenalty;
    throw Error(ErrorKind::Parse, "unknown objective mode '" + std::string(text) + "'");
}

double Instance::total_reward() const {
    return std::accumulate(reward_sets.begin(), reward_sets.end(), 0.0,
                           [](double acc, const WeightedSet& s) { return acc + s.weight; });
}

double Instance::total_penalty() const {
    return std::accumulate(penalty_sets.begin(), penalty_sets.end(), 0.0,
                           [](double acc, const WeightedSet& s) { return acc + s.weight; });
}

WeightedSet make_set(std::vector<Player> members, double weight) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return WeightedSet{std::move(members), weight};
}

namespace {

std::vector<char> membership(const Instance& instance, const std::vector<Player>& members) {
    std::vector<char> chosen(static_cast<std::size_t>(instance.n) + 1, 0);
    for (Player p : members) {
        if (p < 1 || p > instance.n) {
            throw Error(ErrorKind::InvalidSelection,
                        "player " + std::to_string(p) + " outside 1.." + std::to_string(instance.n));
        }
        chosen[static_cast<std::size_t>(p)] = 1;
    }
    return chosen;
}

bool covered(const WeightedSet& set, const std::vector<char>& chosen) {
    return std::all_of(set.members.begin(), set.members.end(),
                       [&](Player p) { return chosen[static_cast<std::size_t>(p)] != 0; });
}

bool hit(const WeightedSet& set, const std::vector<char>& chosen) {
    return std::any_of(set.members.begin(), set.members.end(),
                       [&](Player p) { return chosen[static_cast<std::size_t>(p)] != 0; });
}

}  // namespace

SelectionBreakdown breakdown(const Instance& instance, const std::vector<Player>& members) {
    const auto chosen = membership(instance, members);
    const bool cover_reward = instance.mode == ObjectiveMode::CoverRewardHitPenalty;
    SelectionBreakdown out;
    for (std::size_t i = 0; i < instance.reward_sets.size(); ++i) {
        const auto& set = instance.reward_sets[i];
        if (cover_reward ? covered(set, chosen) : hit(set, chosen)) {
            out.counted_rewards.push_back(static_cast<int>(i));
            out.value += set.weight;
        }
    }
    for (std::size_t j = 0; j < instance.penalty_sets.size(); ++j) {
        const auto& set = instance.penalty_sets[j];
        if (cover_reward ? hit(set, chosen) : covered(set, chosen)) {
            out.counted_penalties.push_back(static_cast<int>(j));
            out.value -= set.weight;
        }
    }
    return out;
}

double evaluate(const Instance& instance, const std::vector<Player>& members) {
    return breakdown(instance, members).value;
}

Selection make_selection(const Instance& instance, std::vector<Player> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    const double value = evaluate(instance, members);
    return Selection{std::move(members), value};
}

std::vector<std::string> validate(const Instance& instance) {
    std::vector<std::string> violations;
    if (instance.n < 0) violations.push_back("player count n is negative");
    auto check = [&](const std::vector<WeightedSet>& sets, const char* kind) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const auto& set = sets[i];
            const std::string name = std::string(kind) + " set " + std::to_string(i + 1);
            if (set.members.empty()) violations.push_back(name + ": empty set");
            for (Player p : set.members) {
                if (p < 1 || p > instance.n) {
                    violations.push_back(name + ": member " + std::to_string(p) +
                                         " out of range 1.." + std::to_string(instance.n));
                }
            }
            if (!std::is_sorted(set.members.begin(), set.members.end()) ||
                std::adjacent_find(set.members.begin(), set.members.end()) != set.members.end()) {
                violations.push_back(name + ": members not sorted and distinct");
            }
            if (!std::isfinite(set.weight) || set.weight < 0.0) {
                violations.push_back(name + ": weight must be a nonnegative finite real");
            }
        }
    };
    check(instance.reward_sets, "reward");
    check(instance.penalty_sets, "penalty");
    return violations;
}

void require_valid(const Instance& instance) {
    const auto violations = validate(instance);
    if (violations.empty()) return;
    std::ostringstream msg;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) msg << "; ";
        msg << violations[i];
    }
    throw Error(ErrorKind::InvalidInstance, msg.str());
}

bool has_singleton_rewards(const Instance& instance) {
    return std::all_of(instance.reward_sets.begin(), instance.reward_sets.end(),
                       [](const WeightedSet& s) { return s.members.size() == 1; });
}

std::uint64_t to_mask(const std::vector<Player>& members) {
    std::uint64_t mask = 0;
    for (Player p : members) mask |= std::uint64_t{1} << (p - 1);
    return mask;
}

std::vector<Player> from_mask(std::uint64_t mask) {
    std::vector<Player> out;
    for (int bit = 0; mask; ++bit, mask >>= 1) {
        if (mask & 1u) out.push_back(bit + 1);
    }
    return out;
}

}  // namespace rpsp
