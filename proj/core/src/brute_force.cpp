#include "rpsp/brute_force.hpp"

#include <bit>
#include <vector>

#include "rpsp/error.hpp"

namespace rpsp {

bool lex_less(std::uint64_t a, std::uint64_t b) {
    if (a == b) return false;
    const std::uint64_t diff = a ^ b;
    const int d = std::countr_zero(diff);
    // Both lists agree on every element below d; whoever lacks d either
    // continues with a larger element or ends (and is then the prefix).
    if (a >> d & 1u) return (b >> d) != 0;
    return (a >> d) == 0;
}

Selection brute_force(const Instance& instance, int cap) {
    if (instance.n > cap || instance.n > 62) {
        throw Error(ErrorKind::SizeLimit,
                    "brute force limited to n <= " + std::to_string(cap) + " (got n = " +
                        std::to_string(instance.n) + "); use a polynomial solver or export the IP");
    }
    require_valid(instance);

    struct MaskedSet {
        std::uint64_t mask;
        double weight;
    };
    auto pack = [](const std::vector<WeightedSet>& sets) {
        std::vector<MaskedSet> out;
        out.reserve(sets.size());
        for (const auto& s : sets) out.push_back({to_mask(s.members), s.weight});
        return out;
    };
    const auto rewards = pack(instance.reward_sets);
    const auto penalties = pack(instance.penalty_sets);
    const bool cover_reward = instance.mode == ObjectiveMode::CoverRewardHitPenalty;

    std::uint64_t best_mask = 0;
    double best_value = 0.0;  // the empty selection always scores 0
    const std::uint64_t end = std::uint64_t{1} << instance.n;
    for (std::uint64_t x = 1; x < end; ++x) {
        double value = 0.0;
        if (cover_reward) {
            for (const auto& s : rewards) if ((s.mask & x) == s.mask) value += s.weight;
            for (const auto& s : penalties) if (s.mask & x) value -= s.weight;
        } else {
            for (const auto& s : rewards) if (s.mask & x) value += s.weight;
            for (const auto& s : penalties) if ((s.mask & x) == s.mask) value -= s.weight;
        }
        if (value > best_value + kValueTolerance ||
            (value >= best_value - kValueTolerance && lex_less(x, best_mask))) {
            best_value = value;
            best_mask = x;
        }
    }
    return Selection{from_mask(best_mask), best_value};
}

}  // namespace rpsp
