#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rpsp {

/// Absolute tolerance used whenever two solver values are compared.
inline constexpr double kValueTolerance = 1e-9;

/// Players are the integers 1..n.
using Player = int;

enum class ObjectiveMode {
    /// max sum of a_i over covered reward sets minus sum of b_j over hit penalty sets.
    CoverRewardHitPenalty,
    /// max sum of a_i over hit reward sets minus sum of b_j over covered penalty sets.
    HitRewardCoverPenalty,
};

std::string_view to_string(ObjectiveMode mode);
ObjectiveMode parse_mode(std::string_view text);

struct WeightedSet {
    std::vector<Player> members;  // sorted, duplicate free
    double weight = 0.0;

    bool operator==(const WeightedSet&) const = default;
};

struct Instance {
    int n = 0;
    std::vector<WeightedSet> reward_sets;
    std::vector<WeightedSet> penalty_sets;
    ObjectiveMode mode = ObjectiveMode::HitRewardCoverPenalty;

    bool operator==(const Instance&) const = default;

    double total_reward() const;
    double total_penalty() const;
};

struct Selection {
    std::vector<Player> members;  // sorted
    double value = 0.0;
};

/// Builds a set with sorted, de-duplicated members.
WeightedSet make_set(std::vector<Player> members, double weight);

/// Profit of `members` under the instance's mode. Throws
/// ErrorKind::InvalidSelection if a member lies outside 1..n.
double evaluate(const Instance& instance, const std::vector<Player>& members);

/// Reward/penalty sets that count towards the objective of `members`.
struct SelectionBreakdown {
    std::vector<int> counted_rewards;    // indices into reward_sets
    std::vector<int> counted_penalties;  // indices into penalty_sets
    double value = 0.0;
};
SelectionBreakdown breakdown(const Instance& instance, const std::vector<Player>& members);

Selection make_selection(const Instance& instance, std::vector<Player> members);

/// Empty iff every instance invariant holds.
std::vector<std::string> validate(const Instance& instance);

/// Throws ErrorKind::InvalidInstance with all violations joined.
void require_valid(const Instance& instance);

bool has_singleton_rewards(const Instance& instance);

/// Player set packed into a 64-bit mask, bit (p-1) for player p. n <= 64.
std::uint64_t to_mask(const std::vector<Player>& members);
std::vector<Player> from_mask(std::uint64_t mask);

}  // namespace rpsp
