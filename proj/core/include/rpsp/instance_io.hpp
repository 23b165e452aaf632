#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rpsp/instance.hpp"

namespace rpsp {

/// JSON instance format:
///   {"n": 3, "mode": "hit-reward",
///    "reward_sets": [{"members": [1], "weight": 2}],
///    "penalty_sets": [{"members": [1, 2], "weight": 4}]}
/// Members are 1-based; unknown keys are rejected.
Instance parse_instance(const std::string& text);
Instance read_instance_file(const std::string& path);
std::string instance_to_json(const Instance& instance, int indent = 2);
void write_instance_file(const Instance& instance, const std::string& path);

/// Stable 64-bit FNV-1a digest of the compact JSON form, rendered as hex.
std::string instance_digest(const Instance& instance);

/// A claimed selection: {"members": [...], "value": v}. A run record with a
/// "selection" array is accepted as well.
struct ClaimedSelection {
    std::vector<Player> members;
    std::optional<double> value;
};
ClaimedSelection parse_selection(const std::string& text);
ClaimedSelection read_selection_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rpsp
