#pragma once

#include <cstdint>

#include "rpsp/instance.hpp"

namespace rpsp {

/// Random instance shape: n players, r reward sets, p penalty sets, every
/// set of size 1..ceil(beta * n).
struct InstanceConfig {
    int n = 0;
    int r = 0;
    int p = 0;
    double beta = 1.0;
    std::uint64_t seed = 0;
    ObjectiveMode mode = ObjectiveMode::HitRewardCoverPenalty;
};

inline constexpr int kMinGeneratedWeight = 1;
inline constexpr int kMaxGeneratedWeight = 100;

/// Largest set size the generator may draw for this config.
int max_set_size(const InstanceConfig& config);

/// Identical configs (seed included) produce identical instances. Weights are
/// integers drawn uniformly from kMinGeneratedWeight..kMaxGeneratedWeight.
Instance generate(const InstanceConfig& config);

/// Sub-seed for the index-th item derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace rpsp
