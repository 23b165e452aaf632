#include "rpsp/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rpsp/error.hpp"

namespace rpsp {

int max_set_size(const InstanceConfig& config) {
    // The small epsilon keeps products such as 0.3 * 10 from rounding up to 4.
    const int bound = static_cast<int>(std::ceil(config.beta * config.n - 1e-9));
    return std::clamp(bound, 1, std::max(config.n, 1));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Instance generate(const InstanceConfig& config) {
    if (config.n < 0 || config.r < 0 || config.p < 0) {
        throw Error(ErrorKind::InfeasibleConfig, "n, r and p must be nonnegative");
    }
    if (!(config.beta > 0.0 && config.beta <= 1.0)) {
        throw Error(ErrorKind::InfeasibleConfig, "beta must lie in (0, 1]");
    }
    if (config.n == 0 && config.r + config.p > 0) {
        throw Error(ErrorKind::InfeasibleConfig, "cannot draw nonempty sets over zero players");
    }

    std::mt19937_64 rng(config.seed);
    const int size_bound = max_set_size(config);
    std::uniform_int_distribution<int> size_dist(1, size_bound);
    std::uniform_int_distribution<int> weight_dist(kMinGeneratedWeight, kMaxGeneratedWeight);
    std::vector<Player> pool(static_cast<std::size_t>(config.n));

    auto draw_set = [&]() {
        const int k = size_dist(rng);
        std::iota(pool.begin(), pool.end(), 1);
        // Partial Fisher-Yates: the first k slots become a uniform k-subset.
        for (int i = 0; i < k; ++i) {
            std::uniform_int_distribution<int> pick(i, config.n - 1);
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
        }
        std::vector<Player> members(pool.begin(), pool.begin() + k);
        return make_set(std::move(members), static_cast<double>(weight_dist(rng)));
    };

    Instance instance;
    instance.n = config.n;
    instance.mode = config.mode;
    instance.reward_sets.reserve(static_cast<std::size_t>(config.r));
    instance.penalty_sets.reserve(static_cast<std::size_t>(config.p));
    for (int i = 0; i < config.r; ++i) instance.reward_sets.push_back(draw_set());
    for (int j = 0; j < config.p; ++j) instance.penalty_sets.push_back(draw_set());
    return instance;
}

}  // namespace rpsp
