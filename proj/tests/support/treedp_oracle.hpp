#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rpsp/decomposition.hpp"
#include "rpsp/treedp.hpp"

namespace rpsp::test {

/// Best profit per footprint (S, n) of every selection of player nodes in
/// V_i, computed straight from the table definition.
inline std::map<treedp::TableKey, double> footprint_table(const treedp::ReducedGraph& g,
                                                          const std::vector<int>& bag,
                                                          const std::vector<int>& below) {
    std::vector<int> pool;
    for (int v : below)
        if (!g.is_penalty(v)) pool.push_back(v);
    auto in_bag = [&](int v) { return std::binary_search(bag.begin(), bag.end(), v); };
    std::map<treedp::TableKey, double> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pool.size()); ++mask) {
        std::vector<char> chosen(static_cast<std::size_t>(g.node_count()), 0);
        double value = 0.0;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if ((mask >> i) & 1U) {
                chosen[static_cast<std::size_t>(pool[i])] = 1;
                value += g.profit(pool[i]);
            }
        for (int v : below) {
            if (!g.is_penalty(v) || in_bag(v)) continue;
            bool covered = true;
            for (int u : g.graph.neighbors(v)) covered = covered && chosen[static_cast<std::size_t>(u)];
            if (covered) value -= g.profit(v);
        }
        treedp::TableKey key;
        for (int v : bag) {
            if (!g.is_penalty(v)) {
                key.push_back(chosen[static_cast<std::size_t>(v)]);
                continue;
            }
            int forgotten = 0;
            for (int u : g.graph.neighbors(v))
                if (chosen[static_cast<std::size_t>(u)] && !in_bag(u)) ++forgotten;
            key.push_back(forgotten);
        }
        auto [it, fresh] = best.emplace(key, value);
        if (!fresh) it->second = std::max(it->second, value);
    }
    return best;
}

/// Number of table entries that differ from the footprint enumeration,
/// counting missing and surplus keys. `checked` receives the entries compared.
inline int table_mismatches(const treedp::ReducedGraph& g, const TreeDecomposition& nice_td,
                            const std::vector<treedp::DPTable>& tables, long& checked) {
    auto below = subtree_nodes(nice_td);
    int bad = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        auto expected = footprint_table(g, nice_td.bags[i], below[i]);
        if (expected.size() != tables[i].entries.size()) ++bad;
        for (const auto& [key, value] : expected) {
            ++checked;
            double got = tables[i].value(key);
            if (!(std::abs(got - value) <= 1e-9)) ++bad;
        }
    }
    return bad;
}

}  // namespace rpsp::test
