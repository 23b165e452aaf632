#pragma once

#include <optional>
#include <vector>

#include "rpsp/flow_network.hpp"
#include "rpsp/instance.hpp"

namespace rpsp::flowsolve {

/// Reward-penalty-selection graph: s -> B_j (b_j), B_j -> A_i (BIG) whenever
/// A_i and B_j intersect, A_i -> t (a_i), and for the decision gadget an extra
/// node z with s -> z (alpha) and z -> t (BIG).
struct RpsGraph {
    FlowNetwork network;
    std::vector<int> reward_nodes;   // node id of A_i
    std::vector<int> penalty_nodes;  // node id of B_j
    int gadget_node = -1;            // z, or -1 without the decision gadget
};

/// BIG = sum a_i + sum b_j + |alpha| + 1, larger than any finite cut.
/// Requires cover-reward mode (ErrorKind::Mode) and alpha >= 0.
RpsGraph build_rps_graph(const Instance& instance, std::optional<double> alpha = std::nullopt);

/// Is there a selection with profit >= alpha?
bool decide_max(const Instance& instance, double alpha);

struct MaxSolution {
    Selection selection;
    double min_cut = 0.0;
    std::vector<int> chosen_rewards;  // reward indices on the sink side of the cut
    MaxFlowResult flow;
};

/// Optimum = sum a_i - min cut of the gadget-free graph; the selection is the
/// union of the reward sets left on the sink side.
MaxSolution solve_max_detailed(const Instance& instance);
Selection solve_max(const Instance& instance);

}  // namespace rpsp::flowsolve
