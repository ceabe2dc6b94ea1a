#pragma once

// Weighted modularity communities (Louvain two-phase heuristic) plus the
// inter-community interaction matrix and per-community activity series.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tagnet/corpus.hpp"
#include "tagnet/graph.hpp"

namespace tagnet {

struct Partition {
    // vertex -> community id; ids are dense 0..C-1, ordered by descending
    // community strength so community 0 is the strongest.
    std::vector<std::uint32_t> assignment;
    double modularity_q = 0.0;
    std::vector<std::uint32_t> sizes;
    // Per community: member vertices sorted by strength descending
    // (ties by label), truncated to the top 10.
    std::vector<std::vector<VertexId>> top_members;

    std::size_t community_count() const { return sizes.size(); }
};

// Exact weighted Newman modularity. Community ids may be arbitrary
// (not necessarily dense). Throws on uncovered vertices or m = 0.
double modularity(const WeightedGraph& g, const std::vector<std::uint32_t>& assignment,
                  double resolution = 1.0);

// Invoked after every accepted local move with the current assignment
// projected back onto the original graph's vertices.
using MoveObserver = std::function<void(const std::vector<std::uint32_t>&)>;

// Louvain: seeded sweep order, local moves while some move gains more
// than 1e-9 in modularity (ties broken toward the lowest community id),
// then aggregation, repeated to a fixed point. resolution scales the
// null term.
Partition louvain_partition(const WeightedGraph& g, std::uint64_t seed,
                            double resolution = 1.0, const MoveObserver& observer = nullptr);

// Symmetric C x C matrix of summed edge weights between (off-diagonal)
// and inside (diagonal, counted once) communities.
struct InteractionMatrix {
    std::size_t communities = 0;
    std::vector<std::uint64_t> cells;  // row-major C x C

    std::uint64_t at(std::size_t a, std::size_t b) const { return cells[a * communities + b]; }
    std::uint64_t& at(std::size_t a, std::size_t b) { return cells[a * communities + b]; }
};

InteractionMatrix interaction_matrix(const WeightedGraph& g, const Partition& p);

// Daily share of messages touching each community. A message counts
// toward every community it contains a hashtag of; shares are normalized
// by the day's total community-attributed incidences, so they sum to 1 on
// active days and are all 0 on empty days.
struct ActivitySeries {
    std::int64_t first_day = 0;  // UTC day index of row 0
    std::size_t communities = 0;
    std::vector<std::vector<double>> shares;  // [day][community]
};

ActivitySeries activity_series(const std::vector<MessageRecord>& records,
                               const WeightedGraph& semantic, const Partition& p);

}  // namespace tagnet
