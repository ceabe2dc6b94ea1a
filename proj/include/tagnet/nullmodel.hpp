#pragma once

// Reshuffling baselines: the occurrence-preserving "ab initio" shuffle of
// hashtag positions across message slots, and degree-preserving
// configuration-model rewiring via double-edge swaps.

#include <cstdint>
#include <vector>

#include "tagnet/corpus.hpp"
#include "tagnet/graph.hpp"

namespace tagnet {

struct NullModelSpec {
    enum class Method { ab_initio, configuration };
    Method method = Method::ab_initio;
    std::uint64_t seed = 0;
    std::uint32_t replicas = 1;        // >= 1
    std::uint32_t swaps_per_edge = 10; // configuration only
};

struct ShuffleResult {
    std::vector<MessageRecord> records;
    // Within-message duplicates created by the redeal are collapsed; this
    // counts dropped occurrences instead of resampling, keeping the
    // shuffle a pure permutation.
    std::uint64_t collapsed = 0;
};

// Pools every hashtag occurrence, permutes the pool uniformly
// (Fisher-Yates), and redeals it into the original per-message slot
// counts. Authors and timestamps are untouched. Deterministic per seed.
ShuffleResult ab_initio_shuffle(const std::vector<MessageRecord>& records, std::uint64_t seed);

struct RewireResult {
    WeightedGraph graph;  // same vertices, same degree sequence, weights all 1
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    bool too_small = false;  // < 2 edges, returned unchanged
};

// swaps_per_edge * |E| attempted double-edge swaps; any swap that would
// create a self-loop or duplicate edge is rejected, so the graph stays
// simple and the degree sequence is preserved exactly. Topology-only:
// output weights are all 1.
RewireResult configuration_rewire(const WeightedGraph& g, std::uint64_t seed,
                                  std::uint32_t swaps_per_edge = 10);

}  // namespace tagnet
