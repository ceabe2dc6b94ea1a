#include "tagnet/nullmodel.hpp"

#include <algorithm>
#include <unordered_set>

#include "tagnet/error.hpp"
#include "tagnet/rng.hpp"

namespace tagnet {

ShuffleResult ab_initio_shuffle(const std::vector<MessageRecord>& records, std::uint64_t seed) {
    std::vector<std::string> pool;
    for (const auto& rec : records)
        pool.insert(pool.end(), rec.hashtags.begin(), rec.hashtags.end());

    Rng rng(seed);
    rng.shuffle(pool);

    ShuffleResult result;
    result.records.reserve(records.size());
    std::size_t cursor = 0;
    for (const auto& rec : records) {
        MessageRecord out;
        out.id = rec.id;
        out.author = rec.author;
        out.timestamp = rec.timestamp;
        const std::size_t slots = rec.hashtags.size();
        for (std::size_t i = 0; i < slots; ++i) {
            std::string& tag = pool[cursor++];
            // slot counts are tiny; a linear duplicate scan beats hashing here
            bool dup = false;
            for (const auto& t : out.hashtags)
                if (t == tag) {
                    dup = true;
                    break;
                }
            if (dup)
                ++result.collapsed;
            else
                out.hashtags.push_back(std::move(tag));
        }
        result.records.push_back(std::move(out));
    }
    return result;
}

namespace {

inline std::uint64_t pack_pair(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

RewireResult configuration_rewire(const WeightedGraph& g, std::uint64_t seed,
                                  std::uint32_t swaps_per_edge) {
    RewireResult result;
    const std::size_t m = g.edge_count();
    if (m < 2) {
        GraphBuilder builder;
        for (const auto& label : g.labels()) builder.vertex(label);
        for (const auto& e : g.edges()) builder.add_edge(e.u, e.v, 1);
        result.graph = builder.build();
        result.too_small = true;
        return result;
    }

    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(m);
    std::unordered_set<std::uint64_t> present;
    present.reserve(m * 2);
    for (const auto& e : g.edges()) {
        edges.emplace_back(e.u, e.v);
        present.insert(pack_pair(e.u, e.v));
    }

    Rng rng(seed);
    const std::uint64_t attempts = std::uint64_t(swaps_per_edge) * m;
    for (std::uint64_t t = 0; t < attempts; ++t) {
        std::size_t i = static_cast<std::size_t>(rng.below(m));
        std::size_t j = static_cast<std::size_t>(rng.below(m - 1));
        if (j >= i) ++j;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (rng.coin()) std::swap(c, d);
        // propose (a,c) and (b,d)
        if (a == c || b == d) {
            ++result.rejected;
            continue;
        }
        const std::uint64_t k1 = pack_pair(a, c);
        const std::uint64_t k2 = pack_pair(b, d);
        present.erase(pack_pair(a, b));
        present.erase(pack_pair(c, d));
        if (k1 == k2 || present.count(k1) || present.count(k2)) {
            present.insert(pack_pair(a, b));
            present.insert(pack_pair(c, d));
            ++result.rejected;
            continue;
        }
        present.insert(k1);
        present.insert(k2);
        edges[i] = {std::min(a, c), std::max(a, c)};
        edges[j] = {std::min(b, d), std::max(b, d)};
        ++result.accepted;
    }

    GraphBuilder builder;
    for (const auto& label : g.labels()) builder.vertex(label);
    for (const auto& [u, v] : edges) builder.add_edge(u, v, 1);
    result.graph = builder.build();
    return result;
}

}  // namespace tagnet
