#pragma once

// Bipartite user-hashtag graph and its two weighted monopartite
// projections. Graphs are immutable after construction; vertex ids are
// dense integers assigned in first-occurrence order so every analysis
// downstream is label-stable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tagnet/corpus.hpp"

namespace tagnet {

using VertexId = std::uint32_t;

struct WeightedEdge {
    VertexId u, v;     // u < v
    std::uint64_t w;   // >= 1
};

// Undirected simple graph with positive integer edge weights.
class WeightedGraph {
public:
    struct Neighbor {
        VertexId to;
        std::uint64_t w;
    };

    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& label(VertexId v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<VertexId> find_vertex(std::string_view label) const;

    // Canonical edge list, sorted by (u, v).
    std::span<const WeightedEdge> edges() const { return edges_; }

    std::uint32_t degree(VertexId v) const { return degree_[v]; }
    std::uint64_t strength(VertexId v) const { return strength_[v]; }
    std::uint64_t total_weight() const { return total_weight_; }

    std::span<const Neighbor> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

private:
    friend class GraphBuilder;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> label_index_;
    std::vector<WeightedEdge> edges_;
    std::vector<std::size_t> offsets_;  // size vertices+1
    std::vector<Neighbor> adjacency_;
    std::vector<std::uint32_t> degree_;
    std::vector<std::uint64_t> strength_;
    std::uint64_t total_weight_ = 0;
};

class GraphBuilder {
public:
    // Returns the id for a label, creating it on first sight.
    VertexId vertex(std::string_view label);
    std::size_t vertex_count() const { return labels_.size(); }

    // Accumulates weight onto the unordered pair {a, b}. Self-loops are
    // rejected with an Error.
    void add_edge(VertexId a, VertexId b, std::uint64_t w = 1);

    WeightedGraph build() const;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> index_;
    std::unordered_map<std::uint64_t, std::uint64_t> weights_;  // packed pair -> w
};

struct BipartiteGraph {
    struct Incidence {
        VertexId user;
        std::vector<VertexId> tags;  // sorted unique hashtag ids of one message
    };

    std::vector<std::string> user_labels;     // first-occurrence order
    std::vector<std::string> hashtag_labels;  // first-occurrence order
    std::vector<Incidence> messages;

    // Adjacency views (sorted unique).
    std::vector<std::vector<VertexId>> user_tags;  // vocabulary per user
    std::vector<std::vector<VertexId>> tag_users;  // distinct users per hashtag

    std::size_t user_count() const { return user_labels.size(); }
    std::size_t hashtag_count() const { return hashtag_labels.size(); }
};

BipartiteGraph build_bipartite(const std::vector<MessageRecord>& records);

// Whether two hashtags co-occur when one message contains both (tweet) or
// when one user's whole vocabulary contains both (user).
enum class CooccurrenceScope { tweet, user };

// Hashtag projection. Edge weight = number of distinct users co-using the
// pair under the chosen scope. Vertices with no co-occurrence are omitted.
WeightedGraph project_semantic(const BipartiteGraph& b,
                               CooccurrenceScope scope = CooccurrenceScope::tweet);

// User projection. Edge weight = number of distinct shared hashtags.
// Users sharing no hashtag with anyone are omitted.
WeightedGraph project_interest(const BipartiteGraph& b);

void write_edge_list_tsv(const WeightedGraph& g, std::ostream& out);
void write_graphml(const WeightedGraph& g, std::ostream& out);

}  // namespace tagnet
