#include "tagnet/graph.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

#include "tagnet/error.hpp"

namespace tagnet {

namespace {

inline std::uint64_t pack_pair(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

std::optional<VertexId> WeightedGraph::find_vertex(std::string_view label) const {
    auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

VertexId GraphBuilder::vertex(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    VertexId id = static_cast<VertexId>(labels_.size());
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
}

void GraphBuilder::add_edge(VertexId a, VertexId b, std::uint64_t w) {
    if (a == b) throw Error("self-loop rejected: vertex " + std::to_string(a));
    if (a >= labels_.size() || b >= labels_.size()) throw Error("edge endpoint out of range");
    weights_[pack_pair(a, b)] += w;
}

WeightedGraph GraphBuilder::build() const {
    WeightedGraph g;
    g.labels_ = labels_;
    g.label_index_ = index_;
    g.edges_.reserve(weights_.size());
    for (const auto& [key, w] : weights_) {
        g.edges_.push_back({static_cast<VertexId>(key >> 32),
                            static_cast<VertexId>(key & 0xffffffffu), w});
    }
    std::sort(g.edges_.begin(), g.edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });

    const std::size_t n = g.labels_.size();
    g.degree_.assign(n, 0);
    g.strength_.assign(n, 0);
    for (const auto& e : g.edges_) {
        ++g.degree_[e.u];
        ++g.degree_[e.v];
        g.strength_[e.u] += e.w;
        g.strength_[e.v] += e.w;
        g.total_weight_ += e.w;
    }

    g.offsets_.assign(n + 1, 0);
    for (const auto& e : g.edges_) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adjacency_.resize(2 * g.edges_.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : g.edges_) {
        g.adjacency_[cursor[e.u]++] = {e.v, e.w};
        g.adjacency_[cursor[e.v]++] = {e.u, e.w};
    }
    // neighbor lists come out sorted because edges are sorted by (u, v)
    for (std::size_t i = 0; i < n; ++i) {
        auto begin = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
        auto end = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
        std::sort(begin, end, [](const WeightedGraph::Neighbor& a,
                                 const WeightedGraph::Neighbor& b) { return a.to < b.to; });
    }
    return g;
}

BipartiteGraph build_bipartite(const std::vector<MessageRecord>& records) {
    BipartiteGraph b;
    std::unordered_map<std::string, VertexId> users, tags;

    for (const auto& rec : records) {
        auto [uit, unew] = users.try_emplace(rec.author, static_cast<VertexId>(users.size()));
        if (unew) b.user_labels.push_back(rec.author);

        BipartiteGraph::Incidence inc;
        inc.user = uit->second;
        inc.tags.reserve(rec.hashtags.size());
        for (const auto& t : rec.hashtags) {
            auto [tit, tnew] = tags.try_emplace(t, static_cast<VertexId>(tags.size()));
            if (tnew) b.hashtag_labels.push_back(t);
            inc.tags.push_back(tit->second);
        }
        std::sort(inc.tags.begin(), inc.tags.end());
        inc.tags.erase(std::unique(inc.tags.begin(), inc.tags.end()), inc.tags.end());
        b.messages.push_back(std::move(inc));
    }

    b.user_tags.resize(b.user_labels.size());
    b.tag_users.resize(b.hashtag_labels.size());
    for (const auto& msg : b.messages) {
        for (VertexId t : msg.tags) {
            b.user_tags[msg.user].push_back(t);
            b.tag_users[t].push_back(msg.user);
        }
    }
    auto sort_unique = [](std::vector<VertexId>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    for (auto& v : b.user_tags) sort_unique(v);
    for (auto& v : b.tag_users) sort_unique(v);
    return b;
}

namespace {

// Builds a projection graph from accumulated pair weights, keeping only
// participating vertices and preserving first-occurrence label order.
WeightedGraph finish_projection(const std::vector<std::string>& source_labels,
                                const std::unordered_map<std::uint64_t, std::uint64_t>& pair_w) {
    std::vector<bool> used(source_labels.size(), false);
    for (const auto& [key, w] : pair_w) {
        used[key >> 32] = true;
        used[key & 0xffffffffu] = true;
    }
    GraphBuilder builder;
    std::vector<VertexId> remap(source_labels.size(), 0);
    for (std::size_t i = 0; i < source_labels.size(); ++i)
        if (used[i]) remap[i] = builder.vertex(source_labels[i]);
    for (const auto& [key, w] : pair_w)
        builder.add_edge(remap[key >> 32], remap[key & 0xffffffffu], w);
    return builder.build();
}

}  // namespace

WeightedGraph project_semantic(const BipartiteGraph& b, CooccurrenceScope scope) {
    // Pair sets are collected per user so each user contributes at most 1
    // to a pair's weight no matter how many of their messages repeat it.
    std::vector<std::unordered_set<std::uint64_t>> user_pairs(b.user_count());

    if (scope == CooccurrenceScope::tweet) {
        for (const auto& msg : b.messages) {
            const auto& t = msg.tags;
            for (std::size_t i = 0; i + 1 < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    user_pairs[msg.user].insert(pack_pair(t[i], t[j]));
        }
    } else {
        for (std::size_t u = 0; u < b.user_count(); ++u) {
            const auto& vocab = b.user_tags[u];
            for (std::size_t i = 0; i + 1 < vocab.size(); ++i)
                for (std::size_t j = i + 1; j < vocab.size(); ++j)
                    user_pairs[u].insert(pack_pair(vocab[i], vocab[j]));
        }
    }

    std::unordered_map<std::uint64_t, std::uint64_t> pair_w;
    for (const auto& pairs : user_pairs)
        for (std::uint64_t key : pairs) ++pair_w[key];
    return finish_projection(b.hashtag_labels, pair_w);
}

WeightedGraph project_interest(const BipartiteGraph& b) {
    std::unordered_map<std::uint64_t, std::uint64_t> pair_w;
    for (const auto& users : b.tag_users) {
        for (std::size_t i = 0; i + 1 < users.size(); ++i)
            for (std::size_t j = i + 1; j < users.size(); ++j)
                ++pair_w[pack_pair(users[i], users[j])];
    }
    return finish_projection(b.user_labels, pair_w);
}

void write_edge_list_tsv(const WeightedGraph& g, std::ostream& out) {
    for (const auto& e : g.edges())
        out << g.label(e.u) << '\t' << g.label(e.v) << '\t' << e.w << '\n';
}

namespace {

void xml_escape(const std::string& s, std::ostream& out) {
    for (char c : s) {
        switch (c) {
            case '&': out << "&amp;"; break;
            case '<': out << "&lt;"; break;
            case '>': out << "&gt;"; break;
            case '"': out << "&quot;"; break;
            default: out << c;
        }
    }
}

}  // namespace

void write_graphml(const WeightedGraph& g, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "    <node id=\"n" << v << "\"><data key=\"label\">";
        xml_escape(g.label(v), out);
        out << "</data></node>\n";
    }
    for (const auto& e : g.edges()) {
        out << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v
            << "\"><data key=\"weight\">" << e.w << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

}  // namespace tagnet
