#include "tagnet/community.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <unordered_map>
#include <utility>

#include "tagnet/error.hpp"
#include "tagnet/rng.hpp"
#include "tagnet/timeutil.hpp"

namespace tagnet {

double modularity(const WeightedGraph& g, const std::vector<std::uint32_t>& assignment,
                  double resolution) {
    if (assignment.size() != g.vertex_count()) {
        throw Error("modularity: assignment does not cover every vertex");
    }
    const double m = static_cast<double>(g.total_weight());
    if (m == 0.0) throw Error("modularity undefined: graph has no edges");

    // Community ids may be sparse; accumulate per id.
    std::unordered_map<std::uint32_t, double> internal;
    std::unordered_map<std::uint32_t, double> strength;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        strength[assignment[v]] += static_cast<double>(g.strength(v));
    }
    for (const auto& e : g.edges()) {
        if (assignment[e.u] == assignment[e.v]) {
            internal[assignment[e.u]] += static_cast<double>(e.w);
        }
    }
    double q = 0.0;
    for (const auto& [c, s] : strength) {
        const auto it = internal.find(c);
        const double w_in = it == internal.end() ? 0.0 : it->second;
        const double frac = s / (2.0 * m);
        q += w_in / m - resolution * frac * frac;
    }
    return q;
}

namespace {

struct LevelGraph {
    struct Arc {
        std::uint32_t to;
        double w;
    };
    std::size_t n = 0;
    std::vector<std::vector<Arc>> adj;  // u != to, each edge stored twice
    std::vector<double> self;           // collapsed internal weight, counted once
    std::vector<double> strength;       // sum of arc weights + 2 * self
};

LevelGraph level_from(const WeightedGraph& g) {
    LevelGraph lg;
    lg.n = g.vertex_count();
    lg.adj.resize(lg.n);
    lg.self.assign(lg.n, 0.0);
    lg.strength.assign(lg.n, 0.0);
    for (VertexId v = 0; v < lg.n; ++v) {
        for (const auto& nb : g.neighbors(v)) {
            lg.adj[v].push_back({nb.to, static_cast<double>(nb.w)});
        }
        lg.strength[v] = static_cast<double>(g.strength(v));
    }
    return lg;
}

// One Louvain level: sweeps of local moves until a full sweep accepts
// nothing. Returns whether any move was accepted. comm is updated in
// place; the observer (if any) sees the assignment composed back onto
// the original vertices after every accepted move.
bool local_moves(const LevelGraph& lg, std::vector<std::uint32_t>& comm, double resolution,
                 double m, Rng& rng, const MoveObserver& observer,
                 const std::vector<std::uint32_t>& coarse_of_original) {
    std::vector<double> comm_strength(lg.n, 0.0);
    for (std::size_t u = 0; u < lg.n; ++u) comm_strength[comm[u]] += lg.strength[u];

    std::vector<double> k_to(lg.n, 0.0);       // weight from u into each community
    std::vector<std::uint32_t> touched;        // communities with nonzero k_to
    std::vector<std::uint32_t> order(lg.n);
    for (std::size_t i = 0; i < lg.n; ++i) order[i] = static_cast<std::uint32_t>(i);

    bool any_move = false;
    for (;;) {
        rng.shuffle(order);
        bool moved_this_sweep = false;
        for (const std::uint32_t u : order) {
            const std::uint32_t old_c = comm[u];
            touched.clear();
            for (const auto& arc : lg.adj[u]) {
                const std::uint32_t c = comm[arc.to];
                if (k_to[c] == 0.0) touched.push_back(c);
                k_to[c] += arc.w;
            }
            if (std::find(touched.begin(), touched.end(), old_c) == touched.end()) {
                touched.push_back(old_c);
            }
            std::sort(touched.begin(), touched.end());

            comm_strength[old_c] -= lg.strength[u];
            // gain(c) = k_{u->c} - res * s_u * S_c / (2m); scanning ascending
            // ids with a strict comparison breaks ties toward the lowest id.
            double best_gain = -std::numeric_limits<double>::infinity();
            double old_gain = 0.0;
            std::uint32_t best_c = old_c;
            for (const std::uint32_t c : touched) {
                const double gain =
                    k_to[c] - resolution * lg.strength[u] * comm_strength[c] / (2.0 * m);
                if (c == old_c) old_gain = gain;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            for (const std::uint32_t c : touched) k_to[c] = 0.0;

            // Accept only genuine modularity increases: dQ = (best - old)/m.
            if (best_c != old_c && best_gain - old_gain > 1e-9 * m) {
                comm[u] = best_c;
                comm_strength[best_c] += lg.strength[u];
                moved_this_sweep = true;
                any_move = true;
                if (observer) {
                    std::vector<std::uint32_t> composed(coarse_of_original.size());
                    for (std::size_t v = 0; v < composed.size(); ++v) {
                        composed[v] = comm[coarse_of_original[v]];
                    }
                    observer(composed);
                }
            } else {
                comm_strength[old_c] += lg.strength[u];
            }
        }
        if (!moved_this_sweep) break;
    }
    return any_move;
}

// Collapse communities into vertices; arc weights between communities sum,
// internal weight (edges inside plus member selfs) becomes the self weight.
LevelGraph aggregate(const LevelGraph& lg, std::vector<std::uint32_t>& comm) {
    std::vector<std::uint32_t> dense(lg.n, 0);
    std::vector<std::uint32_t> present;
    {
        std::vector<bool> seen(lg.n, false);
        for (const auto c : comm) {
            if (!seen[c]) {
                seen[c] = true;
                present.push_back(c);
            }
        }
        std::sort(present.begin(), present.end());
        for (std::size_t i = 0; i < present.size(); ++i) {
            dense[present[i]] = static_cast<std::uint32_t>(i);
        }
    }

    LevelGraph out;
    out.n = present.size();
    out.adj.resize(out.n);
    out.self.assign(out.n, 0.0);
    out.strength.assign(out.n, 0.0);

    std::unordered_map<std::uint64_t, double> between;
    for (std::size_t u = 0; u < lg.n; ++u) {
        const std::uint32_t cu = dense[comm[u]];
        out.self[cu] += lg.self[u];
        for (const auto& arc : lg.adj[u]) {
            if (arc.to <= u) continue;  // each undirected edge once
            const std::uint32_t cv = dense[comm[arc.to]];
            if (cu == cv) {
                out.self[cu] += arc.w;
            } else {
                const std::uint32_t a = std::min(cu, cv), b = std::max(cu, cv);
                between[(static_cast<std::uint64_t>(a) << 32) | b] += arc.w;
            }
        }
    }
    for (const auto& [key, w] : between) {
        const auto a = static_cast<std::uint32_t>(key >> 32);
        const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
        out.adj[a].push_back({b, w});
        out.adj[b].push_back({a, w});
    }
    for (std::size_t v = 0; v < out.n; ++v) {
        std::sort(out.adj[v].begin(), out.adj[v].end(),
                  [](const LevelGraph::Arc& x, const LevelGraph::Arc& y) { return x.to < y.to; });
        double s = 2.0 * out.self[v];
        for (const auto& arc : out.adj[v]) s += arc.w;
        out.strength[v] = s;
    }

    for (auto& c : comm) c = dense[c];
    return out;
}

}  // namespace

Partition louvain_partition(const WeightedGraph& g, std::uint64_t seed, double resolution,
                            const MoveObserver& observer) {
    if (g.total_weight() == 0) throw Error("modularity undefined: graph has no edges");
    const double m = static_cast<double>(g.total_weight());
    const std::size_t n = g.vertex_count();

    LevelGraph lg = level_from(g);
    std::vector<std::uint32_t> coarse(n);
    for (std::size_t v = 0; v < n; ++v) coarse[v] = static_cast<std::uint32_t>(v);

    for (int level = 0;; ++level) {
        std::vector<std::uint32_t> comm(lg.n);
        for (std::size_t v = 0; v < lg.n; ++v) comm[v] = static_cast<std::uint32_t>(v);
        Rng rng(derive_seed(seed, "louvain-level", static_cast<std::uint64_t>(level)));
        if (!local_moves(lg, comm, resolution, m, rng, observer, coarse)) break;
        lg = aggregate(lg, comm);
        for (auto& c : coarse) c = comm[c];
        if (lg.n == 1) break;
    }

    // Relabel communities by descending total strength on the original
    // graph so community 0 is always the strongest.
    Partition p;
    p.assignment.resize(n);
    std::unordered_map<std::uint32_t, double> strength_of;
    std::unordered_map<std::uint32_t, VertexId> first_member;
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint32_t c = coarse[v];
        strength_of[c] += static_cast<double>(g.strength(static_cast<VertexId>(v)));
        if (!first_member.count(c)) first_member[c] = static_cast<VertexId>(v);
    }
    std::vector<std::uint32_t> ids;
    ids.reserve(strength_of.size());
    for (const auto& [c, s] : strength_of) ids.push_back(c);
    std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (strength_of[a] != strength_of[b]) return strength_of[a] > strength_of[b];
        return first_member[a] < first_member[b];
    });
    std::unordered_map<std::uint32_t, std::uint32_t> relabel;
    for (std::size_t i = 0; i < ids.size(); ++i) relabel[ids[i]] = static_cast<std::uint32_t>(i);

    p.sizes.assign(ids.size(), 0);
    std::vector<std::vector<VertexId>> members(ids.size());
    for (std::size_t v = 0; v < n; ++v) {
        const std::uint32_t c = relabel[coarse[v]];
        p.assignment[v] = c;
        ++p.sizes[c];
        members[c].push_back(static_cast<VertexId>(v));
    }
    p.top_members.resize(ids.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
        auto& mem = members[c];
        std::sort(mem.begin(), mem.end(), [&](VertexId a, VertexId b) {
            if (g.strength(a) != g.strength(b)) return g.strength(a) > g.strength(b);
            return g.label(a) < g.label(b);
        });
        if (mem.size() > 10) mem.resize(10);
        p.top_members[c] = std::move(mem);
    }
    p.modularity_q = modularity(g, p.assignment, resolution);
    return p;
}

InteractionMatrix interaction_matrix(const WeightedGraph& g, const Partition& p) {
    if (p.assignment.size() != g.vertex_count()) {
        throw Error("interaction matrix: partition does not cover every vertex");
    }
    InteractionMatrix mat;
    mat.communities = p.community_count();
    mat.cells.assign(mat.communities * mat.communities, 0);
    for (const auto& e : g.edges()) {
        const std::uint32_t a = p.assignment[e.u];
        const std::uint32_t b = p.assignment[e.v];
        if (a == b) {
            mat.at(a, a) += e.w;
        } else {
            mat.at(a, b) += e.w;
            mat.at(b, a) += e.w;
        }
    }
    return mat;
}

ActivitySeries activity_series(const std::vector<MessageRecord>& records,
                               const WeightedGraph& semantic, const Partition& p) {
    ActivitySeries out;
    out.communities = p.community_count();
    if (records.empty()) return out;

    std::int64_t first = std::numeric_limits<std::int64_t>::max();
    std::int64_t last = std::numeric_limits<std::int64_t>::min();
    for (const auto& r : records) {
        const std::int64_t d = day_of(r.timestamp);
        first = std::min(first, d);
        last = std::max(last, d);
    }
    out.first_day = first;
    const auto rows = static_cast<std::size_t>(last - first + 1);
    std::vector<std::vector<std::uint64_t>> counts(rows,
                                                   std::vector<std::uint64_t>(out.communities, 0));
    std::vector<std::uint64_t> day_total(rows, 0);

    std::vector<std::uint32_t> comms;
    for (const auto& r : records) {
        const auto row = static_cast<std::size_t>(day_of(r.timestamp) - first);
        comms.clear();
        for (const auto& tag : r.hashtags) {
            if (const auto v = semantic.find_vertex(tag)) {
                comms.push_back(p.assignment[*v]);
            }
        }
        std::sort(comms.begin(), comms.end());
        comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
        for (const std::uint32_t c : comms) ++counts[row][c];
        day_total[row] += comms.size();
    }

    out.shares.assign(rows, std::vector<double>(out.communities, 0.0));
    for (std::size_t r = 0; r < rows; ++r) {
        if (day_total[r] == 0) continue;
        for (std::size_t c = 0; c < out.communities; ++c) {
            out.shares[r][c] =
                static_cast<double>(counts[r][c]) / static_cast<double>(day_total[r]);
        }
    }
    return out;
}

}  // namespace tagnet
