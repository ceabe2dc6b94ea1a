#include "tagnet/temporal.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "tagnet/error.hpp"
#include "tagnet/rng.hpp"
#include "tagnet/timeutil.hpp"

namespace tagnet {

const char* to_string(ProjectionKind k) {
    return k == ProjectionKind::semantic ? "semantic" : "interest";
}

const char* to_string(EntityKind k) { return k == EntityKind::hashtag ? "hashtag" : "user"; }

namespace {

std::pair<std::int64_t, std::int64_t> day_range(const std::vector<MessageRecord>& records) {
    std::int64_t first = std::numeric_limits<std::int64_t>::max();
    std::int64_t last = std::numeric_limits<std::int64_t>::min();
    for (const auto& r : records) {
        const std::int64_t d = day_of(r.timestamp);
        first = std::min(first, d);
        last = std::max(last, d);
    }
    return {first, last};
}

Snapshot snapshot_of(std::int64_t day, const std::vector<MessageRecord>& records,
                     ProjectionKind kind, CooccurrenceScope scope) {
    Snapshot snap;
    snap.day = day;
    if (records.empty()) return snap;
    const BipartiteGraph b = build_bipartite(records);
    const WeightedGraph g =
        kind == ProjectionKind::semantic ? project_semantic(b, scope) : project_interest(b);
    snap.vertices = g.labels();
    std::sort(snap.vertices.begin(), snap.vertices.end());
    snap.edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        std::string a = g.label(e.u), c = g.label(e.v);
        if (c < a) std::swap(a, c);
        snap.edges.emplace_back(std::move(a), std::move(c));
    }
    std::sort(snap.edges.begin(), snap.edges.end());
    return snap;
}

template <typename T>
double jaccard(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t inter = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++inter;
            ++i;
            ++j;
        }
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

SnapshotSeries snapshot_series(const std::vector<MessageRecord>& records, ProjectionKind kind,
                               CooccurrenceScope scope) {
    SnapshotSeries series;
    series.kind = kind;
    if (records.empty()) return series;

    const auto [first, last] = day_range(records);
    std::map<std::int64_t, std::vector<MessageRecord>> buckets;
    for (const auto& r : records) buckets[day_of(r.timestamp)].push_back(r);

    static const std::vector<MessageRecord> kEmpty;
    series.days.reserve(static_cast<std::size_t>(last - first + 1));
    for (std::int64_t d = first; d <= last; ++d) {
        const auto it = buckets.find(d);
        series.days.push_back(snapshot_of(d, it == buckets.end() ? kEmpty : it->second, kind, scope));
    }
    return series;
}

std::vector<double> smooth_series(const std::vector<double>& values, int window) {
    if (window <= 0 || window % 2 == 0) {
        throw InputError("smoothing window must be an odd positive integer");
    }
    if (static_cast<std::size_t>(window) > values.size()) {
        throw InputError("smoothing window exceeds series length");
    }
    const auto n = static_cast<std::int64_t>(values.size());
    const std::int64_t half = (window - 1) / 2;
    std::vector<double> out(values.size());
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t lo = std::max<std::int64_t>(0, i - half);
        const std::int64_t hi = std::min<std::int64_t>(n - 1, i + half);
        double sum = 0.0;
        for (std::int64_t j = lo; j <= hi; ++j) sum += values[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

JaccardSeries jaccard_series(const SnapshotSeries& series, int smooth_window) {
    if (series.days.size() < 2) {
        throw InputError("jaccard series needs at least two daily snapshots");
    }
    JaccardSeries out;
    for (std::size_t t = 1; t < series.days.size(); ++t) {
        const Snapshot& prev = series.days[t - 1];
        const Snapshot& cur = series.days[t];
        out.days.push_back(cur.day);
        out.jn.push_back(jaccard(prev.vertices, cur.vertices));
        out.je.push_back(jaccard(prev.edges, cur.edges));
    }
    out.jn_smooth = smooth_series(out.jn, smooth_window);
    out.je_smooth = smooth_series(out.je, smooth_window);
    return out;
}

PermanenceTable permanence_table(const std::vector<MessageRecord>& records, EntityKind entity) {
    if (records.empty()) throw InputError("empty corpus");
    PermanenceTable table;
    table.entity = entity;
    const auto [first, last] = day_range(records);
    table.last_day = last - first + 1;

    const auto touch = [&](const std::string& name, std::int64_t day) {
        auto [it, inserted] = table.entries.try_emplace(name, PermanenceEntry{day, day});
        if (!inserted) {
            it->second.t_min = std::min(it->second.t_min, day);
            it->second.t_max = std::max(it->second.t_max, day);
        }
    };
    for (const auto& r : records) {
        const std::int64_t day = day_of(r.timestamp) - first + 1;  // 1-based corpus day
        if (entity == EntityKind::user) {
            touch(r.author, day);
        } else {
            for (const auto& tag : r.hashtags) touch(tag, day);
        }
    }
    return table;
}

CommunitySpan community_span(const WeightedGraph& g, const Partition& p,
                             const PermanenceTable& table) {
    if (p.assignment.size() != g.vertex_count()) {
        throw Error("community span: partition does not cover every vertex");
    }
    const std::size_t c_count = p.community_count();
    CommunitySpan out;
    out.weeks = static_cast<std::size_t>((table.last_day + 6) / 7);
    out.mean_t_min.assign(c_count, 0.0);
    out.mean_t_max.assign(c_count, 0.0);
    out.span.assign(c_count, 0.0);
    out.entry_hist.assign(c_count, std::vector<double>(out.weeks, 0.0));
    out.exit_hist.assign(c_count, std::vector<double>(out.weeks, 0.0));

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto it = table.entries.find(g.label(v));
        if (it == table.entries.end()) {
            throw Error("community span: permanence table missing " + g.label(v));
        }
        const std::uint32_t c = p.assignment[v];
        out.mean_t_min[c] += static_cast<double>(it->second.t_min);
        out.mean_t_max[c] += static_cast<double>(it->second.t_max);
        out.entry_hist[c][static_cast<std::size_t>((it->second.t_min - 1) / 7)] += 1.0;
        out.exit_hist[c][static_cast<std::size_t>((it->second.t_max - 1) / 7)] += 1.0;
    }
    for (std::size_t c = 0; c < c_count; ++c) {
        const auto size = static_cast<double>(p.sizes[c]);
        out.mean_t_min[c] /= size;
        out.mean_t_max[c] /= size;
        out.span[c] = out.mean_t_max[c] - out.mean_t_min[c];
        for (auto& h : out.entry_hist[c]) h /= size;
        for (auto& h : out.exit_hist[c]) h /= size;
    }
    return out;
}

BinnedCurve permanence_vs_degree(const WeightedGraph& g, const PermanenceTable& table) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 0) continue;
        const auto it = table.entries.find(g.label(v));
        if (it == table.entries.end()) {
            throw Error("permanence curve: table missing " + g.label(v));
        }
        xy.emplace_back(static_cast<double>(g.degree(v)),
                        static_cast<double>(it->second.permanence()));
    }
    // No log-log slope: permanence 0 is a legitimate bin mean.
    return bin_log2(xy, CurveKind::permanence_vs_degree, false);
}

PhaseTags phase_new_hashtags(const std::vector<MessageRecord>& records,
                             const std::vector<std::int64_t>& boundaries,
                             bool require_disappear) {
    PhaseTags out;
    if (records.empty()) return out;
    const auto [first, last] = day_range(records);
    const std::int64_t last_day = last - first + 1;
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        if (boundaries[i] < 1 || boundaries[i] >= last_day ||
            (i > 0 && boundaries[i] <= boundaries[i - 1])) {
            throw InputError("phase boundaries must be strictly increasing inside the corpus range");
        }
    }

    std::int64_t start = 1;
    for (const auto b : boundaries) {
        out.ranges.emplace_back(start, b);
        start = b + 1;
    }
    out.ranges.emplace_back(start, last_day);

    const PermanenceTable table = permanence_table(records, EntityKind::hashtag);
    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& r : records) {
        for (const auto& tag : r.hashtags) ++freq[tag];
    }

    out.ranked.resize(out.ranges.size());
    for (const auto& [tag, entry] : table.entries) {
        std::size_t phase = 0;
        while (entry.t_min > out.ranges[phase].second) ++phase;
        if (require_disappear && phase + 1 < out.ranges.size() &&
            entry.t_max > out.ranges[phase].second) {
            continue;
        }
        out.ranked[phase].emplace_back(tag, freq[tag]);
    }
    for (auto& list : out.ranked) {
        std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
    }
    return out;
}

namespace {

struct WindowAttribution {
    Partition partition;                                     // empty if no edges
    std::vector<std::vector<std::string>> top_labels;        // per community
    std::unordered_map<std::string, std::uint32_t> user_to;  // plurality community
};

WindowAttribution attribute_window(const std::vector<MessageRecord>& records, DayWindow window,
                                   std::int64_t first_day, std::uint64_t seed,
                                   double resolution) {
    WindowAttribution out;
    std::vector<MessageRecord> slice;
    for (const auto& r : records) {
        const std::int64_t day = day_of(r.timestamp) - first_day + 1;
        if (day >= window.first && day <= window.last) slice.push_back(r);
    }
    if (slice.empty()) return out;

    const BipartiteGraph b = build_bipartite(slice);
    const WeightedGraph g = project_semantic(b, CooccurrenceScope::tweet);
    if (g.edge_count() == 0) return out;
    out.partition = louvain_partition(g, seed, resolution);
    out.top_labels.resize(out.partition.community_count());
    for (std::size_t c = 0; c < out.partition.community_count(); ++c) {
        for (const VertexId v : out.partition.top_members[c]) {
            out.top_labels[c].push_back(g.label(v));
        }
    }

    // Plurality of hashtag uses; ties go to the lower community id.
    std::unordered_map<std::string, std::vector<std::uint32_t>> use_counts;
    const std::size_t c_count = out.partition.community_count();
    for (const auto& r : slice) {
        for (const auto& tag : r.hashtags) {
            if (const auto v = g.find_vertex(tag)) {
                auto& counts = use_counts[r.author];
                if (counts.empty()) counts.assign(c_count, 0);
                ++counts[out.partition.assignment[*v]];
            }
        }
    }
    for (const auto& [user, counts] : use_counts) {
        std::uint32_t best = 0;
        for (std::uint32_t c = 1; c < counts.size(); ++c) {
            if (counts[c] > counts[best]) best = c;
        }
        out.user_to.emplace(user, best);
    }
    return out;
}

}  // namespace

FlowMatrix community_flow(const std::vector<MessageRecord>& records, DayWindow early,
                          DayWindow late, std::uint64_t seed, double resolution) {
    if (early.first < 1 || early.first > early.last || late.first < 1 ||
        late.first > late.last) {
        throw InputError("flow windows must satisfy 1 <= first <= last");
    }
    if (records.empty()) throw InputError("empty corpus");
    const auto [first, last] = day_range(records);
    (void)last;

    const WindowAttribution a =
        attribute_window(records, early, first, derive_seed(seed, "flow-early"), resolution);
    const WindowAttribution b =
        attribute_window(records, late, first, derive_seed(seed, "flow-late"), resolution);

    FlowMatrix flow;
    flow.early_communities = a.partition.community_count();
    flow.late_communities = b.partition.community_count();
    flow.counts.assign((flow.early_communities + 1) * (flow.late_communities + 1), 0);
    flow.early_top = a.top_labels;
    flow.late_top = b.top_labels;

    std::vector<std::string> users;
    users.reserve(a.user_to.size() + b.user_to.size());
    for (const auto& [u, c] : a.user_to) users.push_back(u);
    for (const auto& [u, c] : b.user_to) {
        if (!a.user_to.count(u)) users.push_back(u);
    }
    std::sort(users.begin(), users.end());

    for (const auto& u : users) {
        const auto ea = a.user_to.find(u);
        const auto lb = b.user_to.find(u);
        const std::size_t row = ea == a.user_to.end() ? flow.early_communities : ea->second;
        const std::size_t col = lb == b.user_to.end() ? flow.late_communities : lb->second;
        ++flow.at(row, col);
    }
    return flow;
}

}  // namespace tagnet
